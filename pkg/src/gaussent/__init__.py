"""Entanglement quantification for two-mode Gaussian states.

Closed-form measures (log-negativity, an entropy lower bound from the
minimum disentangling squeezing), a numerically exact entanglement-of-
formation optimizer, decomposition machinery and one-mode Gaussian channel
models, all working on standard-form covariance matrices with vacuum
variance 1.
"""

__version__ = "0.1.0"

from .channels import (
    AMPLIFIER,
    CLASSICAL_NOISE,
    LOSSY,
    ChannelSpec,
    DeterministicBound,
    apply_channel,
    channeled_tmsv_squeezing,
    deterministic_bound,
)
from .decomp import (
    LOCAL_THEN_SQUEEZE,
    SQUEEZE_THEN_LOCAL,
    Decomposition,
    PureEquivalent,
    classical_residual,
    convexity_check,
    decomposition,
    is_classical,
    local_squeeze_params,
    pure_equivalent,
)
from .errors import (
    BudgetExceededError,
    DecompositionError,
    DomainError,
    InvalidChannelError,
    MalformedStateError,
    SingularGainError,
)
from .measures import (
    DisentanglingInterval,
    SymplecticSpectrum,
    disentangling_interval,
    eof_from_squeezing,
    eof_lower_bound,
    is_separable,
    log_negativity,
    symplectic_spectrum,
)
from .oracle import (
    EofResult,
    EofSearchConfig,
    EprResult,
    SweepBound,
    eof_sweep_bound,
    epr_beta,
    exact_eof,
    min_beta,
)
from .states import (
    OMEGA,
    SqueezeParams,
    StandardForm,
    apply_symplectic,
    dense_symplectic_spectrum,
    is_physical,
    is_symplectic,
    local_squeezer,
    partial_transpose,
    random_state,
    tmsv,
    to_standard_form,
    two_mode_squeezer,
    vacuum,
)

__all__ = [
    "__version__",
    "AMPLIFIER",
    "CLASSICAL_NOISE",
    "LOSSY",
    "LOCAL_THEN_SQUEEZE",
    "SQUEEZE_THEN_LOCAL",
    "OMEGA",
    "BudgetExceededError",
    "ChannelSpec",
    "Decomposition",
    "DecompositionError",
    "DeterministicBound",
    "DisentanglingInterval",
    "DomainError",
    "EofResult",
    "EofSearchConfig",
    "EprResult",
    "InvalidChannelError",
    "MalformedStateError",
    "PureEquivalent",
    "SingularGainError",
    "SqueezeParams",
    "StandardForm",
    "SweepBound",
    "SymplecticSpectrum",
    "apply_channel",
    "apply_symplectic",
    "channeled_tmsv_squeezing",
    "classical_residual",
    "convexity_check",
    "decomposition",
    "dense_symplectic_spectrum",
    "deterministic_bound",
    "disentangling_interval",
    "eof_from_squeezing",
    "eof_lower_bound",
    "eof_sweep_bound",
    "epr_beta",
    "exact_eof",
    "is_classical",
    "is_physical",
    "is_separable",
    "is_symplectic",
    "local_squeeze_params",
    "local_squeezer",
    "log_negativity",
    "min_beta",
    "partial_transpose",
    "pure_equivalent",
    "random_state",
    "symplectic_spectrum",
    "tmsv",
    "to_standard_form",
    "two_mode_squeezer",
    "vacuum",
]
