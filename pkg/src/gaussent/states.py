"""Two-mode Gaussian states, squeezing symplectics and the standard form.

Covariance matrices are real 4x4 arrays in quadrature ordering
(x1, p1, x2, p2) with vacuum variance 1 (x = a + a^dag convention).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import MalformedStateError

#: physicality slack on nu_minus >= 1, absorbs rounding in constructed states
PHYSICALITY_TOL = 1e-10

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])
#: two-mode symplectic form for the (x1, p1, x2, p2) ordering
OMEGA = np.block([[_J, np.zeros((2, 2))], [np.zeros((2, 2)), _J]])

_Z = np.diag([1.0, -1.0])
_I2 = np.eye(2)


class SqueezeParams(NamedTuple):
    """Two-mode squeezing r plus local squeezings (r1, r2), natural-log scale."""

    r: float
    r1: float
    r2: float


def _nu_minus_sq(a, b, c1, c2, transposed=False):
    """Smaller squared symplectic eigenvalue from the block invariants.

    Uses the conjugate form 2*det/(Delta + sqrt(...)) which stays accurate
    when Delta is much larger than det.
    """
    det_c = -c1 * c2 if transposed else c1 * c2
    det_sigma = (a * b - c1 * c1) * (a * b - c2 * c2)
    delta = a * a + b * b + 2.0 * det_c
    disc = delta * delta - 4.0 * det_sigma
    if disc < 0.0:
        if disc < -1e-12 * delta * delta:
            raise MalformedStateError(
                f"negative symplectic discriminant {disc} for "
                f"(a={a}, b={b}, c1={c1}, c2={c2})"
            )
        disc = 0.0
    return 2.0 * det_sigma / (delta + math.sqrt(disc))


@dataclass(frozen=True)
class StandardForm:
    """Standard-form parameters (a, b, c1, c2) of a two-mode covariance matrix.

    The diagonal blocks are a*I and b*I and the off-diagonal block is
    diag(c1, c2).  Constructors enforce the normalization c1 >= |c2| and
    c1 >= 0; use :meth:`normalized` for raw parameter sets.
    """

    a: float
    b: float
    c1: float
    c2: float

    def __post_init__(self):
        a, b, c1, c2 = (float(v) for v in (self.a, self.b, self.c1, self.c2))
        for name, v in (("a", a), ("b", b), ("c1", c1), ("c2", c2)):
            if not math.isfinite(v):
                raise MalformedStateError(f"non-finite parameter {name}={v}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)
        if a < 1.0 - PHYSICALITY_TOL or b < 1.0 - PHYSICALITY_TOL:
            raise MalformedStateError(f"local variances below vacuum: a={a}, b={b}")
        if a * b - c1 * c1 <= 0.0 or a * b - c2 * c2 <= 0.0:
            raise MalformedStateError(
                f"block structure not positive definite: (a={a}, b={b}, c1={c1}, c2={c2})"
            )
        if not (c1 >= abs(c2) and c1 >= 0.0):
            raise MalformedStateError(
                f"correlations violate the c1 >= |c2| >= 0 normalization: c1={c1}, c2={c2}"
            )
        if _nu_minus_sq(a, b, c1, c2) < (1.0 - PHYSICALITY_TOL) ** 2:
            raise MalformedStateError(
                f"uncertainty principle violated (nu_minus < 1) for "
                f"(a={a}, b={b}, c1={c1}, c2={c2})"
            )

    @classmethod
    def normalized(cls, a, b, c1, c2):
        """Build a StandardForm after applying local-rotation equivalences.

        (c1, c2) -> (-c1, -c2) and (c1, c2) -> (c2, c1) are free local
        operations; the canonical representative has c1 >= |c2| and c1 >= 0.
        """
        hi, lo = max(abs(c1), abs(c2)), min(abs(c1), abs(c2))
        lo = math.copysign(lo, c1 * c2) if c1 * c2 != 0.0 else 0.0
        return cls(a, b, hi, lo)

    def matrix(self):
        """Dense 4x4 covariance matrix in (x1, p1, x2, p2) ordering."""
        a, b, c1, c2 = self.a, self.b, self.c1, self.c2
        return np.array(
            [
                [a, 0.0, c1, 0.0],
                [0.0, a, 0.0, c2],
                [c1, 0.0, b, 0.0],
                [0.0, c2, 0.0, b],
            ]
        )

    def astuple(self):
        return (self.a, self.b, self.c1, self.c2)


def vacuum():
    """Two-mode vacuum state."""
    return StandardForm(1.0, 1.0, 0.0, 0.0)


def tmsv(r):
    """Two-mode squeezed vacuum with squeezing parameter r >= 0.

    a = b = cosh 2r and c1 = -c2 = sinh 2r, i.e. (1+chi^2)/(1-chi^2) and
    2*chi/(1-chi^2) for chi = tanh r.
    """
    r = float(r)
    if r < 0.0:
        raise MalformedStateError(f"negative squeezing parameter r={r}")
    c1 = math.sinh(2.0 * r)
    return StandardForm(math.cosh(2.0 * r), math.cosh(2.0 * r), c1, -c1)


def two_mode_squeezer(r):
    """Symplectic matrix of the two-mode squeezer.

    Diagonal blocks cosh(r)*I, off-diagonal blocks sinh(r)*diag(1, -1);
    acting on vacuum it generates tmsv(r), and S2(-r) is the inverse.
    """
    c, s = math.cosh(r), math.sinh(r)
    return np.block([[c * _I2, s * _Z], [s * _Z, c * _I2]])


def local_squeezer(r1, r2):
    """Symplectic matrix of independent single-mode squeezers diag(e^r, e^-r)."""
    return np.diag(
        [math.exp(r1), math.exp(-r1), math.exp(r2), math.exp(-r2)]
    )


def apply_symplectic(s, cov):
    """Congruence transform S @ cov @ S.T, symmetrized against rounding."""
    out = s @ np.asarray(cov, dtype=float) @ s.T
    return 0.5 * (out + out.T)


def is_symplectic(s, tol=1e-12):
    """True iff S preserves the two-mode symplectic form entrywise within tol."""
    s = np.asarray(s, dtype=float)
    return bool(np.max(np.abs(s @ OMEGA @ s.T - OMEGA)) <= tol)


def partial_transpose(cov):
    """Time reversal of mode 2 (p2 -> -p2)."""
    t = np.diag([1.0, 1.0, 1.0, -1.0])
    return t @ np.asarray(cov, dtype=float) @ t


def dense_symplectic_spectrum(cov, partial_transposed=False):
    """Symplectic spectrum of a dense covariance matrix via |eig(i Omega cov)|.

    Independent of the block-invariant formulas; each eigenvalue comes in a
    conjugate pair, so the four moduli reduce to two values (nu_minus, nu_plus).
    """
    cov = np.asarray(cov, dtype=float)
    if partial_transposed:
        cov = partial_transpose(cov)
    mods = np.sort(np.abs(np.linalg.eigvals(1j * OMEGA @ cov)))
    return float(mods[0]), float(mods[2])


def is_physical(cov):
    """True iff cov is a symmetric positive-definite matrix with nu_minus >= 1.

    Accepts a StandardForm or a dense 4x4 array.
    """
    if isinstance(cov, StandardForm):
        return True  # validated at construction
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (4, 4) or np.max(np.abs(cov - cov.T)) > 1e-10:
        return False
    if np.linalg.eigvalsh(cov).min() <= 0.0:
        return False
    nu_minus, _ = dense_symplectic_spectrum(cov)
    return nu_minus >= 1.0 - PHYSICALITY_TOL


def to_standard_form(cov):
    """Reduce a dense physical covariance matrix to its standard form.

    Works from the local-symplectic invariants det A, det B, det C, det cov:
    a = sqrt(det A), b = sqrt(det B), and (c1, c2) solve
    c1*c2 = det C, c1^2 + c2^2 = (a^2 b^2 + det C^2 - det cov)/(a b).
    """
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (4, 4):
        raise MalformedStateError(f"expected a 4x4 covariance matrix, got {cov.shape}")
    if not is_physical(cov):
        raise MalformedStateError("covariance matrix is not a physical two-mode state")
    det_a = np.linalg.det(cov[:2, :2])
    det_b = np.linalg.det(cov[2:, 2:])
    det_c = np.linalg.det(cov[:2, 2:])
    det_cov = np.linalg.det(cov)
    a = math.sqrt(det_a)
    b = math.sqrt(det_b)
    sum_sq = (det_a * det_b + det_c * det_c - det_cov) / (a * b)
    disc = sum_sq * sum_sq - 4.0 * det_c * det_c
    if disc < 0.0:
        if disc < -1e-10 * max(sum_sq * sum_sq, 1.0):
            raise MalformedStateError(
                f"complex correlation roots (discriminant {disc}); input malformed"
            )
        disc = 0.0
    hi_sq = 0.5 * (sum_sq + math.sqrt(disc))
    lo_sq = max(sum_sq - hi_sq, 0.0)
    c1 = math.sqrt(max(hi_sq, 0.0))
    c2 = math.copysign(math.sqrt(lo_sq), det_c) if det_c != 0.0 else math.sqrt(lo_sq)
    return StandardForm.normalized(a, b, c1, c2)


def random_state(
    seed=None,
    *,
    a_max=5.0,
    entangled=False,
    symmetric=False,
    balanced=False,
    max_attempts=100_000,
):
    """Rejection-sample a physical standard-form state.

    a and b are uniform on [1, a_max], c1 uniform on [0, sqrt(a b)), c2
    uniform on (-c1, c1]; unphysical draws are rejected.  ``entangled``
    additionally requires nu_tilde_minus < 1; ``symmetric`` forces a = b and
    ``balanced`` forces c2 = -c1.  Deterministic for a fixed seed.

    Raises BudgetExceededError after max_attempts rejections.
    """
    from .errors import BudgetExceededError  # local import, avoids cycle noise

    if a_max < 1.0:
        raise MalformedStateError(f"a_max must be >= 1, got {a_max}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for _ in range(max_attempts):
        a = rng.uniform(1.0, a_max)
        b = a if symmetric else rng.uniform(1.0, a_max)
        c1 = rng.uniform(0.0, math.sqrt(a * b))
        c2 = -c1 if balanced else rng.uniform(-c1, c1)
        if a * b - c1 * c1 <= 0.0 or a * b - c2 * c2 <= 0.0:
            continue
        if _nu_minus_sq(a, b, c1, c2) < (1.0 - PHYSICALITY_TOL) ** 2:
            continue
        if entangled and _nu_minus_sq(a, b, c1, c2, transposed=True) >= (
            1.0 - PHYSICALITY_TOL
        ) ** 2:
            continue
        return StandardForm.normalized(a, b, c1, c2)
    raise BudgetExceededError(
        f"sampler exceeded {max_attempts} attempts (a_max={a_max}, "
        f"entangled={entangled}, symmetric={symmetric}, balanced={balanced})"
    )
