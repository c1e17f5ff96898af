"""One-mode Gaussian channels acting on standard-form states.

A channel transforms the chosen mode's blocks as gamma -> U gamma U^T + V:
lossy (sqrt(tau) I, (1-tau) I), amplifier (sqrt(tau) I, (tau-1) I) and
classical noise (I, v I).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import mpmath as mp

from .errors import DomainError, InvalidChannelError
from .measures import eof_from_squeezing
from .states import StandardForm

LOSSY = "lossy"
AMPLIFIER = "amplifier"
CLASSICAL_NOISE = "classical-noise"
KINDS = (LOSSY, AMPLIFIER, CLASSICAL_NOISE)


@dataclass(frozen=True)
class ChannelSpec:
    """Tagged one-mode Gaussian channel: transmissivity tau or added noise v."""

    kind: str
    parameter: float

    def __post_init__(self):
        object.__setattr__(self, "parameter", float(self.parameter))
        p = self.parameter
        if self.kind == LOSSY:
            if not 0.0 <= p <= 1.0:
                raise InvalidChannelError(f"lossy transmissivity must be in [0, 1], got {p}")
        elif self.kind == AMPLIFIER:
            if p < 1.0:
                raise InvalidChannelError(f"amplifier transmissivity must be >= 1, got {p}")
        elif self.kind == CLASSICAL_NOISE:
            if p < 0.0:
                raise InvalidChannelError(f"added noise must be >= 0, got {p}")
        else:
            raise InvalidChannelError(f"unknown channel kind {self.kind!r}; expected {KINDS}")

    def scaling_and_noise(self):
        """(u, v) with gamma -> u^2 gamma + v on the acted mode."""
        p = self.parameter
        if self.kind == LOSSY:
            return math.sqrt(p), 1.0 - p
        if self.kind == AMPLIFIER:
            return math.sqrt(p), p - 1.0
        return 1.0, p


def apply_channel(sf: StandardForm, channel: ChannelSpec, mode=2):
    """Send one mode of sf through the channel; output renormalized standard form."""
    if mode not in (1, 2):
        raise DomainError(f"mode must be 1 or 2, got {mode}")
    u, v = channel.scaling_and_noise()
    a, b, c1, c2 = sf.astuple()
    if mode == 2:
        out = (a, u * u * b + v, u * c1, u * c2)
    else:
        out = (u * u * a + v, b, u * c1, u * c2)
    return StandardForm.normalized(*out)


def channeled_tmsv_squeezing(chi, channel: ChannelSpec):
    """Optimum two-mode squeezing of a channeled TMSV with chi = tanh(r).

    Phase-invariant channels keep the correlations balanced, so the output's
    minimum disentangling squeezing is also its optimum squeezing; these are
    its closed forms per channel.  Classical noise beyond v = 2 breaks all
    entanglement and returns 0.
    """
    chi = float(chi)
    if not 0.0 <= chi < 1.0:
        raise DomainError(f"chi must be in [0, 1), got {chi}")
    p = channel.parameter
    if channel.kind == LOSSY:
        root = chi * math.sqrt(p)
        return 0.5 * math.log((1.0 + root) / (1.0 - root))
    if channel.kind == AMPLIFIER:
        root = math.sqrt(p)
        return 0.5 * math.log((root + chi) / (root - chi))
    if p > 2.0:
        return 0.0
    return 0.5 * math.log((2.0 + p + chi * (2.0 - p)) / (2.0 + p + chi * (p - 2.0)))


class DeterministicBound(NamedTuple):
    """Channel entanglement ceilings for an infinitely squeezed input, in ebits."""

    eof: float
    log_neg: float


def _limit_squeezing(channel: ChannelSpec):
    """chi -> 1 limit of the optimum squeezing; inf when it diverges."""
    p = channel.parameter
    if channel.kind == LOSSY:
        if p == 0.0:
            return 0.0
        if p == 1.0:
            return math.inf
        root = math.sqrt(p)
        return 0.5 * math.log((1.0 + root) / (1.0 - root))
    if channel.kind == AMPLIFIER:
        if p == 1.0:
            return math.inf
        root = math.sqrt(p)
        return 0.5 * math.log((root + 1.0) / (root - 1.0))
    if p >= 2.0:
        return 0.0
    if p == 0.0:
        return math.inf
    return 0.5 * math.log(2.0 / p)


def _log_neg_at(channel: ChannelSpec, eps):
    """log-negativity of the channel output at chi = 1 - eps, in high precision.

    Near chi = 1 the TMSV parameters grow like 1/eps and the block invariants
    cancel to O(1); double precision loses those digits, so the whole
    evaluation runs in mpmath, including the channel scaling.
    """
    one_minus_chi_sq = eps * (2 - eps)  # 1 - chi^2 without cancellation
    a = (2 - one_minus_chi_sq) / one_minus_chi_sq
    c = 2 * (1 - eps) / one_minus_chi_sq
    p = mp.mpf(channel.parameter)
    if channel.kind == LOSSY:
        b = p * a + (1 - p)
        c = mp.sqrt(p) * c
    elif channel.kind == AMPLIFIER:
        b = p * a + (p - 1)
        c = mp.sqrt(p) * c
    else:
        b = a + p
    det_sigma = (a * b - c * c) ** 2
    delta = a * a + b * b + 2 * c * c
    nu_sq = 2 * det_sigma / (delta + mp.sqrt(delta * delta - 4 * det_sigma))
    return float(max(0.0, -mp.log(nu_sq, 2) / 2))


def deterministic_bound(channel: ChannelSpec):
    """Entanglement ceilings for the channel, reached by a chi -> 1 input.

    The squeezing-based ceiling follows from the closed-form optimum in the
    chi -> 1 limit.  The log-negativity ceiling is extrapolated numerically:
    chi = 1 - 10^-k for k = 3..8, Richardson-accelerated on the factor-10
    geometric sequence.  Divergent ceilings are reported as inf.
    """
    r_limit = _limit_squeezing(channel)
    eof_bound = math.inf if math.isinf(r_limit) else eof_from_squeezing(r_limit)
    if math.isinf(r_limit):
        return DeterministicBound(math.inf, math.inf)
    if channel.kind == CLASSICAL_NOISE and channel.parameter == 0.0:
        return DeterministicBound(math.inf, math.inf)
    with mp.workdps(40):
        seq = [_log_neg_at(channel, mp.mpf(10) ** -k) for k in range(3, 9)]
    ratio = 10.0
    while len(seq) > 1:
        seq = [(ratio * seq[i + 1] - seq[i]) / (ratio - 1.0)
               for i in range(len(seq) - 1)]
        ratio *= 10.0
    return DeterministicBound(eof_bound, max(0.0, seq[0]))
