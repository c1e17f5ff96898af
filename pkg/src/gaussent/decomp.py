"""Decompositions of standard-form states into squeezers acting on classical states.

Two orderings are supported: "squeeze-then-local" builds the state as
L(r1,r2) S2(r) sigma_c S2^T L^T, while "local-then-squeeze" builds it as
S2(r) L(r1,r2) sigma_c L^T S2^T.  A classical state satisfies sigma_c >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .states import (
    StandardForm,
    SqueezeParams,
    apply_symplectic,
    local_squeezer,
    two_mode_squeezer,
)

SQUEEZE_THEN_LOCAL = "squeeze-then-local"
LOCAL_THEN_SQUEEZE = "local-then-squeeze"
_KINDS = (SQUEEZE_THEN_LOCAL, LOCAL_THEN_SQUEEZE)

#: slack on the smallest eigenvalue when testing sigma_c >= 1
CLASSICALITY_TOL = 1e-10


class PureEquivalent(NamedTuple):
    """Squeeze-then-local parameters reproducing a local-then-squeeze pure state."""

    r: float
    r1: float
    r2: float


@dataclass(frozen=True)
class Decomposition:
    kind: str
    params: SqueezeParams
    classical_part: np.ndarray

    def reconstruct(self):
        """Rebuild the source covariance matrix from the stored pieces."""
        s2 = two_mode_squeezer(self.params.r)
        loc = local_squeezer(self.params.r1, self.params.r2)
        if self.kind == SQUEEZE_THEN_LOCAL:
            return apply_symplectic(loc, apply_symplectic(s2, self.classical_part))
        return apply_symplectic(s2, apply_symplectic(loc, self.classical_part))


def is_classical(cov):
    """True iff the smallest ordinary eigenvalue of cov is >= 1 (within slack)."""
    return bool(np.linalg.eigvalsh(np.asarray(cov, dtype=float)).min()
                >= 1.0 - CLASSICALITY_TOL)


def classical_residual(sf: StandardForm, params: SqueezeParams, kind):
    """Undo the squeezers of the given decomposition ordering.

    Returns the candidate classical part; classicality is the caller's check.
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown decomposition kind {kind!r}; expected one of {_KINDS}")
    r, r1, r2 = params
    sigma = sf.matrix()
    s2_inv = two_mode_squeezer(-r)
    loc_inv = local_squeezer(-r1, -r2)
    if kind == SQUEEZE_THEN_LOCAL:
        return apply_symplectic(s2_inv, apply_symplectic(loc_inv, sigma))
    return apply_symplectic(loc_inv, apply_symplectic(s2_inv, sigma))


def decomposition(sf: StandardForm, params: SqueezeParams, kind) -> Decomposition:
    """Bundle a residual with its parameters, checking the round trip."""
    dec = Decomposition(kind, SqueezeParams(*params), classical_residual(sf, params, kind))
    err = np.max(np.abs(dec.reconstruct() - sf.matrix()))
    if err > 1e-9:
        raise DomainError(f"decomposition does not reconstruct its state (error {err})")
    return dec


def _clamped(value, scale, label, rel=1e-10):
    if value < 0.0:
        if value < -rel * scale:
            raise DomainError(f"{label} negative beyond tolerance: {value} (scale {scale})")
        return 0.0
    return value


def local_squeeze_params(sf: StandardForm, r_tilde):
    """Local squeezings that make the anti-squeezed state classical.

    Closed forms valid for anti-squeezing inside the disentangling interval;
    the square-root arguments vanish at the endpoints and are clamped there.
    The returned signs match the diag(e^r, e^-r) squeezer convention, which
    is opposite to the generator-ordering the raw expressions assume.
    """
    a, b, c1, c2 = sf.astuple()
    rt = float(r_tilde)
    sh2, ch2 = math.sinh(2.0 * rt), math.cosh(2.0 * rt)
    sh4, ch4 = math.sinh(4.0 * rt), math.cosh(4.0 * rt)

    arg1 = 2.0 * (a * a * (b * b - 1.0) - a * b * (c1 * c1 + c2 * c2) - b * b
                  + c1 * c2 * (c1 * c2 - 2.0) + 1.0)
    scale1 = 2.0 * (a * a * b * b + a * b * (c1 * c1 + c2 * c2) + b * b
                    + abs(c1 * c2) * (abs(c1 * c2) + 2.0) + 1.0)
    arg2 = (a * a * (2.0 * b * b - 1.0) - 2.0 * a * b * (c1 * c1 + c2 * c2 - 1.0)
            + 2.0 * (a + b) * (c1 - c2) * sh4 - ch4 * ((a + b) ** 2 - 4.0 * c1 * c2)
            - b * b + 2.0 * c1 * c1 * c2 * c2 + 2.0)
    scale2 = (a * a * (2.0 * b * b + 1.0) + 2.0 * a * b * (c1 * c1 + c2 * c2 + 1.0)
              + 2.0 * (a + b) * abs(c1 - c2) * abs(sh4)
              + ch4 * ((a + b) ** 2 + 4.0 * abs(c1 * c2))
              + b * b + 2.0 * c1 * c1 * c2 * c2 + 2.0)
    root12 = math.sqrt(_clamped(arg1, scale1, "first root argument")) * math.sqrt(
        _clamped(arg2, scale2, "second root argument")
    )

    shared_den = (2.0 * sh2 * (a * b * c2 - c2 * c1 * c1 + c1)
                  + (a + b) * ch2 * (a * b - c1 * c1 - 1.0))
    split_den = (a - b) * (a * b - c1 * c1 + 1.0)
    shared_num = -2.0 + 2.0 * (a * b - c1 * c1) * (a * b - c2 * c2)
    split_num = 2.0 * (a - b) * ((a + b) * ch2 + (c2 - c1) * sh2)
    den1 = 2.0 * (shared_den - split_den)
    den2 = 2.0 * (shared_den + split_den)
    num1 = shared_num - split_num - root12
    num2 = shared_num + split_num + root12

    # scale of the terms entering the denominators before cancellation
    den_scale = 2.0 * (2.0 * abs(sh2) * (a * b * abs(c2) + abs(c2) * c1 * c1 + c1)
                       + (a + b) * ch2 * (a * b + c1 * c1 + 1.0)
                       + abs(a - b) * (a * b + c1 * c1 + 1.0))
    if min(abs(den1), abs(den2)) <= 1e-12 * den_scale:
        # degenerate 0/0 at pure states: no local correction is needed there
        residual = classical_residual(sf, SqueezeParams(rt, 0.0, 0.0), LOCAL_THEN_SQUEEZE)
        if is_classical(residual):
            return 0.0, 0.0
        raise DomainError(
            f"local squeezing formulas degenerate at r={rt} for {sf} "
            f"(denominators {den1}, {den2})"
        )
    ratio1 = num1 / den1
    ratio2 = num2 / den2
    if ratio1 <= 0.0 or ratio2 <= 0.0:
        raise DomainError(
            f"local squeezing log arguments non-positive at r={rt} for {sf}: "
            f"{ratio1}, {ratio2}"
        )
    return -0.5 * math.log(ratio1), -0.5 * math.log(ratio2)


def pure_equivalent(r_tilde, r1, r2):
    """Reorder a pure-state construction from local-then-squeeze to squeeze-then-local.

    S2(r) L(r1,r2) 1 L^T S2^T  and  L(r1',r2') S2(r') 1 S2'^T L'^T  describe
    the same covariance matrix for the returned (r', r1', r2').
    """
    rt, r1, r2 = float(r_tilde), float(r1), float(r2)
    if r1 == r2:
        # equal locals commute past the two-mode squeezer: the map is exact
        return PureEquivalent(rt, r1, r2)
    u, v = math.exp(2.0 * r1), math.exp(2.0 * r2)
    ch_sq, sh_sq = math.cosh(rt) ** 2, math.sinh(rt) ** 2
    fwd = ch_sq * u + sh_sq * v
    bwd = sh_sq * u + ch_sq * v
    cosh_2rp = math.sqrt(fwd * bwd / (u * v))
    r_prime = math.copysign(0.5 * math.acosh(max(cosh_2rp, 1.0)), rt)
    half_sum = 0.5 * (r1 + r2)
    r1_prime = half_sum + 0.25 * math.log(fwd / bwd)
    r2_prime = half_sum + 0.25 * math.log(bwd / fwd)
    return PureEquivalent(r_prime, r1_prime, r2_prime)


def convexity_check(r_tilde, grid):
    """Numerically confirm the reordered squeezing is convex with a diagonal minimum.

    Checks r'(r, g1, g2) >= r'(r, t, t) = r over the grid and that the axis
    second differences stay >= -1e-8.
    """
    rt = float(r_tilde)
    if rt <= 0.0:
        raise DomainError(f"convexity scan needs r > 0, got {rt}")
    g = np.asarray(grid, dtype=float)
    vals = np.array([[pure_equivalent(rt, g1, g2).r for g2 in g] for g1 in g])
    if vals.min() < rt - 1e-10:
        return False
    d2_rows = vals[:-2, :] - 2.0 * vals[1:-1, :] + vals[2:, :]
    d2_cols = vals[:, :-2] - 2.0 * vals[:, 1:-1] + vals[:, 2:]
    return bool(d2_rows.min() >= -1e-8 and d2_cols.min() >= -1e-8)
