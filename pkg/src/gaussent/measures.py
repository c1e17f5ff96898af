"""Entanglement measures built on the standard-form invariants.

All returned measure values are in ebits (base-2 logarithms); squeezing
parameters stay on the natural-log scale.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, MalformedStateError
from .states import StandardForm

#: relative clamp for tiny negative discriminants produced by rounding
DISC_CLAMP_REL = 1e-10


class SymplecticSpectrum(NamedTuple):
    nu_minus: float
    nu_plus: float


class DisentanglingInterval(NamedTuple):
    """Range of two-mode anti-squeezing that renders the state separable.

    r_min may be negative for separable inputs (no anti-squeezing needed).
    """

    r_min: float
    r_max: float


def symplectic_spectrum(sf: StandardForm, partial_transposed=False):
    """Symplectic eigenvalues from Delta = det A + det B +/- 2 det C.

    The partial transpose maps c2 -> -c2, flipping the sign of det C.
    nu_-^2 is evaluated as 2 det(sigma)/(Delta + sqrt(Delta^2 - 4 det sigma))
    to avoid cancellation for strongly squeezed states.
    """
    a, b, c1, c2 = sf.astuple()
    det_c = -c1 * c2 if partial_transposed else c1 * c2
    det_sigma = (a * b - c1 * c1) * (a * b - c2 * c2)
    delta = a * a + b * b + 2.0 * det_c
    disc = delta * delta - 4.0 * det_sigma
    if disc < 0.0:
        if disc < -1e-12 * delta * delta:
            raise MalformedStateError(
                f"negative spectral discriminant {disc} for {sf}"
            )
        disc = 0.0
    root = math.sqrt(disc)
    nu_minus = math.sqrt(2.0 * det_sigma / (delta + root))
    nu_plus = math.sqrt(0.5 * (delta + root))
    return SymplecticSpectrum(nu_minus, nu_plus)


def is_separable(sf: StandardForm):
    """PPT criterion: separable iff nu_tilde_minus >= 1 (within tolerance)."""
    return symplectic_spectrum(sf, partial_transposed=True).nu_minus >= 1.0 - 1e-10


def log_negativity(sf: StandardForm):
    """max(0, -log2 nu_tilde_minus), in ebits."""
    nu = symplectic_spectrum(sf, partial_transposed=True).nu_minus
    return max(0.0, -math.log2(nu))


def eof_from_squeezing(r):
    """Entropy of the pure state built with two-mode squeezing r, in ebits.

    cosh^2(r) log2 cosh^2(r) - sinh^2(r) log2 sinh^2(r); zero at r = 0.
    """
    r = float(r)
    if r < 0.0:
        raise DomainError(f"squeezing must be non-negative, got {r}")
    if r == 0.0:
        return 0.0
    ch2 = math.cosh(r) ** 2
    sh2 = math.sinh(r) ** 2
    if sh2 == 0.0:
        return 0.0
    return ch2 * math.log2(ch2) - sh2 * math.log2(sh2)


def _exact_invariants(a, b, c1, c2):
    """Quadratic coefficients of the separability interval, in exact arithmetic.

    The inputs are floats, i.e. dyadic rationals, so every polynomial
    invariant below is computed without rounding; this matters because
    kappa^2 - lam_p*lam_m cancels catastrophically near balanced states.
    """
    af, bf, c1f, c2f = (Fraction(v) for v in (a, b, c1, c2))
    det_sigma = (af * bf - c1f * c1f) * (af * bf - c2f * c2f)
    kappa = 2 * (det_sigma + 1) - (af - bf) ** 2
    base = af * af + bf * bf - 2 * c1f * c2f + 2 * (af * bf - c1f * c2f)
    wing = 2 * (c1f - c2f) * (af + bf)
    return det_sigma, kappa, base - wing, base + wing


def disentangling_interval(sf: StandardForm):
    """Solve for the anti-squeezing range [r_min, r_max] that separates sf.

    With kappa = 2(det sigma + 1) - (a-b)^2 and
    lam_{+/-} = det A + det B - 2 det C + 2[(ab - c1 c2) +/- (c1 - c2)(a + b)],
    the endpoints are (1/4) ln((kappa -/+ sqrt(kappa^2 - lam_+ lam_-))/lam_-).

    For balanced states (c2 == -c1) the discriminant factors through
    det sigma + 1 - Delta = (nu_+^2 - 1)(nu_-^2 - 1); when that factor sits at
    rounding scale the interval is treated as exactly degenerate, which keeps
    the endpoint accurate where the generic quadratic loses half its digits.
    """
    a, b, c1, c2 = sf.astuple()
    det_sigma, kappa, lam_m, lam_p = _exact_invariants(a, b, c1, c2)
    if lam_m <= 0:
        raise MalformedStateError(
            f"non-positive branch coefficient lam_minus={float(lam_m)} for {sf}"
        )
    kappa_f = float(kappa)
    if c2 == -c1:
        purity_gap = det_sigma + 1 - Fraction(a) * Fraction(a) - Fraction(b) * Fraction(
            b
        ) - 2 * Fraction(c1) * Fraction(c2)
        scale = max(abs(float(det_sigma)), a * a, b * b, 2.0 * c1 * c1, 1.0)
        if abs(purity_gap) <= Fraction(1e-12 * scale):
            disc = Fraction(0)
        else:
            disc = 2 * purity_gap * (kappa + (Fraction(a) + Fraction(b)) ** 2
                                     - 4 * Fraction(c1) * Fraction(c1))
    else:
        disc = kappa * kappa - lam_p * lam_m
    if disc < 0:
        if float(disc) < -DISC_CLAMP_REL * kappa_f * kappa_f:
            raise DomainError(
                f"separability quadratic has no real roots "
                f"(discriminant {float(disc)}) for {sf}"
            )
        disc = Fraction(0)
    root = math.sqrt(disc)
    lam_m_f, lam_p_f = float(lam_m), float(lam_p)
    # kappa - root via the conjugate to stay accurate when root ~ kappa
    r_min = 0.25 * (math.log(lam_p_f) - math.log(kappa_f + root))
    r_max = 0.25 * math.log((kappa_f + root) / lam_m_f)
    return DisentanglingInterval(r_min, r_max)


def eof_lower_bound(sf: StandardForm):
    """Entropy at the minimum disentangling squeezing, in ebits.

    Separable states return 0 (the unclamped r_min is available from
    disentangling_interval, which may itself reject deeply separable states
    whose quadratic has complex roots).
    """
    if is_separable(sf):
        return 0.0
    return eof_from_squeezing(max(disentangling_interval(sf).r_min, 0.0))
