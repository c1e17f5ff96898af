"""Numerical exact entanglement of formation and the EPR-variance witness.

The optimum decomposition minimizes the two-mode squeezing r over all
(r, r1, r2) whose residual is classical; equivalently sigma >= sigma_p(r,r1,r2)
as matrices.  The search nests a derivative-free simplex over the local
squeezings around a scan-plus-bisection solve for the smallest feasible r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .decomp import (
    CLASSICALITY_TOL,
    SQUEEZE_THEN_LOCAL,
    classical_residual,
    local_squeeze_params,
    pure_equivalent,
)
from .errors import BudgetExceededError, DecompositionError, DomainError, SingularGainError
from .measures import disentangling_interval, eof_from_squeezing
from .states import SqueezeParams, StandardForm


@dataclass(frozen=True)
class EofSearchConfig:
    """Budgets and tolerances of the exact-EoF search."""

    scan_points: int = 64
    bisect_steps: int = 80
    simplex_maxiter: int = 200
    grid_radius: float = 1.0
    grid_points: int = 5
    #: optimize (r, r1, r2) with one simplex instead of the nested search
    full_simplex: bool = False


@dataclass(frozen=True)
class EofResult:
    r: float
    r1: float
    r2: float
    eof: float
    iterations: int
    certified_gap: float

    def asdict(self):
        return {
            "r_o": self.r,
            "r1_o": self.r1,
            "r2_o": self.r2,
            "eof": self.eof,
            "iterations": self.iterations,
            "certified_gap": self.certified_gap,
        }


@dataclass(frozen=True)
class SweepBound:
    eof: float
    r: float
    skipped: int


@dataclass(frozen=True)
class EprResult:
    beta_min: float
    gx: float
    gp: float

    def asdict(self):
        return {"beta_min": self.beta_min, "gx": self.gx, "gp": self.gp}


def _feasibility_margin(sf: StandardForm, r1, r2):
    """Closure r -> min-eig(residual) - 1 using the x/p 2x2 sub-blocks.

    Squeezers never mix x with p quadratures, so the 4x4 residual splits into
    two 2x2 problems whose smallest eigenvalues have closed forms.
    """
    a, b, c1, c2 = sf.astuple()
    e1, e2 = math.exp(-r1), math.exp(-r2)
    ax, bx, cx = a * e1 * e1, b * e2 * e2, c1 * e1 * e2
    ap, bp, cp = a / (e1 * e1), b / (e2 * e2), c2 / (e1 * e2)

    def margin(r):
        c, s = math.cosh(r), math.sinh(r)
        cc, ss, cs = c * c, s * s, c * s
        mx11 = cc * ax - 2.0 * cs * cx + ss * bx
        mx22 = ss * ax - 2.0 * cs * cx + cc * bx
        mx12 = -cs * (ax + bx) + (cc + ss) * cx
        lx = 0.5 * (mx11 + mx22) - math.sqrt(
            0.25 * (mx11 - mx22) ** 2 + mx12 * mx12
        )
        mp11 = cc * ap + 2.0 * cs * cp + ss * bp
        mp22 = ss * ap + 2.0 * cs * cp + cc * bp
        mp12 = cs * (ap + bp) + (cc + ss) * cp
        lp = 0.5 * (mp11 + mp22) - math.sqrt(
            0.25 * (mp11 - mp22) ** 2 + mp12 * mp12
        )
        return min(lx, lp) - 1.0

    return margin


def _min_feasible_r(sf, r1, r2, r_lo, r_hi, anchors, tol, config):
    """Smallest r in [r_lo, r_hi] with a classical residual, or None.

    Scans first (the feasible set is not proven to be an interval), then
    bisects the bracketing pair down to tol.  ``anchors`` are extra scan
    candidates such as the interval endpoints, where the feasible set can
    degenerate to a single point.
    """
    margin = _feasibility_margin(sf, r1, r2)
    grid = np.linspace(r_lo, r_hi, config.scan_points)
    candidates = np.unique(np.concatenate([grid, [x for x in anchors
                                                  if r_lo <= x <= r_hi]]))
    evals = 0
    feasible_at = None
    for i, r in enumerate(candidates):
        evals += 1
        if margin(r) >= -CLASSICALITY_TOL:
            feasible_at = i
            break
    if feasible_at is None:
        return None, evals
    if feasible_at == 0:
        return (candidates[0], candidates[0], evals), evals
    lo, hi = candidates[feasible_at - 1], candidates[feasible_at]
    for _ in range(config.bisect_steps):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        evals += 1
        if margin(mid) >= -CLASSICALITY_TOL:
            hi = mid
        else:
            lo = mid
    return (hi, lo, evals), evals


def _verify_residual(sf, params):
    """Independent dense-eigenvalue check of the returned decomposition."""
    residual = classical_residual(sf, params, SQUEEZE_THEN_LOCAL)
    return float(np.linalg.eigvalsh(residual).min()) >= 1.0 - 10 * CLASSICALITY_TOL


def exact_eof(sf: StandardForm, tol=1e-6, config: EofSearchConfig | None = None):
    """Minimize the two-mode squeezing over all classical decompositions.

    Returns an EofResult whose certified_gap is the width of the final
    feasible/infeasible bracket on r (0 when the lower bound r_min is itself
    attained, which certifies optimality outright).
    """
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    config = config or EofSearchConfig()
    iterations = 0

    try:
        interval = disentangling_interval(sf)
        r_min_raw, r_max = interval.r_min, interval.r_max
    except DomainError:
        r_min_raw, r_max = None, None
    anchor = max(r_min_raw, 0.0) if r_min_raw is not None else 0.0

    # seed locals: none, and the boundary decomposition's locals mapped into
    # the squeeze-then-local picture (reordered through the pure equivalent)
    seed_locals = [(0.0, 0.0)]
    appendix = None
    if r_min_raw is not None:
        try:
            l1, l2 = local_squeeze_params(sf, anchor)
            appendix = pure_equivalent(anchor, l1, l2)
            seed_locals.append((appendix.r1, appendix.r2))
        except DomainError:
            appendix = None

    # the lower bound r >= anchor is attained iff some locals are feasible there
    for l1, l2 in seed_locals:
        iterations += 1
        if _feasibility_margin(sf, l1, l2)(anchor) >= -CLASSICALITY_TOL:
            params = SqueezeParams(anchor, l1, l2)
            if not _verify_residual(sf, params):
                raise DecompositionError(
                    f"feasibility fast-path failed dense verification for {sf}"
                )
            return EofResult(anchor, l1, l2, eof_from_squeezing(anchor),
                             iterations, 0.0)

    r_ub = appendix.r if appendix is not None else None
    r_hi = max(x for x in (r_max, r_ub, 1.0) if x is not None) + 0.2
    r_lo = max(0.0, anchor - 0.1)
    anchors = tuple(x for x in (anchor, r_max, r_ub) if x is not None)

    state = {"evals": 0}

    def objective(loc, inner_tol):
        res, ev = _min_feasible_r(sf, loc[0], loc[1], r_lo, r_hi, anchors,
                                  inner_tol, config)
        state["evals"] += ev
        if res is None:
            return r_hi + 1.0
        return res[0]

    seeds = list(seed_locals)
    gv = np.linspace(-config.grid_radius, config.grid_radius, config.grid_points)
    coarse = min(
        ((objective((g1, g2), 1e-4), (g1, g2)) for g1 in gv for g2 in gv),
        key=lambda t: t[0],
    )
    seeds.append(coarse[1])

    inner_tol = max(0.5 * tol, 1e-8)
    best_val, best_loc = math.inf, None
    if config.full_simplex:
        def full_objective(x):
            m = _feasibility_margin(sf, x[1], x[2])(x[0])
            state["evals"] += 1
            # exact-penalty form: continuous across the feasibility boundary
            return x[0] + 100.0 * max(0.0, -m - CLASSICALITY_TOL)

        for s in seeds:
            x0 = [max(anchor, 0.0) + 0.05, s[0], s[1]]
            res = None
            for _ in range(5):  # restarts track the narrow boundary valley
                res = minimize(full_objective, x0, method="Nelder-Mead",
                               options=dict(xatol=tol * 0.1, fatol=tol * 0.1,
                                            maxiter=5 * config.simplex_maxiter))
                if np.allclose(res.x, x0, atol=10 * tol):
                    break
                x0 = res.x
            r_cand = float(res.x[0])
            # the penalty optimum sits on the boundary, often a hair infeasible;
            # repair with a certified solve in a narrow window around it
            repaired, ev = _min_feasible_r(
                sf, res.x[1], res.x[2], max(r_lo, r_cand - 0.01),
                min(r_hi, r_cand + 0.05), (r_cand,), 0.1 * tol, config)
            state["evals"] += ev
            if repaired is not None and repaired[0] < best_val:
                best_val, best_loc = repaired[0], (res.x[1], res.x[2])
    else:
        for s in seeds:
            res = minimize(objective, s, args=(inner_tol,), method="Nelder-Mead",
                           options=dict(xatol=2e-5, fatol=inner_tol,
                                        maxiter=config.simplex_maxiter))
            if res.fun < best_val:
                best_val, best_loc = res.fun, tuple(res.x)

    if best_loc is None or best_val > r_hi:
        raise DecompositionError(
            f"no classical decomposition found up to r={r_hi} for {sf}; "
            "every physical state must be decomposable"
        )

    # the winning r is a known-feasible scan anchor; the feasible set at the
    # winning locals can be a sliver the fixed grid would miss
    final, ev = _min_feasible_r(sf, best_loc[0], best_loc[1], r_lo, r_hi,
                                anchors + (best_val,), tol * 0.01, config)
    state["evals"] += ev
    if final is None:
        raise BudgetExceededError(
            f"final feasibility solve failed at locals {best_loc} for {sf}",
            best=(best_val, best_loc),
        )
    r_opt, bracket_lo, _ = final
    gap = r_opt - bracket_lo
    if gap > tol:
        raise BudgetExceededError(
            f"bisection bracket {gap} wider than tol {tol} for {sf}",
            best=(r_opt, best_loc),
        )
    params = SqueezeParams(r_opt, best_loc[0], best_loc[1])
    if not _verify_residual(sf, params):
        raise DecompositionError(f"optimizer result fails dense verification for {sf}")
    iterations += state["evals"]
    return EofResult(r_opt, best_loc[0], best_loc[1], eof_from_squeezing(r_opt),
                     iterations, gap)


def eof_sweep_bound(sf: StandardForm, n_grid=64):
    """Upper bound on the exact optimum from scanning boundary decompositions.

    Every anti-squeezing in the disentangling interval yields a valid
    decomposition; mapping each through the pure-state reordering gives an
    entropy the optimum cannot exceed.  Grid points whose closed forms leave
    their domain are skipped and counted.
    """
    interval = disentangling_interval(sf)
    if interval.r_min <= 0.0:
        return SweepBound(0.0, 0.0, 0)
    grid = np.linspace(interval.r_min, interval.r_max, n_grid)
    best_r = math.inf
    skipped = 0
    for rt in grid:
        try:
            l1, l2 = local_squeeze_params(sf, rt)
            r_prime = pure_equivalent(rt, l1, l2).r
        except DomainError:
            skipped += 1
            continue
        best_r = min(best_r, r_prime)
    if not math.isfinite(best_r):
        raise DomainError(f"sweep failed at every grid point for {sf}")
    return SweepBound(eof_from_squeezing(best_r), best_r, skipped)


def epr_beta(sf: StandardForm, gx, gp):
    """Gain-weighted EPR variance product V_x V_p / (1 + gx*gp)^2.

    V_x = <(x1 - gx x2)^2> and V_p = <(p1 + gp p2)^2>; values below 1 witness
    entanglement.
    """
    a, b, c1, c2 = sf.astuple()
    gx, gp = float(gx), float(gp)
    denom = 1.0 + gx * gp
    if denom == 0.0:
        raise SingularGainError(f"gain product gx*gp = -1 is singular (gx={gx}, gp={gp})")
    vx = a + gx * gx * b - 2.0 * gx * c1
    vp = a + gp * gp * b + 2.0 * gp * c2
    return vx * vp / (denom * denom)


def _beta_grid(sf, lim, n):
    g = np.linspace(-lim, lim, n)
    gx, gp = np.meshgrid(g, g, indexing="ij")
    a, b, c1, c2 = sf.astuple()
    vx = a + gx * gx * b - 2.0 * gx * c1
    vp = a + gp * gp * b + 2.0 * gp * c2
    denom = (1.0 + gx * gp) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        beta = np.where(denom > 1e-18, vx * vp / denom, np.inf)
    k = int(np.argmin(beta))
    return float(beta.flat[k]), (float(gx.flat[k]), float(gp.flat[k]))


def _coordinate_descent_gains(sf, start, steps=200):
    """Alternate the exact single-gain minimizers of the witness.

    Minimizing over one gain at a fixed other gain is a rational 1d problem
    with the closed-form stationary points below; alternating them descends
    monotonically and reaches optima far outside any fixed search box.
    """
    a, b, c1, c2 = sf.astuple()
    gx, gp = start
    for _ in range(steps):
        den_x = b + c1 * gp
        den_p = b - c2 * gx
        if abs(den_x) < 1e-14 or abs(den_p) < 1e-14:
            break
        nxt_gx = (c1 + a * gp) / den_x
        nxt_gp = (a * nxt_gx - c2) / (b - c2 * nxt_gx) if abs(b - c2 * nxt_gx) > 1e-14 else gp
        if abs(nxt_gx) > 1e8 or abs(nxt_gp) > 1e8:
            break
        if abs(nxt_gx - gx) + abs(nxt_gp - gp) < 1e-14:
            gx, gp = nxt_gx, nxt_gp
            break
        gx, gp = nxt_gx, nxt_gp
    return gx, gp


def min_beta(sf: StandardForm, gain_limit=10.0, grid_points=21, rel_tol=1e-6):
    """Minimize the EPR witness over both gains.

    The minimum equals nu_tilde_minus^2 for every two-mode Gaussian state;
    the result is checked against that identity and a denser grid restart is
    attempted before giving up.
    """
    from .measures import symplectic_spectrum

    target = symplectic_spectrum(sf, partial_transposed=True).nu_minus ** 2
    best = None
    for n in (grid_points, 4 * grid_points + 1):
        _, seed = _beta_grid(sf, gain_limit, n)
        res = minimize(lambda g: epr_beta(sf, g[0], g[1]), seed,
                       method="Nelder-Mead",
                       options=dict(xatol=1e-10, fatol=1e-15, maxiter=600))
        if best is None or res.fun < best.fun:
            best = res
        if abs(res.fun - target) <= rel_tol * target:
            return EprResult(float(res.fun), float(res.x[0]), float(res.x[1]))
    raise BudgetExceededError(
        f"EPR minimization stalled at {best.fun} (expected {target}) for {sf}",
        best=EprResult(float(best.fun), float(best.x[0]), float(best.x[1])),
    )
