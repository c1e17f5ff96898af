"""Command-line interface: measures, the exact optimizer, channels and figure data.

Exit codes: 0 success, 1 usage error, 2 numerical-domain error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__, io
from .channels import KINDS, ChannelSpec, apply_channel, channeled_tmsv_squeezing, \
    deterministic_bound
from .errors import BudgetExceededError, DomainError
from .measures import (
    disentangling_interval,
    eof_from_squeezing,
    eof_lower_bound,
    log_negativity,
    symplectic_spectrum,
)
from .oracle import exact_eof
from .states import random_state, tmsv

USAGE_EXIT, DOMAIN_EXIT, BUDGET_EXIT = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _add_state_arguments(p):
    p.add_argument("state", nargs="*", type=float,
                   help="standard form 'a b c1 c2' (or 16 numbers with --dense)")
    p.add_argument("--dense", action="store_true",
                   help="interpret the positional numbers as a row-major 4x4 matrix")


def _add_output_arguments(p):
    p.add_argument("--out", metavar="PATH", default=None, help="write to file instead of stdout")
    p.add_argument("--format", choices=("csv", "json-lines"), default="csv")


def _state_from(args):
    if not args.state:
        raise DomainError("no state given; pass 'a b c1 c2' or --dense with 16 numbers")
    return io.parse_state(args.state, dense=args.dense)


def build_parser():
    parser = _Parser(prog="gaussent",
                     description="entanglement measures for two-mode Gaussian states")
    parser.add_argument("--version", action="version", version=f"gaussent {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="log-negativity, lower bound and separability")
    _add_state_arguments(p)
    _add_output_arguments(p)

    p = sub.add_parser("exact-eof", help="numerically exact entanglement of formation")
    _add_state_arguments(p)
    _add_output_arguments(p)
    p.add_argument("--tol", type=float, default=1e-6, help="bracket tolerance on r_o")

    p = sub.add_parser("lowerbound", help="disentangling interval and the entropy bound")
    _add_state_arguments(p)
    _add_output_arguments(p)

    p = sub.add_parser("channel", help="apply a channel to a state, or sweep a grid")
    _add_state_arguments(p)
    _add_output_arguments(p)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--param", type=float, help="tau or v (fixed-parameter apply mode)")
    p.add_argument("--mode", type=int, choices=(1, 2), default=2,
                   help="which mode passes through the channel")
    p.add_argument("--sweep", action="store_true",
                   help="emit a (chi, param) grid table instead of applying to a state")
    p.add_argument("--chi-points", type=int, default=25)
    p.add_argument("--param-points", type=int, default=25)
    p.add_argument("--param-min", type=float, default=None)
    p.add_argument("--param-max", type=float, default=None)

    p = sub.add_parser("sample", help="write a reproducible corpus of random states")
    _add_output_arguments(p)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a-max", type=float, default=5.0)
    p.add_argument("--entangled", action="store_true")
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--balanced", action="store_true")

    p = sub.add_parser("fig2", help="lower bound vs exact optimum scatter data")
    _add_output_arguments(p)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--a-max", type=float, default=5.0)
    p.add_argument("--symmetric", action="store_true", help="sample symmetric states only")
    p.add_argument("--balanced", action="store_true", help="sample balanced states only")

    p = sub.add_parser("fig3", help="measures of a channeled TMSV against transmissivity")
    _add_output_arguments(p)
    p.add_argument("--r", type=float, default=1.0, help="input two-mode squeezing")
    p.add_argument("--n-tau", type=int, default=101)
    return parser


def _emit(records, args, metadata):
    io.write_output(io.render(records, args.format, metadata), args.out)


def cmd_measure(args):
    sf = _state_from(args)
    _emit([io.measure_record(sf)], args, io.default_metadata())
    return 0


def cmd_exact_eof(args):
    sf = _state_from(args)
    result = exact_eof(sf, tol=args.tol)
    record = io.state_record(sf)
    record.update(result.asdict())
    _emit([record], args, io.default_metadata(tol=args.tol))
    return 0


def cmd_lowerbound(args):
    sf = _state_from(args)
    interval = disentangling_interval(sf)
    record = io.state_record(sf)
    record.update(
        {
            "r_tilde_minus": interval.r_min,
            "r_tilde_plus": interval.r_max,
            "r_tilde_minus_clamped": max(interval.r_min, 0.0),
            "E_F_lower_bound": eof_lower_bound(sf),
        }
    )
    _emit([record], args, io.default_metadata())
    return 0


def _sweep_param_grid(args):
    lo, hi = args.param_min, args.param_max
    if args.kind == "lossy":
        lo = 0.02 if lo is None else lo
        hi = 1.0 if hi is None else hi
    elif args.kind == "amplifier":
        lo = 1.0 if lo is None else lo
        hi = 3.0 if hi is None else hi
    else:
        lo = 0.04 if lo is None else lo
        hi = 2.0 if hi is None else hi
    return np.linspace(lo, hi, args.param_points)


def cmd_channel(args):
    if args.sweep:
        rows = []
        for param in _sweep_param_grid(args):
            channel = ChannelSpec(args.kind, float(param))
            det = deterministic_bound(channel)
            for chi in np.linspace(0.01, 0.99, args.chi_points):
                out = apply_channel(tmsv(math.atanh(chi)), channel, mode=args.mode)
                rows.append(
                    {
                        "chi": float(chi),
                        "param": float(param),
                        "E_F": eof_from_squeezing(channeled_tmsv_squeezing(chi, channel)),
                        "E_N": log_negativity(out),
                        "E_F_det": det.eof,
                        "E_N_det": det.log_neg,
                    }
                )
        _emit(rows, args, io.default_metadata(kind=args.kind))
        return 0
    if args.param is None:
        raise DomainError("--param is required unless --sweep is given")
    channel = ChannelSpec(args.kind, args.param)
    sf = _state_from(args)
    out = apply_channel(sf, channel, mode=args.mode)
    record = io.measure_record(out)
    _emit([record], args, io.default_metadata(kind=args.kind, param=args.param,
                                              mode=args.mode))
    return 0


def cmd_sample(args):
    rng = np.random.default_rng(args.seed)
    rows = []
    for _ in range(args.n):
        sf = random_state(rng, a_max=args.a_max, entangled=args.entangled,
                          symmetric=args.symmetric, balanced=args.balanced)
        rows.append(io.state_record(sf))
    meta = io.default_metadata(
        seed=args.seed,
        n=args.n,
        sampler=f"a,b~U[1,{io.fmt(args.a_max)}]; c1~U[0,sqrt(ab)); c2~U(-c1,c1]; reject unphysical",
        entangled=args.entangled,
        symmetric=args.symmetric,
        balanced=args.balanced,
    )
    _emit(rows, args, meta)
    return 0


def cmd_fig2(args):
    if args.n < 1:
        raise DomainError("--n must be at least 1")
    rng = np.random.default_rng(args.seed)
    rows = []
    for _ in range(args.n):
        sf = random_state(rng, a_max=args.a_max, entangled=True,
                          symmetric=args.symmetric, balanced=args.balanced)
        r_min = max(disentangling_interval(sf).r_min, 0.0)
        result = exact_eof(sf, tol=args.tol)
        rows.append(
            {
                "a": sf.a,
                "b": sf.b,
                "c1": sf.c1,
                "c2": sf.c2,
                "x": math.exp(-2.0 * r_min),
                "y": math.exp(-2.0 * result.r),
            }
        )
    meta = io.default_metadata(seed=args.seed, n=args.n, tol=args.tol,
                               symmetric=args.symmetric, balanced=args.balanced)
    _emit(rows, args, meta)
    return 0


def cmd_fig3(args):
    if args.r <= 0.0:
        raise DomainError("--r must be positive")
    if args.n_tau < 2:
        raise DomainError("--n-tau must be at least 2")
    chi = math.tanh(args.r)
    state = tmsv(args.r)
    rows = []
    for tau in np.linspace(0.0, 1.0, args.n_tau):
        channel = ChannelSpec("lossy", float(tau))
        det = deterministic_bound(channel)
        out = apply_channel(state, channel)
        rows.append(
            {
                "tau": float(tau),
                "E_F": eof_from_squeezing(channeled_tmsv_squeezing(chi, channel)),
                "E_N": log_negativity(out),
                "E_F_det": det.eof,
                "E_N_det": det.log_neg,
            }
        )
    _emit(rows, args, io.default_metadata(r=args.r, n_tau=args.n_tau))
    return 0


_COMMANDS = {
    "measure": cmd_measure,
    "exact-eof": cmd_exact_eof,
    "lowerbound": cmd_lowerbound,
    "channel": cmd_channel,
    "sample": cmd_sample,
    "fig2": cmd_fig2,
    "fig3": cmd_fig3,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return _COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"gaussent: {exc}", file=sys.stderr)
        return DOMAIN_EXIT
    except BudgetExceededError as exc:
        print(f"gaussent: {exc}", file=sys.stderr)
        if exc.best is not None:
            print(f"gaussent: best so far: {exc.best}", file=sys.stderr)
        return BUDGET_EXIT


if __name__ == "__main__":
    sys.exit(main())
