"""Command-line front end: figure datasets, generic runs and the self-test.

Exit codes: 0 success, 1 self-test failure, 2 configuration error.
"""
import argparse
import sys

import numpy as np

from . import __version__, selftest
from .experiments import (
    FIG1_N,
    Table,
    fig1,
    fig2,
    fig3,
    format_table,
    gnuplot_script,
    robust_expansion,
)
from .model import SpectralModel
from .oracles.modes import OracleConfig, discretize_bath, evolve_modes
from .oracles.spectral import alpha_spectral
from .oracles.volterra import solve_volterra
from .protocol import MeasurementSchedule, interrogated_survival, zeno_scan
from .survival import DegenerateRootsError, survival_p

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def _parse_counts(text):
    """``"1,2,5"`` or ``"1-100"`` (inclusive range) or a mix."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _model(args, delta=None):
    d = args.delta if delta is None else delta
    try:
        if args.model == "a":
            return SpectralModel.photodetachment(args.beta, d)
        return SpectralModel.band_edge(d, gamma=args.gamma)
    except ValueError as exc:
        raise ConfigError(f"--model/--beta/--gamma/--delta: {exc}") from None


def _emit(table, args, logx=False, logy=False):
    text = format_table(table)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="\n") as f:
            f.write(text)
        if getattr(args, "plot_script", False):
            with open(args.out + ".gp", "w", newline="\n") as f:
                f.write(gnuplot_script(args.out, table, logx=logx, logy=logy))
    return EXIT_OK


def _require(cond, field, msg):
    if not cond:
        raise ConfigError(f"{field}: {msg}")


def cmd_fig1(args):
    return _emit(fig1(perturbation=args.seed_perturbation, literal_exponent=args.literal_exponent), args)


def cmd_fig2(args):
    return _emit(fig2(literal_exponent=args.literal_exponent), args, logx=True, logy=True)


def cmd_fig3(args):
    return _emit(fig3(), args)


def cmd_trace(args):
    _require(args.points >= 2, "--points", "need at least 2 samples")
    _require(args.tmax > 0, "--tmax", "must be > 0")
    model = _model(args)
    t = np.linspace(0.0, args.tmax, args.points)
    if args.method == "analytic":
        try:
            trace = survival_p(robust_expansion(model, args.seed_perturbation), t)
        except DegenerateRootsError as exc:
            raise ConfigError(f"--delta: {exc}") from None
    elif args.method == "volterra":
        trace = solve_volterra(model, times=t, dt=args.dt)
    elif args.method == "spectral":
        from .survival import SurvivalTrace

        trace = SurvivalTrace(t, np.array([alpha_spectral(model, tk) for tk in t]), "spectral")
    else:
        bath = discretize_bath(model, OracleConfig(n_modes=args.n_modes, u_max=args.u_max))
        trace = evolve_modes(bath, model.delta, t)
    meta = {"model": model.describe(), "method": args.method,
            "units": "times in 1/A (model a) or 1/gamma (model b)"}
    data = np.column_stack([trace.times, trace.alpha.real, trace.alpha.imag, trace.p])
    return _emit(Table(meta, ["t", "re_alpha", "im_alpha", "p"], data), args)


def cmd_sweep(args):
    _require(args.points >= 1, "--points", "detuning grid is empty")
    _require(args.delta_max >= args.delta_min, "--delta-max", "must be >= --delta-min")
    _require(args.T > 0, "--T", "must be > 0")
    counts = _parse_counts(args.N)
    _require(counts and min(counts) >= 1, "--N", "need interrogation counts >= 1")
    deltas = np.linspace(args.delta_min, args.delta_max, args.points)
    rows = []
    for d in deltas:
        exp = robust_expansion(_model(args, d), args.seed_perturbation)
        rows.append([d] + [interrogated_survival(exp, MeasurementSchedule(args.T, n), args.literal_exponent)
                           for n in counts])
    meta = {"model": _model(args, 0.0).describe().replace("delta=0.0", "delta=swept"),
            "method": "analytic", "schedule": f"T={args.T!r}",
            "units": "rates in units of A or gamma"}
    return _emit(Table(meta, ["delta"] + [f"p_N{n}" for n in counts], np.array(rows)), args)


def cmd_protocol(args):
    _require(args.T > 0, "--T", "must be > 0")
    counts = _parse_counts(args.N)
    _require(counts and min(counts) >= 1, "--N", "need interrogation counts >= 1")
    model = _model(args)
    try:
        exp = robust_expansion(model, args.seed_perturbation)
    except DegenerateRootsError as exc:
        raise ConfigError(f"--delta: {exc}") from None
    scan = zeno_scan(exp, args.T, counts, args.literal_exponent)
    meta = {"model": model.describe(), "method": "analytic", "schedule": f"T={args.T!r}",
            "units": "times in 1/A (model a) or 1/gamma (model b)"}
    return _emit(Table(meta, ["N", "p"], np.array(scan, dtype=float)), args)


def cmd_selftest(args):
    ok = selftest.run(flip_branch_sign=args.flip_branch_sign)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="antizeno", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    common.add_argument("--literal-exponent", action="store_true",
                        help="use |alpha(T/N)|^N instead of |alpha(T/N)|^(2N)")
    common.add_argument("--seed-perturbation", type=float, default=1e-9,
                        help="relative detuning nudge applied at repeated-root points")
    common.add_argument("--plot-script", action="store_true",
                        help="also write a gnuplot script next to --out")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--model", choices=("a", "b"), default="a",
                       help="a: photodetachment, b: band edge")
    model.add_argument("--beta", type=float, default=10.0, help="continuum width (model a, units of A)")
    model.add_argument("--gamma", type=float, default=1.0, help="band-edge rate (model b)")
    model.add_argument("--delta", type=float, default=0.0, help="detuning")

    for name, fn, parents in (
        ("fig1", cmd_fig1, [common]),
        ("fig2", cmd_fig2, [common]),
        ("fig3", cmd_fig3, [common]),
    ):
        sp = sub.add_parser(name, parents=parents, help=f"dataset for figure {name[-1]}")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("trace", parents=[common, model], help="survival against time")
    sp.add_argument("--tmax", type=float, default=20.0)
    sp.add_argument("--points", type=int, default=201)
    sp.add_argument("--method", choices=("analytic", "modes", "volterra", "spectral"), default="analytic")
    sp.add_argument("--dt", type=float, default=1e-3, help="Volterra step")
    sp.add_argument("--n-modes", type=int, default=4000)
    sp.add_argument("--u-max", type=float, default=40.0)
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("sweep", parents=[common, model], help="survival after T against detuning")
    sp.add_argument("--delta-min", type=float, default=0.0)
    sp.add_argument("--delta-max", type=float, default=2.0)
    sp.add_argument("--points", type=int, default=101)
    sp.add_argument("--T", type=float, default=100.0)
    sp.add_argument("--N", default="1," + ",".join(str(n) for n in FIG1_N))
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("protocol", parents=[common, model], help="survival after T against N")
    sp.add_argument("--T", type=float, default=100.0)
    sp.add_argument("--N", default="1-100")
    sp.set_defaults(func=cmd_protocol)

    sp = sub.add_parser("selftest", help="run the invariant suite")
    sp.add_argument("--flip-branch-sign", action="store_true",
                    help="debug hook: deliberately wrong branch signs (must fail)")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
