"""Figure datasets and the CSV container they are written in.

Every dataset is a :class:`Table`: ``#``-prefixed metadata lines, one column
header line, comma-separated rows formatted with 17 significant digits (so
they re-parse to the identical doubles), and optional ``#`` trailer lines.
"""
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .model import Kind, SpectralModel
from .protocol import MeasurementSchedule, interrogated_survival, interrupted_p
from .survival import (
    DegenerateRootsError,
    alpha_analytic,
    asymptotic_survival,
    build_expansion,
    fit_tail,
    survival_p,
)

__all__ = [
    "Table",
    "format_table",
    "parse_table",
    "write_table",
    "read_table",
    "gnuplot_script",
    "robust_expansion",
    "fig1",
    "fig2",
    "fig3",
    "FIG1_N",
    "FIG1_BETA",
    "FIG2_BETA",
]

FIG1_BETA = 1e6
FIG1_T = 100.0
FIG1_N = (2, 5, 10, 50, 100, 1000)
FIG2_BETA = 1e6
FIG2_TAIL_WINDOW = (1e8, 1e10)
FIG3_DELTAS = (-1.0, 0.0, 1.0)


@dataclass
class Table:
    meta: dict
    columns: list
    data: np.ndarray
    trailer: list = field(default_factory=list)


def _fmt(x):
    return "%.17g" % x


def format_table(table):
    buf = io.StringIO()
    meta = dict(table.meta)
    meta.setdefault("tool", f"antizeno {__version__}")
    for k, v in meta.items():
        buf.write(f"# {k}: {v}\n")
    buf.write(",".join(table.columns) + "\n")
    for row in np.atleast_2d(table.data):
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    for line in table.trailer:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def parse_table(text):
    meta, trailer, rows, columns = {}, [], [], None
    for line in text.splitlines():
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if columns is None:
                k, _, v = body.partition(":")
                meta[k.strip()] = v.strip()
            else:
                trailer.append(body)
        elif columns is None:
            columns = line.split(",")
        else:
            rows.append([float(v) for v in line.split(",")])
    data = np.array(rows, dtype=float).reshape(-1, len(columns or []))
    return Table(meta, columns or [], data, trailer)


def write_table(table, path):
    with open(path, "w", newline="\n") as f:
        f.write(format_table(table))


def read_table(path):
    with open(path) as f:
        return parse_table(f.read())


def gnuplot_script(csv_path, table, logx=False, logy=False):
    """A gnuplot script plotting every column against the first."""
    lines = [
        "set datafile separator ','",
        "set datafile commentschars '#'",
        "set key autotitle columnhead",
        f"set xlabel '{table.columns[0]}'",
        "set ylabel 'survival probability'",
    ]
    if logx:
        lines.append("set logscale x")
    if logy:
        lines.append("set logscale y")
    plots = [f"'{csv_path}' using 1:{i + 1} with lines" for i in range(1, len(table.columns))]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


def robust_expansion(model, perturbation=1e-9):
    """``build_expansion``, nudging delta off a repeated-root point if needed."""
    try:
        return build_expansion(model)
    except DegenerateRootsError:
        d = model.delta
        return build_expansion(model.with_delta(d + perturbation * max(1.0, abs(d))))


def _model_meta(model):
    if model.kind is Kind.PHOTODETACHMENT:
        return {"model": "a (photodetachment)", "units": "rates in units of A, times in 1/A",
                "parameters": f"A=1 beta={model.beta!r}"}
    return {"model": "b (band edge)", "units": "rates in units of gamma, times in 1/gamma",
            "parameters": "gamma=1"}


def fig1(n_points=401, n_values=FIG1_N, beta=FIG1_BETA, T=FIG1_T, perturbation=1e-9,
         literal_exponent=False):
    """Survival after ``T`` against detuning for several interrogation counts."""
    deltas = np.linspace(0.0, 2.0, n_points)
    base = SpectralModel.photodetachment(beta, 0.0)
    rows = []
    for d in deltas:
        exp = robust_expansion(base.with_delta(d), perturbation)
        row = [d, interrogated_survival(exp, MeasurementSchedule(T, 1), literal_exponent)]
        row += [interrogated_survival(exp, MeasurementSchedule(T, n), literal_exponent)
                for n in n_values]
        rows.append(row)
    meta = _model_meta(base)
    meta.update({"figure": "1", "method": "analytic",
                 "schedule": f"T={T!r}, N in {list(n_values)}",
                 "exponent": "literal |alpha|^N" if literal_exponent else "|alpha|^(2N)"})
    cols = ["delta", "p_uninterrupted"] + [f"p_N{n}" for n in n_values]
    return Table(meta, cols, np.array(rows))


def fig2(n_points=1000, beta=FIG2_BETA, literal_exponent=False):
    """Survival against time at the shifted threshold, with and without pulses."""
    model = SpectralModel.photodetachment(beta, 1.0)
    exp = build_expansion(model)
    t = np.concatenate([[0.0], np.logspace(-2, math.log10(2e5), n_points - 1)])
    # both schedule endpoints sit exactly on the grid
    t[-1] = 2e5
    t[np.argmin(np.abs(t - 1e5))] = 1e5
    p0 = survival_p(exp, t).p
    s50 = MeasurementSchedule(2e5, 50)
    s200 = MeasurementSchedule(1e5, 200)
    p50 = interrupted_p(exp, s50, np.minimum(t, s50.total_T), literal_exponent)
    p200 = np.full_like(t, np.nan)
    inside = t <= s200.total_T
    p200[inside] = interrupted_p(exp, s200, t[inside], literal_exponent)
    tail_t = np.logspace(math.log10(FIG2_TAIL_WINDOW[0]), math.log10(FIG2_TAIL_WINDOW[1]), 200)
    fit = fit_tail(survival_p(exp, tail_t), FIG2_TAIL_WINDOW)
    meta = _model_meta(model)
    meta.update({"figure": "2", "method": "analytic", "delta": "1 (shifted threshold)",
                 "schedule": "50 pulses over T=2e5; 200 pulses over T=1e5 (nan beyond T)"})
    trailer = [f"tail_fit: nu={_fmt(fit.nu)} tau={_fmt(fit.tau)} window={FIG2_TAIL_WINDOW}"]
    return Table(meta, ["t", "p_uninterrupted", "p_50pulses", "p_200pulses"],
                 np.column_stack([t, p0, p50, p200]), trailer)


def fig3(n_points=600, deltas=FIG3_DELTAS):
    """Band-edge survival against time for three detunings, plus trapped populations."""
    t = np.linspace(0.0, 30.0, n_points)
    cols, data, pfs = ["t"], [t], []
    for d in deltas:
        model = SpectralModel.band_edge(d)
        exp = build_expansion(model)
        data.append(np.abs(alpha_analytic(exp, t)) ** 2)
        cols.append(f"p_delta{d:+g}")
        pfs.append(asymptotic_survival(model, exp))
    meta = _model_meta(SpectralModel.band_edge(0.0))
    meta.update({"figure": "3", "method": "analytic", "deltas": list(deltas)})
    trailer = ["asymptotic_survival," + ",".join(_fmt(v) for v in pfs)]
    return Table(meta, cols, np.column_stack(data), trailer)
