"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with the measured values
and the tolerance it was judged against, then asserts. Runtime budgets are
part of each criterion. Run standalone with ``python tests/test_acceptance.py``.
"""
import math
import subprocess
import sys
import time
import warnings

import numpy as np
import pytest

from antizeno.experiments import format_table, fig1, fig2, fig3
from antizeno.model import CubicPolynomial, SpectralModel, solve_cubic
from antizeno.oracles import (
    OracleConfig,
    alpha_spectral,
    completeness,
    discretize_bath,
    evolve_modes,
    solve_volterra,
)
from antizeno.protocol import MeasurementSchedule, interrogated_survival
from antizeno.special import erfcx_c, faddeeva_w
from antizeno.survival import (
    DegenerateRootsError,
    SurvivalTrace,
    alpha_analytic,
    alpha_pole_terms,
    asymptotic_survival,
    build_expansion,
    fit_tail,
    survival_p,
)

pytestmark = pytest.mark.slow

_LINES = []


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, measured, elapsed, budget):
        ok = ok and elapsed <= budget
        line = (f"{'PASS' if ok else 'FAIL'}  criterion {number} ({title}): {measured}; "
                f"runtime {elapsed:.2f}s / {budget:g}s")
        _LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return emit


def test_criterion_1_trapped_population(report):
    t0 = time.perf_counter()
    pf = [asymptotic_survival(SpectralModel.band_edge(d)) for d in (-1.0, 0.0, 1.0)]
    elapsed = time.perf_counter() - t0
    derived = (0.6773, 0.4444, 0.1509)
    rounded = (0.7, 0.45, 0.15)
    ok = all(abs(a - b) <= 1e-3 for a, b in zip(pf, derived))
    ok &= all(abs(a - b) <= 0.03 for a, b in zip(pf, rounded))
    assert report(1, "trapped population", ok,
                  "p_f = " + ", ".join(f"{v:.4f}" for v in pf) + " (tol 1e-3 derived, 0.03 rounded)",
                  elapsed, 1.0)


def _draws(rng, n, make):
    out = []
    while len(out) < n:
        m = make(rng)
        try:
            out.append((m, build_expansion(m)))
        except DegenerateRootsError:
            continue  # repeated-root points are measure zero; redraw
    return out


def test_criterion_2_normalisation(report):
    rng = np.random.default_rng(20240601)
    t0 = time.perf_counter()
    makers = {
        "photodetachment": lambda r: SpectralModel.photodetachment(
            10 ** r.uniform(-1, 3), r.uniform(-3, 5), A=10 ** r.uniform(-0.5, 0.5)),
        "band edge": lambda r: SpectralModel.band_edge(r.uniform(-3, 5), gamma=10 ** r.uniform(-0.5, 0.5)),
    }
    worst_c = worst_s = 0.0
    for make in makers.values():
        for m, exp in _draws(rng, 1000, make):
            worst_c = max(worst_c, abs(np.sum(exp.coefficients) - 1))
            worst_s = max(worst_s, abs(completeness(m) - 1))
    elapsed = time.perf_counter() - t0
    ok = worst_c <= 1e-12 and worst_s <= 1e-8
    assert report(2, "normalisation identities, 1000 draws per model", ok,
                  f"max |sum c - 1| = {worst_c:.1e} (tol 1e-12), max |completeness - 1| = {worst_s:.1e} (tol 1e-8)",
                  elapsed, 60.0)


CANONICAL = [
    SpectralModel.band_edge(-1.0),
    SpectralModel.band_edge(0.0),
    SpectralModel.band_edge(1.0),
    SpectralModel.photodetachment(10.0, 0.5),
    SpectralModel.photodetachment(10.0, 3.0),
]


def test_criterion_3_oracle_equivalence(report):
    t0 = time.perf_counter()
    t = np.linspace(0.0, 20.0, 201)
    cfg = OracleConfig(n_modes=4000, u_max=40.0)
    d_volt = d_spec = d_mode = 0.0
    for m in CANONICAL:
        a = alpha_analytic(build_expansion(m), t)
        d_volt = max(d_volt, float(np.max(np.abs(solve_volterra(m, times=t).alpha - a))))
        d_spec = max(d_spec, max(abs(alpha_spectral(m, x) - y) for x, y in zip(t, a)))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")  # delta = 3 sits short of the cutoff guidance
            bath = discretize_bath(m, cfg)
        d_mode = max(d_mode, float(np.max(np.abs(evolve_modes(bath, m.delta, t).alpha - a))))
    elapsed = time.perf_counter() - t0
    ok = d_volt <= 1e-6 and d_spec <= 1e-6 and d_mode <= 1e-3
    assert report(3, "oracle equivalence, 5 canonical sets, t in [0, 20]", ok,
                  f"volterra {d_volt:.1e}, spectral {d_spec:.1e} (tol 1e-6), modes {d_mode:.1e} (tol 1e-3)",
                  elapsed, 300.0)


def test_criterion_4_tail_exponents(report):
    t0 = time.perf_counter()
    at = build_expansion(SpectralModel.photodetachment(1e6, 1.0))
    nu1 = fit_tail(survival_p(at, np.logspace(8, 10, 200)), (1e8, 1e10)).nu
    above = build_expansion(SpectralModel.photodetachment(1e6, 3.0))
    t = np.logspace(4, 7, 200)
    a = alpha_analytic(above, t) - alpha_pole_terms(above, t)
    nu3 = fit_tail(SurvivalTrace(t, a, "analytic"), (1e4, 1e7)).nu
    elapsed = time.perf_counter() - t0
    ok = abs(nu1 - 1) <= 0.15 and abs(nu3 - 3) <= 0.2
    assert report(4, "tail exponents, beta = 1e6", ok,
                  f"nu(threshold, t in [1e8, 1e10]) = {nu1:.4f} (1 +/- 0.15), "
                  f"nu(delta = 3, t in [1e4, 1e7], pole term removed) = {nu3:.4f} (3 +/- 0.2)",
                  elapsed, 60.0)


def test_criterion_5_anti_zeno(report):
    t0 = time.perf_counter()
    exp = build_expansion(SpectralModel.photodetachment(1e6, 1.0))
    p = [interrogated_survival(exp, MeasurementSchedule(100.0, n)) for n in (1, 2, 5, 10, 50, 100)]
    pulsed = interrogated_survival(exp, MeasurementSchedule(1e5, 200))
    free = survival_p(exp, [1e5]).p[0]
    elapsed = time.perf_counter() - t0
    ok = all(b < a for a, b in zip(p, p[1:])) and pulsed * 10 <= free
    assert report(5, "anti-Zeno ordering", ok,
                  "p(N = 1, 2, 5, 10, 50, 100) = " + ", ".join(f"{v:.5f}" for v in p)
                  + f" strictly decreasing; 200 pulses {pulsed:.2e} vs free {free:.3f} (ratio {free / pulsed:.0f}, need >= 10)",
                  elapsed, 60.0)


def test_criterion_6_zeno_and_destruction(report):
    t0 = time.perf_counter()
    exp = build_expansion(SpectralModel.photodetachment(10.0, 1.0))
    pz = [interrogated_survival(exp, MeasurementSchedule(0.01, n)) for n in (1, 100, 10_000, 1_000_000)]
    ok_a = all(b > a for a, b in zip(pz, pz[1:])) and abs(pz[-1] - 1) <= 1e-3
    below = SpectralModel.photodetachment(10.0, 0.5)
    eb = build_expansion(below)
    pf = asymptotic_survival(below)
    late = survival_p(eb, [1e3, 1e4, 1e5]).p
    saturated = pf > 0 and np.all(np.abs(late - pf) <= 1e-3)
    pulsed = interrogated_survival(eb, MeasurementSchedule(1000.0, 100))
    ok_b = saturated and pulsed < 1e-3
    elapsed = time.perf_counter() - t0
    assert report(6, "Zeno recovery and below-threshold destruction", ok_a and ok_b,
                  "(a) p(N = 1, 1e2, 1e4, 1e6) = " + ", ".join(f"{v:.7f}" for v in pz)
                  + f"; (b) p_f = {pf:.5f}, free p(1e3..1e5) = {late.min():.5f}..{late.max():.5f},"
                  f" T/N = 10 with N = 100 gives {pulsed:.1e} (need < 1e-3)",
                  elapsed, 60.0)


def test_criterion_7_faddeeva_fixture(report, faddeeva_fixture):
    z, ref = faddeeva_fixture
    t0 = time.perf_counter()
    rel = float(np.max(np.abs(faddeeva_w(z) - ref) / np.abs(ref)))
    elapsed = time.perf_counter() - t0
    quadrants = {(np.sign(a), np.sign(b)) for a, b in zip(z.real, z.imag) if a and b}
    span = (np.abs(z)[np.abs(z) > 0].min(), np.abs(z).max())
    ok = rel <= 1e-12 and z.size >= 200 and len(quadrants) == 4 and span[0] <= 1e-3 and span[1] >= 1e5
    assert report(7, "Faddeeva accuracy", ok,
                  f"max relative error {rel:.1e} over {z.size} points, |z| in [{span[0]:.0e}, {span[1]:.0e}], "
                  f"{len(quadrants)} quadrants (tol 1e-12)",
                  elapsed, 1.0)


def _cli_bytes(cmd):
    out = subprocess.run([sys.executable, "-m", "antizeno.cli", cmd], check=True, capture_output=True)
    return out.stdout


def test_criterion_8_properties(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    # boundedness over random models and log-spaced times
    worst_a = 0.0
    draws = _draws(rng, 200, lambda r: SpectralModel.band_edge(r.uniform(-3, 5)))
    draws += _draws(rng, 200, lambda r: SpectralModel.photodetachment(10 ** r.uniform(-2, 6), r.uniform(-3, 5)))
    for m, exp in draws:
        t = np.concatenate([[0.0], np.logspace(-4, 6, 300)]) / m.rate_unit
        worst_a = max(worst_a, float(np.max(np.abs(alpha_analytic(exp, t)))))
    ok_bound = worst_a <= 1 + 1e-9

    bath = discretize_bath(SpectralModel.band_edge(0.0), OracleConfig(n_modes=4000, u_max=40.0))
    _, norm = evolve_modes(bath, 0.0, np.linspace(0, 20, 21), return_norm=True)
    drift = float(np.max(np.abs(norm - 1)))
    ok_unit = drift <= 1e-9

    mags = 10.0 ** rng.uniform(-3, 3, size=(10_000, 3)) * rng.choice([-1.0, 1.0], size=(10_000, 3))
    worst_v = worst_r = 0.0
    for c in mags:
        p = CubicPolynomial(*c)
        r = solve_cubic(p)
        y = r.roots
        s2 = y[0] * y[1] + y[0] * y[2] + y[1] * y[2]
        worst_v = max(worst_v, max(abs(y.sum() + p.c2), abs(s2 - p.c1), abs(y.prod() + p.c0)) / p.scale)
        worst_r = max(worst_r, r.residual / p.scale)
    ok_cubic = worst_v <= 1e-10 and worst_r <= 1e-10

    x = np.linspace(-5, 1e4, 100_001)
    ok_mono = bool(np.all(np.diff(erfcx_c(x).real) < 0))

    same = all(_cli_bytes(c) == _cli_bytes(c) for c in ("fig1", "fig2", "fig3"))
    in_process = format_table(fig3()) == format_table(fig3())
    ok_det = same and in_process
    elapsed = time.perf_counter() - t0
    ok = ok_bound and ok_unit and ok_cubic and ok_mono and ok_det
    assert report(8, "property suite", ok,
                  f"max |alpha| = {worst_a:.12f} (<= 1 + 1e-9); mode norm drift {drift:.1e} (1e-9); "
                  f"cubic Vieta {worst_v:.1e}, residual {worst_r:.1e} (1e-10, 1e4 draws); "
                  f"erfcx monotone {ok_mono}; CSV byte-identical {ok_det}",
                  elapsed, 300.0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
