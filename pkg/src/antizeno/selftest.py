"""Fast invariant suite behind ``antizeno selftest``.

Each check returns ``(passed, measured)``; failures are reported, never
raised. The checks are cut-down versions of the acceptance tests sized to
run in well under a minute.
"""
import math

import numpy as np

from .model import CubicPolynomial, SpectralModel, solve_cubic
from .oracles.modes import OracleConfig, discretize_bath, evolve_modes
from .oracles.spectral import alpha_spectral, completeness
from .oracles.volterra import solve_volterra
from .protocol import MeasurementSchedule, interrogated_survival
from .special import faddeeva_w
from .survival import (
    SurvivalTrace,
    alpha_analytic,
    alpha_pole_terms,
    asymptotic_survival,
    build_expansion,
    fit_tail,
    survival_p,
)


def _expansion(model, flip):
    return build_expansion(model, branch_signs=(1, 1, 1) if flip else None)


def check_trapped_population(flip=False):
    pf = [asymptotic_survival(SpectralModel.band_edge(d)) for d in (-1.0, 0.0, 1.0)]
    ok = all(abs(a - b) < 1e-3 for a, b in zip(pf, (0.6773, 0.4444, 0.1509)))
    return ok, "p_f = " + ", ".join(f"{v:.4f}" for v in pf)


def check_normalisation(flip=False, n=50, seed=7):
    rng = np.random.default_rng(seed)
    worst_c, worst_s = 0.0, 0.0
    for i in range(n):
        if i % 2:
            m = SpectralModel.band_edge(rng.uniform(-1.5, 3.0))
        else:
            m = SpectralModel.photodetachment(10 ** rng.uniform(-1, 2), rng.uniform(-2.0, 4.0))
        e = build_expansion(m)
        worst_c = max(worst_c, abs(np.sum(e.coefficients) - 1.0))
        if i < 10:
            worst_s = max(worst_s, abs(completeness(m) - 1.0))
    return worst_c <= 1e-12 and worst_s <= 1e-8, f"|sum c - 1| <= {worst_c:.1e}, |completeness - 1| <= {worst_s:.1e}"


def check_oracles(flip=False):
    m = SpectralModel.band_edge(0.0)
    e = _expansion(m, flip)
    t = np.linspace(0.0, 5.0, 11)
    a = alpha_analytic(e, t)
    d_spec = max(abs(alpha_spectral(m, tk) - ak) for tk, ak in zip(t, a))
    d_volt = float(np.max(np.abs(solve_volterra(m, times=t).alpha - a)))
    bath = discretize_bath(m, OracleConfig(n_modes=2000, u_max=40.0))
    d_mode = float(np.max(np.abs(evolve_modes(bath, m.delta, t).alpha - a)))
    ok = d_spec <= 1e-6 and d_volt <= 1e-6 and d_mode <= 1e-3
    return ok, f"spectral {d_spec:.1e}, volterra {d_volt:.1e}, modes {d_mode:.1e}"


def check_boundedness(flip=False):
    t = np.linspace(0.0, 50.0, 501)
    worst = 0.0
    for d in (-1.0, 0.0, 1.0):
        with np.errstate(over="ignore", invalid="ignore"):
            a = alpha_analytic(_expansion(SpectralModel.band_edge(d), flip), t)
        worst = max(worst, float(np.nanmax(np.abs(a))) if np.all(np.isfinite(a)) else math.inf)
    return worst <= 1 + 1e-9, f"max |alpha| = {worst:.6g}"


def check_tail_exponents(flip=False):
    e = _expansion(SpectralModel.photodetachment(1e6, 1.0), flip)
    t = np.logspace(8, 10, 100)
    nu1 = fit_tail(survival_p(e, t), (1e8, 1e10)).nu
    e3 = _expansion(SpectralModel.photodetachment(1e6, 3.0), flip)
    t3 = np.logspace(4, 7, 100)
    a = alpha_analytic(e3, t3) - alpha_pole_terms(e3, t3)
    nu3 = fit_tail(SurvivalTrace(t3, a, "analytic"), (1e4, 1e7)).nu
    return abs(nu1 - 1) <= 0.15 and abs(nu3 - 3) <= 0.2, f"nu(threshold) = {nu1:.4f}, nu(above) = {nu3:.4f}"


def check_anti_zeno(flip=False):
    e = _expansion(SpectralModel.photodetachment(1e6, 1.0), flip)
    p = [interrogated_survival(e, MeasurementSchedule(100.0, n)) for n in (1, 2, 5, 10, 50, 100)]
    ok = all(b < a for a, b in zip(p, p[1:]))
    return ok, "p(N) = " + ", ".join(f"{v:.4f}" for v in p)


def check_zeno(flip=False):
    e = _expansion(SpectralModel.photodetachment(10.0, 1.0), flip)
    p = [interrogated_survival(e, MeasurementSchedule(0.01, n)) for n in (1, 100, 10_000, 1_000_000)]
    ok = all(b > a for a, b in zip(p, p[1:])) and abs(p[-1] - 1) <= 1e-3
    return ok, "p(N) = " + ", ".join(f"{v:.7f}" for v in p)


def check_faddeeva(flip=False):
    err = abs(faddeeva_w(1j) - 0.42758357615580700441)
    z = 1.0 + 1.0j
    sym = abs(faddeeva_w(-np.conj(z)) - np.conj(faddeeva_w(z)))
    return err < 1e-14 and sym == 0.0, f"|w(i) - e erfc(1)| = {err:.1e}"


def check_cubic(flip=False, n=2000, seed=11):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for c in rng.uniform(-1e3, 1e3, size=(n, 3)):
        p = CubicPolynomial(*c)
        worst = max(worst, solve_cubic(p).residual / p.scale)
    return worst <= 1e-10, f"max scaled residual {worst:.1e}"


CHECKS = [
    ("trapped population triple", check_trapped_population),
    ("normalisation identities", check_normalisation),
    ("oracle agreement", check_oracles),
    ("boundedness", check_boundedness),
    ("tail exponents", check_tail_exponents),
    ("anti-Zeno ordering", check_anti_zeno),
    ("Zeno recovery", check_zeno),
    ("Faddeeva spot values", check_faddeeva),
    ("cubic residuals", check_cubic),
]


def run(flip_branch_sign=False, out=print):
    """Run every check; returns ``True`` when all pass."""
    all_ok = True
    for name, fn in CHECKS:
        try:
            ok, measured = fn(flip=flip_branch_sign)
        except Exception as exc:  # reported, not raised
            ok, measured = False, f"error: {exc}"
        all_ok &= ok
        out(f"{'PASS' if ok else 'FAIL'}  {name}: {measured}")
    return all_ok
