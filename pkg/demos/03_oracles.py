"""
Three independent checks of the closed-form amplitude
=====================================================

The closed form is a sum of three scaled complementary error functions. It
is checked here against

* a pole-plus-branch-cut evaluation of the inverse Laplace transform,
* a product-integration solution of the memory-kernel equation,
* exact evolution of a finely discretised continuum (4000 modes).
"""
import time
import warnings

import numpy as np

from antizeno import SpectralModel, alpha_analytic, build_expansion
from antizeno.oracles import (
    OracleConfig,
    alpha_spectral,
    completeness,
    discretize_bath,
    evolve_modes,
    solve_volterra,
)

t = np.linspace(0, 20, 41)
models = [SpectralModel.band_edge(0.0), SpectralModel.photodetachment(10.0, 0.5),
          SpectralModel.photodetachment(10.0, 3.0)]

for m in models:
    a = alpha_analytic(build_expansion(m), t)

    t0 = time.perf_counter()
    s = np.array([alpha_spectral(m, x) for x in t])
    ts = time.perf_counter() - t0

    t0 = time.perf_counter()
    v = solve_volterra(m, times=t).alpha
    tv = time.perf_counter() - t0

    t0 = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        bath = discretize_bath(m, OracleConfig(n_modes=4000, u_max=40.0))
    md = evolve_modes(bath, m.delta, t).alpha
    tm = time.perf_counter() - t0

    print(m.describe())
    print(f"  sum rule            {abs(completeness(m) - 1):.1e}")
    print(f"  spectral  max diff  {np.max(np.abs(s - a)):.1e}  ({ts:.1f}s)")
    print(f"  volterra  max diff  {np.max(np.abs(v - a)):.1e}  ({tv:.1f}s)")
    print(f"  modes     max diff  {np.max(np.abs(md - a)):.1e}  ({tm:.1f}s)")

# %%
# The mode oracle keeps the level shift of the modes it truncates. Without
# that correction a finite cutoff visibly detunes the level.
m = SpectralModel.band_edge(0.0)
a = alpha_analytic(build_expansion(m), t)
for corr in (False, True):
    bath = discretize_bath(m, OracleConfig(n_modes=4000, u_max=40.0), tail_correction=corr)
    d = np.max(np.abs(evolve_modes(bath, 0.0, t).alpha - a))
    print(f"tail correction={corr!s:5}  max diff {d:.1e}")
