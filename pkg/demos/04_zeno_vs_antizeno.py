"""
Zeno and anti-Zeno regimes in one model
=======================================

At very short intervals every decay law is quadratic-like (here
1 - O(t^{3/2})), so frequent interrogation protects the level: the Zeno
effect. At the intervals reachable in practice the same interrogations
accelerate decay, and below threshold they even destroy a state that would
otherwise be partially stable.
"""
import numpy as np

from antizeno import (
    MeasurementSchedule,
    SpectralModel,
    asymptotic_survival,
    build_expansion,
    interrogated_survival,
    survival_p,
    zeno_scan,
)

# %%
# Zeno: a fixed short window T = 0.01 cut into ever more intervals.
exp = build_expansion(SpectralModel.photodetachment(10.0, 1.0))
for n, p in zeno_scan(exp, 0.01, [1, 10 ** 2, 10 ** 4, 10 ** 6, 10 ** 8]):
    print(f"N={n:>9}  p={p:.8f}")

# %%
# Below threshold a bound state keeps 70% of the population forever ...
below = SpectralModel.photodetachment(10.0, 0.5)
eb = build_expansion(below)
print("trapped fraction:", round(asymptotic_survival(below), 5))
print("free survival at t = 1e3, 1e4:", survival_p(eb, [1e3, 1e4]).p.round(5))

# %%
# ... but each reset hands the continuum a fresh share, so interrogating every
# 10 time units empties the level.
for n in (1, 10, 100):
    p = interrogated_survival(eb, MeasurementSchedule(10.0 * n, n))
    print(f"N={n:4d} resets every 10: p={p:.3e}")

# %%
# The same compounding at the band edge: p ~ p_f ** N once each interval is
# long compared with the relaxation.
edge = SpectralModel.band_edge(0.0)
ee = build_expansion(edge)
pf = asymptotic_survival(edge)
for n, p in zeno_scan(ee, 1e4, [1, 2, 4, 8]):
    print(f"N={n}  p={p:.5f}  p_f^N={pf ** n:.5f}")
