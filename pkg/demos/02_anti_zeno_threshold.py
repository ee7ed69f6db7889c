"""
Anti-Zeno effect at a shifted ionisation threshold
==================================================

For a photodetachment continuum the coupling pushes the effective threshold
up to delta = A. Sitting exactly there, the undisturbed decay is slow (the
survival falls off only as 1/t at long times), and interrogating the system
speeds the decay up instead of freezing it.
"""
import numpy as np

from antizeno import (
    MeasurementSchedule,
    SpectralModel,
    anti_zeno_optimum,
    build_expansion,
    fit_tail,
    interrogated_survival,
    survival_p,
    threshold_shift,
)

model = SpectralModel.photodetachment(beta=1e6, delta=1.0)
print("shifted threshold:", threshold_shift(model))
exp = build_expansion(model)

# %%
# More interrogations within T = 100 means lower survival.
for n in (1, 2, 5, 10, 50, 100, 1000):
    p = interrogated_survival(exp, MeasurementSchedule(100.0, n))
    print(f"N={n:5d}  p(T=100)={p:.5f}")

# %%
# The long-time tail. p * t tends to beta / pi, so the 1/t law cannot start
# before t ~ 3e5; on [1e2, 1e5] the level has barely begun to decay.
for window in ((1e2, 1e5), (1e8, 1e10)):
    t = np.logspace(np.log10(window[0]), np.log10(window[1]), 200)
    fit = fit_tail(survival_p(exp, t), window)
    print(f"fit on {window}: nu={fit.nu:.4f} tau={fit.tau:.4g}")

# %%
# Pulsed evolution over long times: 200 resets within 1e5.
free = survival_p(exp, [1e5]).p[0]
pulsed = interrogated_survival(exp, MeasurementSchedule(1e5, 200))
print(f"free p(1e5)={free:.4f}  with 200 pulses={pulsed:.3e}")

# %%
# The power-law estimate of the best interrogation count, next to the
# exact value at that count. It is an order-of-magnitude guide only.
T = 1e7
n_opt, p_min = anti_zeno_optimum(fit, T)
exact = interrogated_survival(exp, MeasurementSchedule(T, round(n_opt)))
print(f"T={T:g}: N_opt={n_opt:.1f}, estimate p_min={p_min:.2e}, exact at N={round(n_opt)}: {exact:.2e}")
