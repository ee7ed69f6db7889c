"""Near-threshold quantum decay under repeated interrogation.

Closed-form survival amplitudes for a photodetachment continuum and a
photonic band edge, three independent numerical oracles for them, and the
interrupted-evolution protocol that exposes the anti-Zeno effect.
"""
__version__ = "0.1.0"

from .model import (
    Kind,
    SpectralModel,
    characteristic_cubic,
    coupling_density,
    find_poles,
    memory_kernel,
    resolvent,
    solve_cubic,
    threshold_shift,
)
from .protocol import (
    MeasurementSchedule,
    anti_zeno_optimum,
    interrogated_survival,
    interrupted_trace,
    zeno_scan,
)
from .special import erfc_c, erfcx_c, faddeeva_w
from .survival import (
    alpha_analytic,
    asymptotic_survival,
    build_expansion,
    fit_tail,
    survival_p,
)
