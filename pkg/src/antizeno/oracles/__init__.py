"""Independent reference computations of the survival amplitude."""
from .modes import ModeBath, OracleConfig, discretize_bath, evolve_modes
from .spectral import alpha_spectral, completeness, cut_density
from .volterra import solve_volterra

__all__ = [
    "ModeBath",
    "OracleConfig",
    "discretize_bath",
    "evolve_modes",
    "alpha_spectral",
    "completeness",
    "cut_density",
    "solve_volterra",
]
