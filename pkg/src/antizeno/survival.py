"""Closed-form survival amplitude, trapped population and tail fits.

With ``y_i`` the roots of the characteristic cubic and
``c_i = y_i (y_i + sb) / P'(y_i)`` the partial-fraction weights of ``1/H``,

    alpha(t) = sum_i c_i * erfcx(exp(i pi/4) * sqrt(t) * s_i * y_i)

where ``erfcx(zeta) = exp(zeta**2) erfc(zeta)`` and ``zeta**2 = i y**2 t``, so
the product ``exp(i y**2 t) erfc(...)`` is never formed. Inverting
``1/(x (x - y))`` with ``x = sqrt(-i z)`` through
``L[erfcx(a sqrt(t))](p) = 1 / (sqrt(p) (sqrt(p) + a))`` fixes every branch
sign to ``s_i = -1``. A real positive root (bound state) then contributes
``2 c exp(i Y**2 t)`` forever; that is the trapped population.
:func:`calibrate_branch_signs` re-derives the signs against the
pole-plus-cut oracle.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .model import characteristic_cubic, find_poles, solve_cubic
from .special import erfcx_c

__all__ = [
    "DegenerateRootsError",
    "AmplitudeExpansion",
    "SurvivalTrace",
    "AsymptoticFit",
    "DEFAULT_BRANCH_SIGNS",
    "build_expansion",
    "alpha_analytic",
    "alpha_pole_terms",
    "survival_p",
    "asymptotic_survival",
    "fit_tail",
    "calibrate_branch_signs",
]

_PHASE = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
DEFAULT_BRANCH_SIGNS = (-1, -1, -1)
DEGENERACY_TOL = 1e-8
METHODS = ("analytic", "modes", "volterra", "spectral")


class DegenerateRootsError(ValueError):
    """The characteristic cubic has (numerically) repeated roots."""


@dataclass(frozen=True)
class AmplitudeExpansion:
    model: object
    roots: np.ndarray
    coefficients: np.ndarray
    branch_signs: tuple

    @property
    def terms(self):
        return list(zip(self.roots, self.coefficients, self.branch_signs))

    def bound_index(self):
        """Index of the real positive root, or ``None`` above threshold."""
        for i, y in enumerate(self.roots):
            if y.real > 0 and abs(y.imag) <= 1e-12 * abs(y):
                return i
        return None


@dataclass(frozen=True)
class SurvivalTrace:
    times: np.ndarray
    alpha: np.ndarray
    method: str

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        a = np.asarray(self.alpha, dtype=complex)
        if t.shape != a.shape or t.ndim != 1:
            raise ValueError("times and alpha must be 1-d arrays of equal length")
        if t.size and (t[0] < 0 or np.any(np.diff(t) <= 0)):
            raise ValueError("times must be nonnegative and strictly increasing")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "alpha", a)

    @property
    def p(self):
        return np.abs(self.alpha) ** 2


@dataclass(frozen=True)
class AsymptoticFit:
    """``p(t) ~ (tau / t)**nu`` fitted on ``window``."""

    nu: float
    tau: float
    window: tuple
    residual: float


def _coefficients(model, roots):
    sb = model.sqrt_beta
    return roots * (roots + sb) / ((3.0 * roots + 2.0 * sb) * roots + model.delta)


def build_expansion(model, branch_signs=None, calibrate=False):
    """Roots, residue coefficients and branch signs for ``model``.

    Raises
    ------
    DegenerateRootsError
        If two roots coincide to within ``1e-8`` (relative).
    """
    roots = solve_cubic(characteristic_cubic(model)).roots
    scale = max(1.0, float(np.max(np.abs(roots))))
    for i, j in itertools.combinations(range(3), 2):
        if abs(roots[i] - roots[j]) < DEGENERACY_TOL * scale:
            raise DegenerateRootsError(
                f"repeated roots of the characteristic cubic at {model.describe()}; "
                "perturb the parameter point"
            )
    coeffs = _coefficients(model, roots)
    total = complex(np.sum(coeffs))
    if abs(total - 1.0) > 1e-12 * max(1.0, float(np.sum(np.abs(coeffs)))):
        raise DegenerateRootsError(
            f"coefficient sum {total!r} != 1 at {model.describe()} (ill-conditioned roots)"
        )
    if calibrate:
        branch_signs = calibrate_branch_signs(model, roots=roots, coefficients=coeffs)
    elif branch_signs is None:
        branch_signs = DEFAULT_BRANCH_SIGNS
    return AmplitudeExpansion(model, roots, coeffs, tuple(int(s) for s in branch_signs))


def _alpha(roots, coeffs, signs, t):
    rt = np.sqrt(t)[..., None]
    zeta = _PHASE * rt * (np.asarray(signs) * roots)
    return np.sum(coeffs * erfcx_c(zeta), axis=-1)


def alpha_analytic(exp, t):
    """Survival amplitude at time(s) ``t >= 0``."""
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(np.isnan(t)):
        raise ValueError("t must be >= 0")
    out = _alpha(exp.roots, exp.coefficients, exp.branch_signs, t)
    return complex(out) if scalar else out


def alpha_pole_terms(exp, t):
    """Exponential pieces ``2 c_i exp(i y_i**2 t)`` hidden inside the erfcx
    terms whose argument points into the left half plane.

    These are the bound-state and Wigner-Weisskopf contributions;
    ``alpha_analytic - alpha_pole_terms`` is the algebraic continuum part.
    """
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    for y, c, s in exp.terms:
        if (_PHASE * s * y).real < 0:
            out = out + 2.0 * c * np.exp(1j * y * y * t)
    return complex(out) if scalar else out


def survival_p(exp, times) -> SurvivalTrace:
    t = np.asarray(times, dtype=float)
    return SurvivalTrace(t, alpha_analytic(exp, t), "analytic")


def asymptotic_survival(model, exp=None) -> float:
    """Long-time survival probability ``|2 c_b|**2`` (zero without a bound state).

    Cross-checked against ``|residue of 1/H at the bound pole|**2``.
    """
    if exp is None:
        exp = build_expansion(model)
    i = exp.bound_index()
    if i is None:
        return 0.0
    pf = abs(2.0 * exp.coefficients[i]) ** 2
    bound = find_poles(model, roots=exp.roots).bound
    if len(bound) != 1:
        raise RuntimeError(f"expected one bound pole at {model.describe()}, found {len(bound)}")
    pr = abs(bound[0].residue) ** 2
    if abs(pr - pf) > 1e-8 * max(1.0, pf):
        raise RuntimeError(f"residue/coefficient mismatch {pr!r} vs {pf!r} at {model.describe()}")
    return float(pf)


def fit_tail(trace, window) -> AsymptoticFit:
    """Least-squares line through ``log p`` against ``log t`` on ``window``.

    Nothing is subtracted here; remove non-decaying pole terms first
    (see :func:`alpha_pole_terms`).
    """
    t_lo, t_hi = float(window[0]), float(window[1])
    if not 0 < t_lo < t_hi:
        raise ValueError("window must satisfy 0 < t_lo < t_hi")
    t = trace.times
    sel = (t >= t_lo) & (t <= t_hi)
    if np.count_nonzero(sel) < 8:
        raise ValueError(f"need at least 8 samples in window, have {np.count_nonzero(sel)}")
    p = trace.p[sel]
    if np.any(p <= 0):
        raise ValueError("survival probability must be positive on the fit window")
    lt, lp = np.log(t[sel]), np.log(p)
    slope, intercept = np.polyfit(lt, lp, 1)
    nu = -slope
    resid = float(np.sqrt(np.mean((lp - (slope * lt + intercept)) ** 2)))
    tau = math.exp(intercept / nu) if nu != 0 else math.nan
    return AsymptoticFit(float(nu), float(tau), (t_lo, t_hi), resid)


def calibrate_branch_signs(model, roots=None, coefficients=None, times=None, tol=1e-6):
    """Pick the branch signs by brute force against the pole-plus-cut oracle.

    All eight sign combinations are evaluated at five log-spaced times; the
    unique combination matching the oracle within ``tol`` is returned.
    """
    from .oracles.spectral import alpha_spectral

    if roots is None:
        roots = solve_cubic(characteristic_cubic(model)).roots
    if coefficients is None:
        coefficients = _coefficients(model, roots)
    if times is None:
        unit = model.rate_unit
        times = np.logspace(-1, 1, 5) / unit
    times = np.asarray(times, dtype=float)
    ref = np.array([alpha_spectral(model, t) for t in times])
    hits = []
    for signs in itertools.product((-1, 1), repeat=3):
        with np.errstate(over="ignore", invalid="ignore"):
            a = _alpha(roots, coefficients, signs, times)
        err = np.max(np.abs(a - ref))
        if np.isfinite(err) and err <= tol:
            hits.append(signs)
    if len(hits) != 1:
        raise RuntimeError(f"branch-sign calibration found {len(hits)} matches at {model.describe()}")
    return hits[0]
