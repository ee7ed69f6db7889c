"""Discretised-continuum (star bath) Schrodinger evolution.

The continuum is cut into ``n_modes`` modes on a uniform midpoint grid in
``u = sqrt(omega)``; the single-excitation Hamiltonian is then the arrowhead
matrix ``[[delta, g], [g, diag(omega)]]``.

Two propagators are offered:

``exact``
    Eigenvalues from the secular equation
    ``lam - delta - sum g_j**2 / (lam - omega_j) = 0`` (one root per gap,
    located by safeguarded Newton in a variable shifted to the nearer pole),
    giving ``alpha(t) = sum_k w_k exp(-i lam_k t)`` with
    ``w_k = 1 / f'(lam_k)``. Unitary up to rounding and O(n**2).
``rk4``
    Classical fixed-step Runge-Kutta on the full state vector, with a norm
    drift guard. Only practical when ``omega_max * dt`` is small.

Modes above ``u_max`` are not discarded silently: their static level shift
``int_{u_max**2}^inf |g|**2 / omega`` is kept as ``ModeBath.tail_shift`` and
folded into the detuning, which otherwise dominates the truncation error
(the band-edge density integrates to infinity).
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ..model import Kind, coupling_density
from ..survival import SurvivalTrace

__all__ = ["OracleConfig", "ModeBath", "discretize_bath", "evolve_modes", "NormDriftError"]


class NormDriftError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    n_modes: int = 4000
    u_max: float = 40.0
    dt: float = 1e-4
    t_max: float = 20.0
    volterra_dt: float = 1e-3

    def __post_init__(self):
        for name in ("n_modes", "u_max", "dt", "t_max", "volterra_dt"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class ModeBath:
    u_nodes: np.ndarray
    couplings: np.ndarray
    omega: np.ndarray
    tail_shift: float = 0.0


def _tail_shift(model, w_max):
    if model.kind is Kind.BAND_EDGE:
        return 2.0 * model.gamma ** 1.5 / (math.pi * math.sqrt(w_max))
    return 2.0 * model.A / math.pi * math.atan(math.sqrt(model.beta / w_max))


def discretize_bath(model, cfg, tail_correction=True):
    """Midpoint grid ``u_j = (j - 1/2) du`` with ``g_j**2 = |g(u_j**2)|**2 2 u_j du``."""
    if not isinstance(cfg, OracleConfig):
        raise TypeError("cfg must be an OracleConfig")
    if cfg.u_max ** 2 < 1e3 * max(abs(model.delta), 1.0):
        warnings.warn(
            f"u_max={cfg.u_max} is short of the sqrt(1e3 max(|delta|, 1)) truncation guidance",
            stacklevel=2,
        )
    du = cfg.u_max / cfg.n_modes
    u = (np.arange(1, cfg.n_modes + 1) - 0.5) * du
    omega = u * u
    g2 = coupling_density(model, omega) * 2.0 * u * du
    shift = _tail_shift(model, cfg.u_max ** 2) if tail_correction else 0.0
    return ModeBath(u, np.sqrt(g2), omega, shift)


# -- exact propagation through the secular equation ---------------------------


def _secular_roots(d, g2, delta, block=256, max_iter=100):
    """Eigenvalues and ``|<0|k>|**2`` of the arrowhead matrix.

    ``d`` must be strictly increasing. Returns ``(lam, weights)`` with
    ``n + 1`` entries each.
    """
    n = d.size
    gsum = float(np.sum(g2))
    lo_edge = min(delta, d[0]) - math.sqrt(gsum) - 1.0
    hi_edge = max(delta, d[-1]) + math.sqrt(gsum) + 1.0
    left = np.concatenate([[lo_edge], d])
    right = np.concatenate([d, [hi_edge]])

    def f_and_df(lam_shift, origin, dd):
        r = g2 / (lam_shift[:, None] - dd)
        f = origin + lam_shift - delta - np.sum(r, axis=1)
        df = 1.0 + np.sum(r * r / g2, axis=1)
        return f, df

    lam = np.empty(n + 1)
    wts = np.empty(n + 1)
    for s in range(0, n + 1, block):
        idx = np.arange(s, min(s + block, n + 1))
        L, R = left[idx], right[idx]
        mid = 0.5 * (L + R)
        fm = mid - delta - np.sum(g2 / (mid[:, None] - d), axis=1)
        # shift to the pole nearest the root (root left of mid when f(mid) > 0)
        use_left = (fm > 0) & (idx > 0)
        use_left |= idx == n
        use_left &= idx > 0
        origin = np.where(use_left, L, R)
        origin[idx == 0] = d[0]
        origin[idx == n] = d[-1]
        dd = (d[None, :] - origin[:, None])
        lo = L - origin
        hi = R - origin
        # tighten to the half that holds the root
        lo = np.where((fm <= 0) & (idx > 0) & (idx < n), mid - origin, lo)
        hi = np.where((fm > 0) & (idx > 0) & (idx < n), mid - origin, hi)
        x = 0.5 * (lo + hi)
        for _ in range(max_iter):
            f, df = f_and_df(x, origin, dd)
            lo = np.where(f < 0, x, lo)
            hi = np.where(f > 0, x, hi)
            step = f / df
            xn = x - step
            bad = ~((xn > lo) & (xn < hi))
            xn = np.where(bad, 0.5 * (lo + hi), xn)
            done = np.abs(xn - x) <= 4 * np.finfo(float).eps * np.maximum(np.abs(xn), 1e-300)
            x = xn
            if done.all():
                break
        f, df = f_and_df(x, origin, dd)
        lam[idx] = origin + x
        wts[idx] = 1.0 / df
    return lam, wts


def _evolve_exact(bath, delta_eff, times, want_norm):
    g2 = bath.couplings ** 2
    if np.any(g2 == 0):
        # decoupled modes never see the level; drop them
        keep = g2 > 0
        bath = ModeBath(bath.u_nodes[keep], bath.couplings[keep], bath.omega[keep], bath.tail_shift)
        g2 = g2[keep]
    if g2.size == 0:
        alpha = np.exp(-1j * delta_eff * times)
        return alpha, np.ones_like(times)
    lam, w = _secular_roots(bath.omega, g2, delta_eff)
    phase = np.exp(-1j * np.outer(times, lam))
    alpha = phase @ w
    norm = None
    if want_norm:
        # b_j(t) = g_j sum_k w_k exp(-i lam_k t) / (lam_k - omega_j)
        inv = 1.0 / (lam[None, :] - bath.omega[:, None])
        b = (phase * w) @ inv.T * bath.couplings
        norm = np.abs(alpha) ** 2 + np.sum(np.abs(b) ** 2, axis=1)
    return alpha, norm


# -- fixed-step RK4 -------------------------------------------------------------


def _evolve_rk4(bath, delta_eff, times, dt, drift_tol):
    g, w = bath.couplings, bath.omega
    y = np.zeros(g.size + 1, dtype=complex)
    y[0] = 1.0

    def rhs(y):
        out = np.empty_like(y)
        out[0] = -1j * delta_eff * y[0] - 1j * np.dot(g, y[1:])
        out[1:] = -1j * w * y[1:] - 1j * g * y[0]
        return out

    alpha = np.empty(times.size, dtype=complex)
    norm = np.empty(times.size)
    t = 0.0
    for i, target in enumerate(times):
        span = target - t
        n = int(math.ceil(span / dt - 1e-12)) if span > 0 else 0
        h = span / n if n else 0.0
        for _ in range(n):
            k1 = rhs(y)
            k2 = rhs(y + 0.5 * h * k1)
            k3 = rhs(y + 0.5 * h * k2)
            k4 = rhs(y + h * k3)
            y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        t = target
        alpha[i] = y[0]
        norm[i] = float(np.vdot(y, y).real)
        if abs(norm[i] - 1.0) > drift_tol:
            raise NormDriftError(f"norm drifted to {norm[i]!r} at t={t!r}; reduce dt")
    return alpha, norm


def evolve_modes(bath, delta, times, method="exact", dt=1e-4, drift_tol=1e-6, return_norm=False):
    """Survival amplitude of the discretised model at ``times``.

    Parameters
    ----------
    bath : ModeBath
    delta : float
        Physical detuning; ``bath.tail_shift`` is subtracted internally.
    times : array_like
        Increasing, nonnegative output times.
    method : {'exact', 'rk4'}
    dt : float
        RK4 step.
    drift_tol : float
        RK4 aborts with :class:`NormDriftError` beyond this norm error.
    return_norm : bool
        Also return ``|alpha|**2 + sum |b_j|**2`` at each output time.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or np.any(times < 0) or np.any(np.diff(times) <= 0):
        raise ValueError("times must be nonnegative and strictly increasing")
    d_eff = float(delta) - bath.tail_shift
    if method == "exact":
        alpha, norm = _evolve_exact(bath, d_eff, times, return_norm)
    elif method == "rk4":
        alpha, norm = _evolve_rk4(bath, d_eff, times, dt, drift_tol)
    else:
        raise ValueError(f"unknown method {method!r}")
    trace = SurvivalTrace(times, alpha, "modes")
    return (trace, norm) if return_norm else trace
