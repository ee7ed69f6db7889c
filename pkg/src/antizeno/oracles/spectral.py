"""Pole-plus-cut evaluation of the inverse Laplace transform.

Deforming the Bromwich contour onto the continuum cut (negative imaginary
``z`` axis, ``z = -i s``) gives

    alpha(t) = sum_bound Res(1/H, z_b) exp(z_b t) + int_0^inf rho(s) exp(-i s t) ds

with ``rho(s) = (1 / 2 pi) [1/H_right - 1/H_left] = Re(1/H_right(-i s)) / pi``.
The cut integral is done in ``u = sqrt(s)``, where the integrand is a smooth
rational function times ``exp(-i u**2 t)``, by adaptive Gauss-Kronrod on
``[0, sqrt(S)]`` and a Fourier-weighted QUADPACK (QAWF) tail on ``[S, inf)``.
Nothing here touches the cubic-root/erfcx machinery except the root seeds
for the bound pole.
"""
import math

import numpy as np
from scipy import integrate

from ..model import find_poles, resolvent
from ._quad import QuadratureBudgetError, gk_adaptive

__all__ = ["cut_density", "alpha_spectral", "completeness", "alpha_resonance_part",
           "QuadratureBudgetError"]


def cut_density(model, s):
    """Continuum spectral weight ``rho(s)`` of the initial state (``s > 0``)."""
    scalar = np.ndim(s) == 0
    s = np.asarray(s, dtype=float)
    h = resolvent(model, 1j * (-s), side="right")
    out = (1.0 / h).real / math.pi
    return float(out) if scalar else out


def _split_point(model):
    return 5.0 * (model.rate_unit + abs(model.delta) + (model.beta or 0.0))


def _u_integrand(model, t):
    def f(u):
        w = 2.0 * u * cut_density(model, u * u)
        return w * np.exp(-1j * (u * u) * t) if t else w.astype(complex)
    return f


def _cut_integral(model, t, epsabs, max_panels):
    S = _split_point(model)
    U = math.sqrt(S)
    # s-panels no longer than pi / (4 max(t, 1)) keep each panel sub-wavelength
    n_s = max(8, int(math.ceil(S * 4.0 * max(t, 1.0) / math.pi)))
    bp = np.sqrt(np.linspace(0.0, S, n_s + 1))
    bp[-1] = U
    head, err = gk_adaptive(_u_integrand(model, t), bp, epsabs=epsabs, epsrel=0.0,
                            max_panels=max_panels)
    rho = lambda s: cut_density(model, s)
    opts = dict(epsabs=epsabs * 0.1, limit=500)
    if t == 0:
        tail, terr = integrate.quad(rho, S, np.inf, **opts)
        tail = complex(tail)
    else:
        cos_part, e1 = integrate.quad(rho, S, np.inf, weight="cos", wvar=t, limlst=200, **opts)
        sin_part, e2 = integrate.quad(rho, S, np.inf, weight="sin", wvar=t, limlst=200, **opts)
        tail, terr = complex(cos_part, -sin_part), e1 + e2
    return head + tail, err + terr


def alpha_spectral(model, t, epsabs=1e-11, max_panels=2_000_000, poles=None):
    """Survival amplitude from bound poles plus the continuum cut.

    Raises
    ------
    QuadratureBudgetError
        If ``t`` is so large that the oscillatory head integral cannot meet
        ``epsabs`` within ``max_panels``; carries the achieved estimate.
    """
    t = float(t)
    if not t >= 0:
        raise ValueError("t must be >= 0")
    if poles is None:
        poles = find_poles(model)
    val, _ = _cut_integral(model, t, epsabs, max_panels)
    for p in poles.bound:
        val += p.residue * np.exp(p.location * t)
    return complex(val)


def completeness(model, epsabs=1e-12):
    """Sum rule ``sum of bound residues + int rho``; equals 1 for an exact model."""
    total, _ = _cut_integral(model, 0.0, epsabs, 2_000_000)
    for p in find_poles(model).bound:
        total += p.residue
    return complex(total)


def alpha_resonance_part(model, t):
    """``sum Res exp(z t)`` over second-sheet Wigner-Weisskopf poles."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    for p in find_poles(model).resonances:
        out = out + p.residue * np.exp(p.location * t)
    return out
