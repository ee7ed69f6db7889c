"""Product-integration solver for the memory-kernel equation.

Integrating ``a' = -i delta a - int_0^t K(t-s) a(s) ds`` once gives the
second-kind equation

    a(t) = 1 + int_0^t L(t - s) a(s) ds,   L(tau) = -i delta - K1(tau)

with ``K1 = int_0^tau K`` continuous (``~ sqrt(tau)``). ``a`` is taken
piecewise linear on a uniform grid and the moments of ``L`` against the two
hat functions are computed per subinterval: Gauss-Legendre in
``v = sqrt(tau)`` on the first subinterval (absorbing the ``sqrt`` branch
point exactly) and plain Gauss-Legendre elsewhere. Cost is O(n**2) dot
products. The scheme is second order; ``richardson=True`` combines steps
``h`` and ``h/2``.
"""
import math

import numpy as np
from scipy.interpolate import CubicSpline

from ..model import integrated_kernel
from ..survival import SurvivalTrace

__all__ = ["kernel_moments", "solve_volterra_grid", "solve_volterra"]

_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)


def kernel_moments(model, delta, h, n):
    """Hat-function moments ``(A_m, B_m)``, ``m = 0..n-1``.

    ``A_m = int_{mh}^{(m+1)h} L(tau) ((m+1)h - tau)/h dtau`` and
    ``B_m = int L(tau) (tau - mh)/h dtau``.
    """
    m = np.arange(n, dtype=float)
    # nodes on [0, 1] for the general subintervals
    xi = 0.5 * (_GL_X + 1.0)
    wi = 0.5 * _GL_W
    tau = (m[:, None] + xi) * h
    L = -1j * delta - integrated_kernel(model, tau.ravel()).reshape(tau.shape)
    A = h * (L * (1.0 - xi)) @ wi
    B = h * (L * xi) @ wi
    # first subinterval: tau = h v**2, dtau = 2 h v dv
    tau0 = h * xi * xi
    L0 = -1j * delta - integrated_kernel(model, tau0)
    jac = 2.0 * xi * wi
    A[0] = h * np.sum(L0 * (1.0 - xi * xi) * jac)
    B[0] = h * np.sum(L0 * xi * xi * jac)
    return A, B


def solve_volterra_grid(model, delta, h, n):
    """Amplitude on ``t_k = k h``, ``k = 0..n``."""
    A, B = kernel_moments(model, delta, h, n)
    a = np.empty(n + 1, dtype=complex)
    a[0] = 1.0
    Brev = B[::-1]
    Arev = A[::-1]
    denom = 1.0 - A[0]
    for k in range(1, n + 1):
        # a_k = 1 + sum_j B_{k-1-j} a_j + sum_j A_{k-1-j} a_{j+1}
        acc = 1.0 + np.dot(Brev[n - k:], a[:k])
        if k > 1:
            acc += np.dot(Arev[n - k:n - 1], a[1:k])
        a[k] = acc / denom
    return a


def solve_volterra(model, delta=None, times=None, dt=1e-3, richardson=True):
    """Survival trace from the memory-kernel equation.

    Parameters
    ----------
    model : SpectralModel
        Supplies the kernel; ``delta`` overrides its detuning if given.
    times : array_like
        Output times; off-grid values come from a cubic spline through the
        step grid.
    dt : float
        Step of the fine grid.
    richardson : bool
        Combine ``dt`` and ``2 dt`` solutions to cancel the ``O(dt**2)`` term.
    """
    if delta is None:
        delta = model.delta
    if not dt > 0:
        raise ValueError("dt must be > 0")
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or np.any(times < 0):
        raise ValueError("times must be a nonempty 1-d array of nonnegative values")
    t_max = float(times.max())
    n = max(2, int(math.ceil(t_max / dt - 1e-9)))
    if richardson and n % 2:
        n += 1
    fine = solve_volterra_grid(model, delta, dt, n)
    grid = dt * np.arange(n + 1)
    if richardson:
        coarse = solve_volterra_grid(model, delta, 2 * dt, n // 2)
        fine[::2] = (4.0 * fine[::2] - coarse) / 3.0
        grid = grid[::2]
        fine = fine[::2]
    return SurvivalTrace(times, CubicSpline(grid, fine)(times), "volterra")
