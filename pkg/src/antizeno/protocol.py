"""Repeated instantaneous interrogations.

Each interrogation projects back onto the initial state, so ``N`` equally
spaced interrogations within ``T`` give ``p(T) = p1 ** N`` with
``p1 = |alpha(T/N)|**2`` the single-interval survival probability.
"""
import math
from dataclasses import dataclass

import numpy as np

from .survival import SurvivalTrace, alpha_analytic

__all__ = [
    "MeasurementSchedule",
    "interrogated_survival",
    "interrupted_trace",
    "interrupted_p",
    "zeno_scan",
    "anti_zeno_optimum",
]


@dataclass(frozen=True)
class MeasurementSchedule:
    """``n_interruptions`` equally spaced resets within ``total_T``.

    ``n_interruptions = 1`` is plain uninterrupted evolution for ``total_T``.
    """

    total_T: float
    n_interruptions: int

    def __post_init__(self):
        if not self.total_T > 0:
            raise ValueError("total_T must be > 0")
        if int(self.n_interruptions) != self.n_interruptions or self.n_interruptions < 1:
            raise ValueError("n_interruptions must be an integer >= 1")

    @property
    def interval(self):
        return self.total_T / self.n_interruptions


def _interval_p(exp, tau, literal_exponent):
    a = abs(alpha_analytic(exp, tau))
    # literal form raises |alpha|, not |alpha|**2, to the N
    return min(a if literal_exponent else a * a, 1.0)


def interrogated_survival(exp, sched, literal_exponent=False):
    """Survival probability after the schedule, ``(|alpha(T/N)|**2) ** N``.

    ``literal_exponent=True`` returns ``|alpha(T/N)| ** N`` instead, for
    comparison with figures drawn under that convention.
    """
    p1 = _interval_p(exp, sched.interval, literal_exponent)
    if p1 == 0.0:
        return 0.0
    return float(math.exp(sched.n_interruptions * math.log(p1)))


def interrupted_p(exp, sched, t, literal_exponent=False):
    """Survival probability at arbitrary times ``0 <= t <= T`` under the schedule."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(t > sched.total_T * (1 + 1e-12)):
        raise ValueError("t must lie in [0, T]")
    tau = sched.interval
    m = np.minimum(np.floor(t / tau), sched.n_interruptions - 1)
    p1 = _interval_p(exp, tau, literal_exponent)
    a = np.abs(alpha_analytic(exp, np.maximum(t - m * tau, 0.0)))
    inside = a if literal_exponent else a * a
    return p1 ** m * inside


def interrupted_trace(exp, sched, samples_per_interval=20):
    """Sawtooth survival curve ``p1**m * |alpha(t - m T/N)|**2`` on interval ``m``.

    Samples ``t = 0`` and ``samples_per_interval`` points per interval, the
    last of which is the reset instant; the final value equals
    :func:`interrogated_survival`. ``SurvivalTrace.alpha`` holds
    ``sqrt(p)`` (real), since phase is lost at each reset.
    """
    if int(samples_per_interval) < 1:
        raise ValueError("samples_per_interval must be >= 1")
    k = int(samples_per_interval)
    N, tau = sched.n_interruptions, sched.interval
    local = tau * np.arange(1, k + 1) / k
    a_local = np.abs(alpha_analytic(exp, local)) ** 2
    p1 = a_local[-1]
    m = np.arange(N)
    p = (p1 ** m)[:, None] * a_local[None, :]
    times = (m[:, None] * tau + local[None, :]).ravel()
    p = p.ravel()
    # last sample of each interval must match the reset value exactly
    p[k - 1::k] = p1 ** (m + 1)
    times = np.concatenate([[0.0], times])
    p = np.concatenate([[1.0], p])
    return SurvivalTrace(times, np.sqrt(p).astype(complex), "analytic")


def zeno_scan(exp, T, n_values, literal_exponent=False):
    """``[(N, p(T; N)), ...]`` for each interrogation count."""
    n_values = [int(n) for n in n_values]
    if any(n < 1 for n in n_values):
        raise ValueError("interrogation counts must be >= 1")
    return [(n, interrogated_survival(exp, MeasurementSchedule(T, n), literal_exponent))
            for n in n_values]


def anti_zeno_optimum(fit, T):
    """Best interrogation count for a power-law tail ``p = (tau/t)**nu``.

    Minimising ``(N tau / T)**(N nu)`` over ``N`` gives ``N = T / (e tau)``
    and ``p_min = exp(-nu T / (e tau))``. Refuses ``T <= tau``.
    """
    if not fit.nu > 0:
        raise ValueError("tail exponent must be positive")
    if not T > fit.tau:
        raise ValueError(f"T={T!r} must exceed the tail time scale tau={fit.tau!r}")
    n_opt = T / (math.e * fit.tau)
    return n_opt, math.exp(-fit.nu * n_opt)
