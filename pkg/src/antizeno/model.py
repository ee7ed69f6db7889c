"""Continuum models, their resolvent and the characteristic cubic.

Both models share one closed form. Writing ``x = sqrt(-i z)`` (principal
root, so ``Re x >= 0`` on the physical sheet)::

    H(z) = z + i*delta - i*G / (sb + x)

with

* photodetachment: ``sb = sqrt(beta)``, ``G = A*sqrt(beta)``
* band edge:       ``sb = 0``,          ``G = gamma**1.5``

Zeros of ``H`` satisfy ``(x**2 + delta)(sb + x) - G = 0``, the monic cubic
``y**3 + sb*y**2 + delta*y + (sb*delta - G)``. The continuum (poles
``z = -i*omega`` of the resolvent integrand) sits on the negative imaginary
``z`` axis, which is exactly where the principal square root puts its cut.

Units: photodetachment rates in units of ``A``, band edge in units of
``gamma``; times in the inverse unit. Both scales are kept as fields so the
formulas stay dimensionally honest, but 1 is the intended value.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .special import erfcx_c

__all__ = [
    "Kind",
    "SpectralModel",
    "CubicPolynomial",
    "RootTriple",
    "PoleKind",
    "Pole",
    "PoleSet",
    "coupling_density",
    "resolvent",
    "resolvent_derivative",
    "threshold_shift",
    "characteristic_cubic",
    "solve_cubic",
    "memory_kernel",
    "integrated_kernel",
    "find_poles",
]

_SQRT_PI = math.sqrt(math.pi)
_E_MINUS_I_PI_4 = complex(math.cos(math.pi / 4), -math.sin(math.pi / 4))


class Kind(enum.Enum):
    PHOTODETACHMENT = "photodetachment"
    BAND_EDGE = "band_edge"


@dataclass(frozen=True)
class SpectralModel:
    """Parameters of one of the two near-threshold continua.

    Use :meth:`photodetachment` or :meth:`band_edge` rather than the raw
    constructor.
    """

    kind: Kind
    delta: float
    beta: float | None = None
    A: float = 1.0
    gamma: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.delta):
            raise ValueError("detuning must be finite")
        if self.kind is Kind.PHOTODETACHMENT:
            if self.beta is None or not self.beta > 0:
                raise ValueError(f"width beta must be > 0, got {self.beta!r}")
            if not self.A > 0:
                raise ValueError(f"rate A must be > 0, got {self.A!r}")
        elif self.kind is Kind.BAND_EDGE:
            if not self.gamma > 0:
                raise ValueError(f"gamma must be > 0, got {self.gamma!r}")
        else:
            raise ValueError(f"unknown model kind {self.kind!r}")

    @classmethod
    def photodetachment(cls, beta, delta, A=1.0):
        return cls(Kind.PHOTODETACHMENT, float(delta), beta=float(beta), A=float(A))

    @classmethod
    def band_edge(cls, delta, gamma=1.0):
        return cls(Kind.BAND_EDGE, float(delta), gamma=float(gamma))

    def with_delta(self, delta):
        return SpectralModel(self.kind, float(delta), self.beta, self.A, self.gamma)

    @property
    def sqrt_beta(self) -> float:
        """``sqrt(beta)``; zero for the band edge (its ``beta -> 0`` limit)."""
        return math.sqrt(self.beta) if self.kind is Kind.PHOTODETACHMENT else 0.0

    @property
    def strength(self) -> float:
        """``A*sqrt(beta)`` or ``gamma**1.5``, the numerator of the self-energy."""
        if self.kind is Kind.PHOTODETACHMENT:
            return self.A * math.sqrt(self.beta)
        return self.gamma ** 1.5

    @property
    def rate_unit(self) -> float:
        return self.A if self.kind is Kind.PHOTODETACHMENT else self.gamma

    def describe(self) -> str:
        if self.kind is Kind.PHOTODETACHMENT:
            return f"photodetachment(A={self.A!r}, beta={self.beta!r}, delta={self.delta!r})"
        return f"band_edge(gamma={self.gamma!r}, delta={self.delta!r})"


# -- coupling density and resolvent -----------------------------------------


def coupling_density(model, omega):
    """Spectral density ``|g(omega)|**2`` of the continuum.

    Photodetachment: ``(A/pi) sqrt(beta*omega) / (omega + beta)``.
    Band edge: ``gamma**1.5 / (pi sqrt(omega))``, which is undefined at
    ``omega = 0``.
    """
    scalar = np.ndim(omega) == 0
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0) or np.any(np.isnan(w)):
        raise ValueError("omega must be >= 0")
    if model.kind is Kind.PHOTODETACHMENT:
        b = model.beta
        out = model.A / math.pi * np.sqrt(b * w) / (w + b)
    else:
        if np.any(w == 0):
            raise ValueError("band-edge density is singular at omega = 0")
        out = model.gamma ** 1.5 / (math.pi * np.sqrt(w))
    return float(out) if scalar else out


def _on_cut(z):
    return (z.real == 0) & (z.imag <= 0)


def _sheet_root(z, side, sheet):
    """``sqrt(-i z)`` on the requested sheet, honouring one-sided cut limits."""
    z = np.asarray(z, dtype=complex)
    cut = _on_cut(z)
    if np.any(cut) and side is None:
        raise ValueError("z lies on the continuum cut (negative imaginary axis); pass side='right' or 'left'")
    x = np.sqrt(-1j * z)
    if side is not None and np.any(cut):
        if side not in ("right", "left"):
            raise ValueError(f"side must be 'right' or 'left', got {side!r}")
        s = np.sqrt(-z.imag)
        # approaching from Re z > 0: -iz -> -s - i0, root -> -i sqrt(s)
        x = np.where(cut, -1j * s if side == "right" else 1j * s, x)
    if sheet == 2:
        x = -x
    elif sheet != 1:
        raise ValueError("sheet must be 1 or 2")
    return x


def resolvent(model, z, side=None, sheet=1):
    """Closed-form resolvent ``H(z)`` (its reciprocal is the Laplace
    transform of the survival amplitude).

    Parameters
    ----------
    model : SpectralModel
    z : complex or array_like
    side : {None, 'right', 'left'}
        One-sided limit for points on the cut. Required there.
    sheet : {1, 2}
        ``1`` is the physical sheet; ``2`` continues through the cut and is
        where decaying (Wigner-Weisskopf) poles live.
    """
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    x = _sheet_root(z, side, sheet)
    sb, G = model.sqrt_beta, model.strength
    if model.kind is Kind.BAND_EDGE and np.any(x == 0):
        raise ValueError("band-edge resolvent diverges at the branch point z = 0")
    out = z + 1j * model.delta - 1j * G / (sb + x)
    return complex(out) if scalar else out


def resolvent_derivative(model, z, side=None, sheet=1):
    """``dH/dz``; uses ``dx/dz = -i / (2x)``."""
    scalar = np.ndim(z) == 0
    x = _sheet_root(np.asarray(z, dtype=complex), side, sheet)
    sb, G = model.sqrt_beta, model.strength
    out = 1.0 + G / (2.0 * x * (sb + x) ** 2)
    return complex(out) if scalar else out


def threshold_shift(model) -> float:
    """Detuning at which the bound state meets the continuum edge.

    ``integral |g|**2 / omega``: ``A`` for photodetachment (for every beta),
    ``inf`` for the band edge, whose density diverges at the edge.
    """
    if model.kind is Kind.PHOTODETACHMENT:
        return model.A
    return math.inf


# -- the characteristic cubic -------------------------------------------------


@dataclass(frozen=True)
class CubicPolynomial:
    """Monic real cubic ``y**3 + c2*y**2 + c1*y + c0``."""

    c2: float
    c1: float
    c0: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.c2, self.c1, self.c0)):
            raise ValueError("cubic coefficients must be finite")

    def __call__(self, y):
        return ((y + self.c2) * y + self.c1) * y + self.c0

    def derivative(self, y):
        return (3.0 * y + 2.0 * self.c2) * y + self.c1

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.c0), abs(self.c1), abs(self.c2))


@dataclass(frozen=True)
class RootTriple:
    roots: np.ndarray
    classification: str  # "three-real" or "one-real-plus-conjugate-pair"
    residual: float


def characteristic_cubic(model) -> CubicPolynomial:
    sb = model.sqrt_beta
    return CubicPolynomial(sb, model.delta, sb * model.delta - model.strength)


def _horner_ld(coeffs, y):
    c2, c1, c0 = coeffs
    p = ((y + c2) * y + c1) * y + c0
    dp = (3 * y + 2 * c2) * y + c1
    return p, dp


def _polish(y, coeffs, max_iter=6):
    """Newton polish in extended precision; stops once the residual stalls."""
    best = y
    best_res = abs(_horner_ld(coeffs, y)[0])
    for _ in range(max_iter):
        p, dp = _horner_ld(coeffs, best)
        if dp == 0 or best_res == 0:
            break
        cand = best - p / dp
        res = abs(_horner_ld(coeffs, cand)[0])
        if res >= best_res:
            break
        best, best_res = cand, res
    return best


def solve_cubic(p: CubicPolynomial) -> RootTriple:
    """All three roots of a real monic cubic.

    Trigonometric form when the discriminant admits three real roots,
    Cardano plus deflation otherwise, then Newton polish in ``longdouble``.
    A complex pair is polished once and mirrored, so it is exactly
    conjugate.
    """
    a, b, c = float(p.c2), float(p.c1), float(p.c0)
    coeffs_ld = tuple(np.longdouble(v) for v in (a, b, c))
    shift = a / 3.0
    pp = b - a * a / 3.0
    qq = 2.0 * a ** 3 / 27.0 - a * b / 3.0 + c
    disc = (qq / 2.0) ** 2 + (pp / 3.0) ** 3

    if disc <= 0 and pp < 0:
        m = 2.0 * math.sqrt(-pp / 3.0)
        arg = max(-1.0, min(1.0, (3.0 * qq / pp) / m))  # split to avoid underflow in pp*m
        theta = math.acos(arg) / 3.0
        xs = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]
        ys = [_polish(np.longdouble(x - shift), coeffs_ld) for x in xs]
        roots = np.array(sorted(float(y) for y in ys), dtype=complex)
        kind = "three-real"
    else:
        sq = math.sqrt(max(disc, 0.0))
        big = abs(qq) / 2.0 + sq
        u = -math.copysign(1.0, qq) * float(np.cbrt(big)) if qq != 0 else float(np.cbrt(sq))
        x = u - pp / (3.0 * u) if u != 0 else 0.0
        r = _polish(np.longdouble(x - shift), coeffs_ld)
        rf = float(r)
        s = -(a + rf)  # sum of the remaining pair
        prod = -c / rf if abs(rf) > 1e-8 * max(1.0, abs(s)) else b - rf * s
        d = prod - s * s / 4.0
        if d > 0:
            z0 = np.clongdouble(complex(s / 2.0, math.sqrt(d)))
            z0 = _polish(z0, coeffs_ld)
            zc = complex(z0)
            if zc.imag < 0:
                zc = zc.conjugate()
            roots = np.array([rf, zc, zc.conjugate()], dtype=complex)
            kind = "one-real-plus-conjugate-pair"
        else:
            # rounding pushed a near-double pair onto the real axis
            h = math.sqrt(-d)
            ys = [r] + [_polish(np.longdouble(s / 2.0 + e), coeffs_ld) for e in (h, -h)]
            roots = np.array(sorted(float(y) for y in ys), dtype=complex)
            kind = "three-real"

    res = max(
        float(abs(_horner_ld(coeffs_ld, np.clongdouble(y))[0])) for y in roots
    )
    return RootTriple(roots=roots, classification=kind, residual=res)


# -- memory kernel ----------------------------------------------------------


def memory_kernel(model, tau):
    """Time-domain self-energy ``K(tau) = int |g|**2 exp(-i omega tau) d omega``.

    The survival amplitude obeys ``a' = -i delta a - int_0^t K(t-s) a(s) ds``.
    Diverges like ``tau**-0.5`` at the origin.
    """
    scalar = np.ndim(tau) == 0
    t = np.asarray(tau, dtype=float)
    if np.any(~(t > 0)):
        raise ValueError("tau must be > 0")
    if model.kind is Kind.BAND_EDGE:
        out = model.gamma ** 1.5 * _E_MINUS_I_PI_4 / np.sqrt(math.pi * t)
    else:
        A, b = model.A, model.beta
        sb = math.sqrt(b)
        lead = _SQRT_PI * _E_MINUS_I_PI_4 / np.sqrt(t)  # sqrt(pi / (i tau))
        out = A / math.pi * sb * (lead - math.pi * sb * erfcx_c(np.sqrt(1j * b * t)))
    return complex(out) if scalar else np.asarray(out, dtype=complex)


def integrated_kernel(model, tau):
    """``K1(tau) = int_0^tau K``; continuous, ``~ sqrt(tau)`` near zero.

    Photodetachment: ``i A (erfcx(sqrt(i beta tau)) - 1)``, which tends to
    ``-i A`` (the threshold shift) at long times.
    """
    scalar = np.ndim(tau) == 0
    t = np.asarray(tau, dtype=float)
    if np.any(t < 0):
        raise ValueError("tau must be >= 0")
    if model.kind is Kind.BAND_EDGE:
        out = 2.0 * model.gamma ** 1.5 * _E_MINUS_I_PI_4 * np.sqrt(t / math.pi)
    else:
        out = 1j * model.A * (erfcx_c(np.sqrt(1j * model.beta * t)) - 1.0)
    return complex(out) if scalar else np.asarray(out, dtype=complex)


# -- poles --------------------------------------------------------------------


class PoleKind(enum.Enum):
    WIGNER_WEISSKOPF = "wigner-weisskopf"
    BOUND = "bound"


@dataclass(frozen=True)
class Pole:
    location: complex
    residue: complex
    kind: PoleKind
    sheet: int


@dataclass(frozen=True)
class PoleSet:
    """Zeros of ``H``. Bound poles live on the physical sheet and enter the
    pole-plus-cut decomposition; Wigner-Weisskopf poles are on the second
    sheet, reached by crossing the cut from ``Re z > 0``."""

    poles: tuple = ()
    cut_axis: str = field(default="negative imaginary z axis")

    @property
    def bound(self):
        return [p for p in self.poles if p.kind is PoleKind.BOUND]

    @property
    def resonances(self):
        return [p for p in self.poles if p.kind is PoleKind.WIGNER_WEISSKOPF]


def _newton_zero(model, z0, sheet, max_iter=50):
    z = complex(z0)
    for _ in range(max_iter):
        h = resolvent(model, z, sheet=sheet)
        dz = h / resolvent_derivative(model, z, sheet=sheet)
        z -= dz
        if abs(dz) <= 1e-15 * max(1.0, abs(z)):
            break
    return z


def find_poles(model, roots=None) -> PoleSet:
    """Bound and Wigner-Weisskopf zeros of the resolvent.

    Seeds come from ``z = i y**2`` over the cubic roots ``y``. A root with
    ``Re y > 0`` is a physical-sheet zero (only real positive roots occur:
    the bound state); a root with ``Re y < 0, Im y < 0`` is the decaying
    resonance on the second sheet. Each seed is Newton-refined on its sheet.
    """
    if roots is None:
        roots = solve_cubic(characteristic_cubic(model)).roots
    poles = []
    for y in roots:
        y = complex(y)
        if y.real > 0 and abs(y.imag) <= 1e-12 * abs(y):
            Y = y.real
            z = _newton_zero(model, 1j * Y * Y, sheet=1)
            x = np.sqrt(-1j * z)
            if x.real < 0 or abs(resolvent(model, z)) > 1e-8 * max(1.0, abs(z)):
                continue
            kind = PoleKind.BOUND if abs(z.real) <= 1e-10 * max(1.0, abs(z)) else PoleKind.WIGNER_WEISSKOPF
            poles.append(Pole(z, 1.0 / resolvent_derivative(model, z), kind, 1))
        elif y.real < 0 and y.imag < 0:
            z = _newton_zero(model, 1j * y * y, sheet=2)
            if z.real < 0 and abs(resolvent(model, z, sheet=2)) <= 1e-8 * max(1.0, abs(z)):
                res = 1.0 / resolvent_derivative(model, z, sheet=2)
                poles.append(Pole(z, res, PoleKind.WIGNER_WEISSKOPF, 2))
    return PoleSet(tuple(poles))
