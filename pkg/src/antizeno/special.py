"""Complex error functions.

All three functions are thin, vectorised layers over the Faddeeva function
``w(z) = exp(-z**2) * erfc(-1j*z)``. The Faddeeva kernel itself is
``scipy.special.wofz`` (the Poppe/Wijers + Zaghloul algorithm set of the
MIT Faddeeva package, ~1e-13 relative accuracy); this module adds the
reflection bookkeeping and the overflow policy that the survival amplitude
needs.

The only region switch owned here is the half-plane split at ``Re z = 0``:

* ``faddeeva_w`` evaluates the right half plane and reflects the left one
  through ``w(-conj(z)) = conj(w(z))``, which makes that symmetry exact.
* ``erfc_c`` uses ``exp(-z**2) * w(iz)`` for ``Re z >= 0`` and
  ``2 - erfc(-z)`` otherwise.

``erfcx_c`` never forms ``exp(z**2)`` explicitly and is the form to use for
large arguments.
"""
import numpy as np
from scipy.special import wofz

__all__ = ["faddeeva_w", "erfc_c", "erfcx_c", "REFLECTION_RE_THRESHOLD"]

#: Arguments with real part below this value are evaluated by reflection.
REFLECTION_RE_THRESHOLD = 0.0


def _as_complex(z):
    return np.asarray(z, dtype=complex)


def _unwrap(out, scalar):
    return complex(out) if scalar else out


def faddeeva_w(z):
    """Faddeeva function ``w(z) = exp(-z**2) erfc(-iz)``.

    Parameters
    ----------
    z : complex or array_like
        Finite argument(s).

    Returns
    -------
    complex or ndarray
        ``w(z)``, same shape as `z`. In the lower half plane ``w`` grows like
        ``2 exp(-z**2)`` and saturates to ``inf`` once that overflows.
    """
    scalar = np.ndim(z) == 0
    z = _as_complex(z)
    left = z.real < REFLECTION_RE_THRESHOLD
    zr = np.where(left, -np.conj(z), z)
    with np.errstate(over="ignore", invalid="ignore"):
        out = wofz(zr)
    out = np.where(left, np.conj(out), out)
    return _unwrap(out, scalar)


def erfcx_c(z):
    """Scaled complementary error function ``exp(z**2) erfc(z) = w(iz)``.

    Bounded by ``1`` in modulus on the closed right half plane; behaves like
    ``1 / (sqrt(pi) z)`` for large ``|z|`` there.
    """
    scalar = np.ndim(z) == 0
    out = faddeeva_w(1j * _as_complex(z))
    return _unwrap(out, scalar)


def erfc_c(z):
    """Complementary error function of a complex argument.

    For ``Re z >= 0`` this is ``exp(-z**2) * w(iz)``; the prefactor can
    overflow when ``|Im z|`` is large, in which case the affected components
    come back as ``+-inf`` (no exception is raised). Use :func:`erfcx_c`
    whenever the product ``exp(z**2) erfc(z)`` is what is actually needed.
    """
    scalar = np.ndim(z) == 0
    z = _as_complex(z)
    left = z.real < REFLECTION_RE_THRESHOLD
    zr = np.where(left, -z, z)
    wz = faddeeva_w(1j * zr)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        out = np.exp(-zr * zr) * wz
        # inf * finite can leave nan components; one exp saturates cleanly
        bad = ~np.isfinite(out)
        if np.any(bad):
            out = np.where(bad, np.exp(np.log(wz) - zr * zr), out)
    out = np.where(left, 2.0 - out, out)
    return _unwrap(out, scalar)
