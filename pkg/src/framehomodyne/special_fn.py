"""Complex log-gamma and the frame-change scalars built on it.

Everything here is vectorised over numpy arrays and uses natural units
(c = 1).  The acceleration ``a`` is always strictly positive.
"""

import numpy as np

from .errors import DomainError

__all__ = [
    "log_gamma_complex",
    "gamma_complex",
    "log_sinh",
    "squeezing_parameter",
    "squeezing_cosh_sinh",
    "z_factor",
]

_HALF_LOG_2PI = 0.5 * np.log(2.0 * np.pi)

# B_{2n} / (2n (2n - 1)) for n = 1..10
_STIRLING = np.array([
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
])

# Stirling is used once |z| reaches this value; smaller arguments are
# shifted upward with lnG(z) = lnG(z + n) - sum log(z + k).
_SHIFT_TO = 16.0


def _check_poles(z):
    on_axis = (z.imag == 0.0) & (z.real <= 0.0) & (z.real == np.round(z.real))
    if np.any(on_axis):
        bad = z[on_axis].ravel()[0]
        raise DomainError(f"log_gamma_complex: pole of Gamma at z = {bad.real:g}")


def log_gamma_complex(z):
    """Principal branch of log Gamma(z) for complex z.

    Parameters
    ----------
    z : complex or array_like of complex
        Any point that is not a non-positive integer.

    Returns
    -------
    complex or ndarray
        ``log Gamma(z)`` with the imaginary part continuous away from the
        negative real axis (the same branch as ``scipy.special.loggamma``).

    Raises
    ------
    DomainError
        If any element of ``z`` is a pole of Gamma.
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_poles(z)

    # shift only where |z| is small (or Re z < 0) so that |z + n| >= 16
    need = np.sqrt(np.clip(_SHIFT_TO**2 - z.imag**2, 0.0, None)) - z.real
    need = np.where(z.real < 0, _SHIFT_TO - z.real, need)
    nshift = np.clip(np.ceil(need), 0, None).astype(int)
    w = z + nshift
    correction = np.zeros_like(z)
    idx = np.flatnonzero(nshift)
    if idx.size:
        zs, ns = z.ravel()[idx], nshift.ravel()[idx]
        acc = np.zeros_like(zs)
        for k in range(int(ns.max())):
            acc += np.where(k < ns, np.log(zs + k), 0.0)
        correction.ravel()[idx] = acc

    inv = 1.0 / w
    inv2 = inv * inv
    series = np.zeros_like(w)
    for c in _STIRLING[::-1]:
        series = series * inv2 + c
    series *= inv
    out = (w - 0.5) * np.log(w) - w + _HALF_LOG_2PI + series - correction
    return out[0] if scalar else out


def gamma_complex(z):
    """Gamma(z) as ``exp(log_gamma_complex(z))``."""
    return np.exp(log_gamma_complex(z))


def log_sinh(x):
    """log(sinh(x)) for x > 0 without overflow."""
    x = np.asarray(x, dtype=float)
    return x + np.log(-np.expm1(-2.0 * x)) - np.log(2.0)


def _check_positive(name, value):
    if np.any(np.asarray(value) <= 0):
        raise DomainError(f"{name} must be strictly positive")


def squeezing_parameter(omega, a):
    """Two-mode squeezing parameter r = atanh(exp(-pi omega / a)).

    Diverges logarithmically as omega -> 0+, so omega must be positive.
    """
    _check_positive("omega", omega)
    _check_positive("a", a)
    return np.arctanh(np.exp(-np.pi * np.asarray(omega, dtype=float) / a))


def squeezing_cosh_sinh(omega, a):
    """Return (cosh r, sinh r) computed directly from exp(-pi omega/a).

    Uses cosh r = 1/sqrt(1 - q^2), sinh r = q/sqrt(1 - q^2) with
    q = exp(-pi omega / a), which avoids evaluating atanh near 1.
    """
    _check_positive("omega", omega)
    _check_positive("a", a)
    x = np.pi * np.asarray(omega, dtype=float) / a
    q = np.exp(-x)
    denom = np.sqrt(-np.expm1(-2.0 * x))
    return 1.0 / denom, q / denom


def z_factor(omega, a, literal_gamma_argument=False):
    """Unruh normalisation factor Z_omega.

    ``Z = i sqrt(2 sinh(pi w/a)) / (2 pi sqrt(w)) * Gamma(1 - i w/a)`` so that
    ``|Z|^2 = 1 / (2 pi a)`` for every frequency.

    Parameters
    ----------
    omega : float or ndarray
        Positive frequencies.
    a : float
        Acceleration.
    literal_gamma_argument : bool
        Use ``Gamma(i - i w/a)`` instead of ``Gamma(1 - i w/a)``.  Only for
        comparing against that alternative reading; the magnitude law does
        not hold in this mode.
    """
    _check_positive("omega", omega)
    _check_positive("a", a)
    omega = np.asarray(omega, dtype=float)
    x = omega / a
    shift = 1j if literal_gamma_argument else 1.0
    # |sqrt(2 sinh)| * |Gamma| is O(1) but each factor alone over/underflows
    # for large x, so combine them in log space.
    log_mag = 0.5 * (np.log(2.0) + log_sinh(np.pi * x)) - np.log(2.0 * np.pi * np.sqrt(omega))
    lg = log_gamma_complex(shift - 1j * x)
    return 1j * np.exp(log_mag + lg)
