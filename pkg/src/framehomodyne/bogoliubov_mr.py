"""Minkowski wave-packet modes in the single-frequency Unruh and Rindler bases.

A Minkowski plane-wave operator decomposes over Unruh modes with kernel

    A_{k w} = i sqrt(2 sinh(pi w/a)) / (2 pi sqrt(w k)) Gamma(1 - i w/a) (k/a)^(i w/a)

and ``B_{k w} = conj(A_{k w})``.  The packet overlaps ``A_w = int dk A_{kw} f(k)``
oscillate like ``exp(i (w/a) log k)``; they are integrated in ``u = log(k/a)``
where that factor becomes a plain Fourier kernel.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureError, ValidationError
from .grids import FrequencyGrid, log_grid, panel_grid
from .special_fn import squeezing_cosh_sinh, z_factor
from .wavepackets import TRUNCATION_WIDTHS, evaluate

__all__ = [
    "RindlerCoefficients",
    "a_k_omega",
    "b_k_omega",
    "default_omega_grid",
    "wavenumber_grid",
    "unruh_overlap",
    "rindler_coefficients",
    "spectral_integral",
    "unruh_norm",
]

DEFAULT_OMEGA_MIN = 1e-3
DEFAULT_N_OMEGA = 2048
K_FLOOR = 1e-12
_CHUNK = 256


@dataclass(frozen=True, eq=False)
class RindlerCoefficients:
    """Rindler-basis coefficients of one Minkowski mode on a frequency grid.

    ``f_ea``/``f_eac`` multiply the right-wedge annihilation/creation
    operators, ``f_eb``/``f_ebc`` the left-wedge ones.
    """

    grid: FrequencyGrid
    a: float
    f_ea: np.ndarray
    f_eac: np.ndarray
    f_eb: np.ndarray
    f_ebc: np.ndarray

    def commutator_sum(self, include_origin=True):
        dens = (np.abs(self.f_ea) ** 2 - np.abs(self.f_eac) ** 2
                + np.abs(self.f_eb) ** 2 - np.abs(self.f_ebc) ** 2)
        return spectral_integral(dens, self.grid, include_origin)


def a_k_omega(k, omega, a):
    """Unruh kernel A_{k omega}; broadcasts over ``k`` and ``omega``."""
    k = np.asarray(k, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if np.any(k <= 0):
        raise DomainError("k must be positive")
    return z_factor(omega, a) / np.sqrt(k) * np.exp(1j * (omega / a) * np.log(k / a))


def b_k_omega(k, omega, a):
    return np.conj(a_k_omega(k, omega, a))


def default_omega_grid(a, center, omega_min=DEFAULT_OMEGA_MIN, omega_max=None, n=DEFAULT_N_OMEGA):
    if omega_max is None:
        omega_max = 20.0 * max(a, center)
    return log_grid(omega_min, omega_max, n)


def wavenumber_grid(center, width, offset, a, omega_max, order=16, panels_per_period=1.0):
    """Gauss-Legendre panels in ``log k`` covering the packet support.

    The panel width is one period of the fastest phase in the integrand,
    ``(omega_max/a) u + k_max |offset|``, divided by ``panels_per_period``.
    """
    k_lo = max(K_FLOOR * max(center, 1.0), center - TRUNCATION_WIDTHS * width)
    k_hi = center + TRUNCATION_WIDTHS * width
    freq = omega_max / a + k_hi * abs(offset) + 1.0
    return panel_grid(k_lo, k_hi, 2.0 * np.pi / freq / panels_per_period, order=order, log=True)


def _overlap_sums(profile, kgrid, omega, a):
    fk = kgrid.weights * evaluate(profile, kgrid.nodes) / np.sqrt(kgrid.nodes)
    logk = np.log(kgrid.nodes / a)
    plus = np.empty(omega.size, dtype=complex)
    minus = np.empty(omega.size, dtype=complex)
    for s in range(0, omega.size, _CHUNK):
        ph = np.exp(1j * np.outer(omega[s:s + _CHUNK] / a, logk))
        plus[s:s + _CHUNK] = ph @ fk
        minus[s:s + _CHUNK] = ph.conj() @ fk
    return plus, minus


def unruh_overlap(wp, grid, a, kgrid=None, tol=1e-8):
    """Unruh-basis overlaps ``(A_w, B_w)`` of a normalised Minkowski packet.

    Parameters
    ----------
    wp : GaussianWavePacket
        Minkowski profile f(k), normalised on ``kgrid``.
    grid : FrequencyGrid
        Output frequencies.
    a : float
        Acceleration.
    kgrid : FrequencyGrid, optional
        Wavenumber quadrature; built with :func:`wavenumber_grid` if omitted.
    tol : float
        Allowed change of the highest-frequency overlaps when the panel
        width is halved.

    Raises
    ------
    QuadratureError
        When the refinement check exceeds ``tol``.
    """
    omega = grid.nodes
    if kgrid is None:
        kgrid = wavenumber_grid(wp.center, wp.width, wp.offset, a, grid.omega_max)
    plus, minus = _overlap_sums(wp, kgrid, omega, a)

    # refinement check on the most oscillatory nodes only
    top = omega[-4:]
    finer = wavenumber_grid(wp.center, wp.width, wp.offset, a, grid.omega_max, panels_per_period=2.0)
    p2, m2 = _overlap_sums(wp, finer, top, a)
    residual = max(np.max(np.abs(p2 - plus[-4:])), np.max(np.abs(m2 - minus[-4:])))
    if residual > tol:
        raise QuadratureError(f"unruh_overlap did not converge (residual {residual:.3e})", residual)

    z = z_factor(omega, a)
    return z * plus, np.conj(z) * minus


def rindler_coefficients(A, B, grid, a):
    """Rindler coefficients from Unruh overlaps via the two-mode squeeze."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != grid.nodes.shape or B.shape != grid.nodes.shape:
        raise ValidationError("A, B and the grid must share one shape")
    ch, sh = squeezing_cosh_sinh(grid.nodes, a)
    return RindlerCoefficients(grid, float(a), A * ch, -B * sh, B * ch, -A * sh)


def spectral_integral(density, grid, include_origin=True):
    """Grid quadrature of a spectral density, optionally down to zero.

    With ``include_origin`` the sliver ``[0, omega_min]`` is added using the
    straight line through the first two nodes.  Use it only for densities
    that stay finite as the frequency goes to zero.
    """
    total = grid.integrate(density)
    if include_origin:
        x0, x1 = grid.nodes[:2]
        d0, d1 = density[0], density[1]
        slope = (d1 - d0) / (x1 - x0)
        total = total + x0 * d0 - 0.5 * slope * x0**2
    return float(np.real(total))


def unruh_norm(A, B, grid, include_origin=True):
    """``int (|A_w|^2 + |B_w|^2) dw``; equals one for a normalised packet."""
    return spectral_integral(np.abs(A) ** 2 + np.abs(B) ** 2, grid, include_origin)
