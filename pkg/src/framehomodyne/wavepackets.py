"""Gaussian wave-packet mode profiles over positive frequency.

The same closed form serves the Minkowski profile f(k; k0, sigma, V0) and
the Rindler profile g(w; w0, delta, v0):

    profile(k) = N sqrt(k) (2 pi width^2)^(-1/4)
                 exp(-(k - center)^2 / (4 width^2) - i k offset)

with ``N`` fixed numerically so that the grid quadrature of ``|profile|^2``
is one.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["GaussianWavePacket", "make_gaussian", "evaluate", "TRUNCATION_WIDTHS"]

TRUNCATION_WIDTHS = 8.0


@dataclass(frozen=True)
class GaussianWavePacket:
    center: float
    width: float
    offset: float
    norm_const: float = 1.0
    lower_edge: float = 0.0

    @property
    def support(self):
        """Interval outside which the profile is treated as zero."""
        lo = max(self.lower_edge, self.center - TRUNCATION_WIDTHS * self.width)
        return lo, self.center + TRUNCATION_WIDTHS * self.width

    def unnormalized(self, k):
        k = np.asarray(k, dtype=float)
        amp = np.sqrt(k) * (2.0 * np.pi * self.width**2) ** -0.25
        expo = -((k - self.center) ** 2) / (4.0 * self.width**2)
        out = amp * np.exp(expo - 1j * k * self.offset)
        lo, hi = self.support
        return np.where((k >= lo) & (k <= hi), out, 0.0)

    def __call__(self, k):
        return evaluate(self, k)


def evaluate(profile, k):
    """Closed-form value of the normalised profile at ``k > 0``."""
    if np.any(np.asarray(k) <= 0):
        raise DomainError("wave-packet profiles are defined only for k > 0")
    return profile.norm_const * profile.unnormalized(k)


def make_gaussian(center, width, offset, grid):
    """Build a Gaussian packet normalised on ``grid``.

    Parameters
    ----------
    center, width : float
        Peak location and width; both must be positive.
    offset : float
        Null-coordinate offset, which only sets the phase ``exp(-i k offset)``.
    grid : FrequencyGrid
        Quadrature grid; use the same one later used for overlaps.
    """
    if center <= 0 or width <= 0:
        raise DomainError("center and width must be positive")
    raw = GaussianWavePacket(float(center), float(width), float(offset), 1.0, float(grid.omega_min))
    norm2 = grid.integrate(np.abs(raw.unnormalized(grid.nodes)) ** 2)
    if not norm2 > 0:
        raise DomainError("wave packet has no weight on the grid")
    return GaussianWavePacket(raw.center, raw.width, raw.offset, float(norm2 ** -0.5), raw.lower_edge)
