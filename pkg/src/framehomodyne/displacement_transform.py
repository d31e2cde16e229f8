"""Displacement operators rewritten in another frame's mode basis.

A displacement ``D(alpha) = exp(alpha O^dag - conj(alpha) O)`` of a normalised
mode ``O = sum_n int dm (Oa_n(m) o_n(m) + Ob_n(m) o_n(m)^dag)`` factorises
into one displacement per wedge ``n``

    D(alpha) = prod_n D_{o_n}(alpha_n),
    profile_n = Oa_n conj(alpha) - conj(Ob_n) alpha,
    alpha_n   = || profile_n ||,   o_n = int dm (profile_n / alpha_n) o_n(m).

``conj(profile_n)`` is the mean shift ``<o_n(m)>`` per frequency.  Wedges are
labelled ``"right"`` and ``"left"``: the accelerated observer's own wedge
and the causally disconnected one.
"""

from dataclasses import dataclass, field

import numpy as np

from .bogoliubov_mr import spectral_integral
from .errors import ValidationError

__all__ = [
    "WEDGES",
    "ZERO_THRESHOLD",
    "BosonicDecomposition",
    "WedgeDisplacement",
    "TransformedDisplacement",
    "transform_displacement",
    "decomposition_from_rindler",
    "decomposition_from_delayed",
    "minkowski_to_rindler_displacement",
    "rindler_to_delayed_displacement",
]

WEDGES = ("right", "left")
ZERO_THRESHOLD = 1e-12
DEFAULT_TOL = 1e-4


@dataclass(frozen=True, eq=False)
class BosonicDecomposition:
    """Annihilation/creation coefficients of one mode, per wedge.

    Parameters
    ----------
    grid : FrequencyGrid
    oa, ob : dict
        Wedge label -> complex array over ``grid``.  A missing wedge is
        treated as zero.
    origin : bool
        Extend the commutator integral to zero frequency (the density must
        stay finite there).
    tail : bool
        Add an ``omega^-2`` tail beyond the last node to the commutator
        integral, for slowly decaying coefficients.
    """

    grid: object
    oa: dict
    ob: dict
    origin: bool = False
    tail: bool = False

    def __post_init__(self):
        for label in set(self.oa) | set(self.ob):
            if label not in WEDGES:
                raise ValidationError(f"unknown wedge label {label!r}")
        for part in (self.oa, self.ob):
            for v in part.values():
                if np.shape(v) != self.grid.nodes.shape:
                    raise ValidationError("coefficient arrays must match the grid")

    def coeffs(self, label):
        zero = np.zeros(self.grid.nodes.shape, dtype=complex)
        return np.asarray(self.oa.get(label, zero)), np.asarray(self.ob.get(label, zero))

    def commutator_density(self):
        dens = np.zeros(self.grid.nodes.shape)
        for label in WEDGES:
            oa, ob = self.coeffs(label)
            dens = dens + np.abs(oa) ** 2 - np.abs(ob) ** 2
        return dens

    def commutator_sum(self):
        dens = self.commutator_density()
        total = spectral_integral(dens, self.grid, self.origin) if self.origin else float(self.grid.integrate(dens))
        if self.tail:
            total += float(dens[-1] * self.grid.nodes[-1])
        return total


@dataclass(frozen=True, eq=False)
class WedgeDisplacement:
    amplitude: float
    mode_weights: np.ndarray

    @property
    def is_identity(self):
        return self.mode_weights is None

    @property
    def shift(self):
        """Mean shift per frequency node, ``amplitude * conj(mode_weights)``."""
        if self.is_identity:
            return None
        return self.amplitude * np.conj(self.mode_weights)


@dataclass(frozen=True, eq=False)
class TransformedDisplacement:
    magnitude: float
    phase: float
    grid: object
    wedges: dict = field(default_factory=dict)

    def __getitem__(self, label):
        return self.wedges[label]

    def amplitudes(self):
        return {k: w.amplitude for k, w in self.wedges.items()}


def _wedge(profile, grid, magnitude):
    peak = float(np.max(np.abs(profile)))
    if peak == 0.0:
        return WedgeDisplacement(0.0, None)
    e = int(np.frexp(peak)[1])
    unit = np.ldexp(profile.real, -e) + 1j * np.ldexp(profile.imag, -e)  # exact rescale; no underflow on squaring
    amp = float(np.ldexp(grid.norm(unit), e))
    if amp < ZERO_THRESHOLD * magnitude or amp == 0.0:
        return WedgeDisplacement(0.0, None)
    return WedgeDisplacement(amp, unit / grid.norm(unit))


def _check_commutator(decomp, tol):
    res = decomp.commutator_sum() - 1.0
    if not abs(res) <= tol:
        raise ValidationError(f"decomposition is not normalised: commutator sum - 1 = {res:.3e}")


def transform_displacement(decomp, alpha, tol=DEFAULT_TOL):
    """Rewrite ``D(alpha)`` of the decomposed mode as per-wedge displacements.

    Parameters
    ----------
    decomp : BosonicDecomposition
    alpha : complex
        Displacement amplitude ``|alpha| exp(i phi)``.
    tol : float
        Allowed deviation of the commutator sum from one.

    Returns
    -------
    TransformedDisplacement
        Wedges whose amplitude falls below ``1e-12 |alpha|`` carry
        ``mode_weights=None`` (the identity).

    Raises
    ------
    ValidationError
        If the decomposition is not normalised within ``tol``.
    """
    _check_commutator(decomp, tol)
    alpha = complex(alpha)
    mag = abs(alpha)
    wedges = {}
    for label in WEDGES:
        oa, ob = decomp.coeffs(label)
        wedges[label] = _wedge(oa * np.conj(alpha) - np.conj(ob) * alpha, decomp.grid, mag)
    return TransformedDisplacement(mag, float(np.angle(alpha)), decomp.grid, wedges)


def decomposition_from_rindler(rc):
    """Minkowski packet mode in the Rindler basis (right = own wedge)."""
    return BosonicDecomposition(rc.grid, {"right": rc.f_ea, "left": rc.f_eb},
                                {"right": rc.f_eac, "left": rc.f_ebc}, origin=True)


def decomposition_from_delayed(dc):
    """Right-wedge Rindler packet mode in the delayed Rindler basis."""
    return BosonicDecomposition(dc.grid, {"right": np.conj(dc.alpha_a), "left": np.conj(dc.alpha_b)},
                                {"right": -dc.beta_a, "left": -dc.beta_b}, origin=True, tail=True)


def minkowski_to_rindler_displacement(rc, magnitude, phase):
    """Displacement of a Minkowski packet seen in the Rindler wedges.

    ``right``: ``|alpha| (f_ea e^{-i phi} - conj(f_eac) e^{i phi})``,
    ``left``: ``|alpha| (f_eb e^{-i phi} - conj(f_ebc) e^{i phi})``.
    """
    if magnitude < 0:
        raise ValidationError("magnitude must be non-negative")
    em, ep = np.exp(-1j * phase), np.exp(1j * phase)
    right = magnitude * (rc.f_ea * em - np.conj(rc.f_eac) * ep)
    left = magnitude * (rc.f_eb * em - np.conj(rc.f_ebc) * ep)
    return TransformedDisplacement(float(magnitude), float(phase), rc.grid,
                                   {"right": _wedge(right, rc.grid, magnitude),
                                    "left": _wedge(left, rc.grid, magnitude)})


def rindler_to_delayed_displacement(dc, magnitude, phase):
    """Displacement of a right-wedge Rindler packet seen in the delayed frame.

    ``right``: ``|alpha| (conj(alpha_a) e^{-i phi} + conj(beta_a) e^{i phi})``
    and the same with ``alpha_b, beta_b`` for ``left``; ``dc`` holds the
    packet-integrated coefficients from ``delayed_overlap``.
    """
    if magnitude < 0:
        raise ValidationError("magnitude must be non-negative")
    em, ep = np.exp(-1j * phase), np.exp(1j * phase)
    right = magnitude * (np.conj(dc.alpha_a) * em + np.conj(dc.beta_a) * ep)
    left = magnitude * (np.conj(dc.alpha_b) * em + np.conj(dc.beta_b) * ep)
    return TransformedDisplacement(float(magnitude), float(phase), dc.grid,
                                   {"right": _wedge(right, dc.grid, magnitude),
                                    "left": _wedge(left, dc.grid, magnitude)})
