"""Quadrature amplitude and variance traces seen by a non-inertial homodyne detector.

The observer sits in the ``left`` wedge of its frame.  Both the signal and
the local oscillator are displacements of the *sender's* mode, so each
reaches the observer as a per-frequency mean shift (``observed profile``)
on a thermal background with occupation ``sinh(r_w)^2``.  In the
strong-oscillator limit, with ``L_w`` the oscillator profile, ``S_w`` the
signal profile and ``|L| = sqrt(int |L_w|^2)``:

    X = 2 Re[ int conj(L_w) S_w ] / |L|
    V = int |L_w|^2 (1 + 2 sinh(r_w)^2) / |L|^2

The three schemes differ only in ``L``:

* balanced: oscillator sent at phase 0, phase ``phi`` applied locally,
  ``L = e^{i phi} L(0)``;
* self: oscillator sent at phase ``phi``, ``L = L(phi)``;
* ideal: oscillator matched to the signal's observed mode,
  ``L = e^{i phi} L(psi)``.
"""

from dataclasses import dataclass

import numpy as np

from .bogoliubov_delay import delayed_overlap
from .bogoliubov_mr import rindler_coefficients, unruh_overlap
from .errors import DegenerateScenarioError, DomainError, ValidationError
from .special_fn import squeezing_cosh_sinh

__all__ = [
    "SCHEMES",
    "SCENARIOS",
    "SignalSpec",
    "HomodyneTrace",
    "phase_grid",
    "thermal_kernel",
    "per_frequency_amplitudes_mr",
    "per_frequency_amplitudes_rdr",
    "homodyne_traces",
    "sweep_mr",
    "sweep_rdr",
    "cosine_fit",
    "harmonic_content",
    "dominant_harmonic",
]

SCHEMES = ("balanced", "self", "ideal")
SCENARIOS = ("minkowski_to_rindler", "rindler_to_delayed")
DEFAULT_N_PHI = 256


@dataclass(frozen=True)
class SignalSpec:
    """Coherent signal ``|beta| e^{i psi}`` in the mode ``wavepacket``."""

    magnitude: float
    phase: float
    wavepacket: object

    def __post_init__(self):
        if not self.magnitude >= 0:
            raise ValidationError("signal magnitude must be non-negative")


@dataclass(frozen=True, eq=False)
class HomodyneTrace:
    scheme: str
    scenario: str
    phi: np.ndarray
    X: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        if self.scheme not in SCHEMES or self.scenario not in SCENARIOS:
            raise ValidationError(f"unknown scheme/scenario {self.scheme!r}/{self.scenario!r}")
        if not (len(self.phi) == len(self.X) == len(self.V)):
            raise ValidationError("phi, X and V must have equal length")


def phase_grid(n=DEFAULT_N_PHI):
    """``n`` uniform phases on ``[0, 2 pi)``."""
    return 2.0 * np.pi * np.arange(n) / n


def thermal_kernel(omega, a):
    """``1 + 2 sinh(r_w)^2``, the observed vacuum's quadrature variance."""
    _, sh = squeezing_cosh_sinh(omega, a)
    return 1.0 + 2.0 * sh**2


def _phases(phase):
    ph = np.asarray(phase, dtype=float)
    return np.exp(1j * ph)[..., None]


def per_frequency_amplitudes_mr(rc, magnitude, phase):
    """Left-wedge mean shift per frequency for a Minkowski displacement.

    ``magnitude (conj(f_eb) e^{i phase} - f_ebc e^{-i phase})``.  An array of
    phases gives one row per phase.
    """
    e = _phases(phase)
    out = magnitude * (np.conj(rc.f_eb) * e - rc.f_ebc * np.conj(e))
    return out


def per_frequency_amplitudes_rdr(dc, magnitude, phase):
    """Delayed left-wedge mean shift per frequency for a Rindler displacement.

    ``magnitude (alpha_b e^{i phase} + beta_b e^{-i phase})`` with the
    packet-integrated coefficients of ``dc``.
    """
    e = _phases(phase)
    out = magnitude * (dc.alpha_b * e + dc.beta_b * np.conj(e))
    return out


def _norms(grid, prof):
    return np.sqrt(grid.integrate(np.abs(prof) ** 2))


def _require(norm, what):
    if np.any(~(norm > 0)):
        raise DegenerateScenarioError(f"{what} has no overlap with the observed wedge")


def homodyne_traces(amplitudes, grid, kernel, signal_magnitude, psi, phi, scenario, lo_magnitude=1.0):
    """Balanced, self and ideal traces from an observed-profile function.

    Parameters
    ----------
    amplitudes : callable
        ``amplitudes(magnitude, phase)`` -> observed profile (one row per
        phase for array input).
    grid : FrequencyGrid
        Observed frequencies.
    kernel : ndarray
        ``1 + 2 sinh^2 r`` on ``grid``.
    signal_magnitude, psi : float
        Signal amplitude and phase.
    phi : ndarray
        Oscillator phases.
    scenario : str
    lo_magnitude : float
        Oscillator amplitude; the traces do not depend on it.

    Returns
    -------
    dict
        Scheme name -> HomodyneTrace.

    Raises
    ------
    DegenerateScenarioError
        If an oscillator profile vanishes in the observed wedge.
    """
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    sig = amplitudes(signal_magnitude, psi)
    e_phi = np.exp(-1j * phi)

    def fixed_mode(ref, name):
        n = _norms(grid, ref)
        _require(n, name)
        X = 2.0 * np.real(e_phi * grid.integrate(np.conj(ref) * sig)) / n
        V = np.full(phi.shape, grid.integrate(np.abs(ref) ** 2 * kernel) / n**2)
        return X, V

    Xb, Vb = fixed_mode(amplitudes(lo_magnitude, 0.0), "balanced oscillator")
    Xi, Vi = fixed_mode(amplitudes(lo_magnitude, psi), "ideal reference")

    refs = amplitudes(lo_magnitude, phi)
    n = _norms(grid, refs)
    _require(n, "self-homodyne oscillator")
    Xs = 2.0 * np.real(grid.integrate(np.conj(refs) * sig[None, :])) / n
    Vs = grid.integrate(np.abs(refs) ** 2 * kernel[None, :]) / n**2

    return {
        "balanced": HomodyneTrace("balanced", scenario, phi, Xb, Vb),
        "self": HomodyneTrace("self", scenario, phi, Xs, Vs),
        "ideal": HomodyneTrace("ideal", scenario, phi, Xi, Vi),
    }


def sweep_mr(signal, phi, a, grid, kgrid=None, rc=None):
    """Homodyne traces of an inertial signal seen by a uniformly accelerated observer.

    Parameters
    ----------
    signal : SignalSpec
        Minkowski packet ``f(k)`` (normalised on ``kgrid``) and amplitude.
    phi : ndarray
        Oscillator phases.
    a : float
        Acceleration.
    grid : FrequencyGrid
        Rindler frequencies.
    kgrid : FrequencyGrid, optional
        Wavenumber quadrature for the Unruh overlaps.
    rc : RindlerCoefficients, optional
        Precomputed coefficients on ``grid`` (skips the overlaps).
    """
    if a <= 0:
        raise DomainError("acceleration must be positive")
    if rc is None:
        A, B = unruh_overlap(signal.wavepacket, grid, a, kgrid)
        rc = rindler_coefficients(A, B, grid, a)
    return homodyne_traces(lambda m, p: per_frequency_amplitudes_mr(rc, m, p), grid,
                           thermal_kernel(grid.nodes, a), signal.magnitude, signal.phase, phi,
                           "minkowski_to_rindler")


def sweep_rdr(signal, t, phi, a, grid, source_grid=None, dc=None):
    """Homodyne traces of a Rindler signal seen by the delayed left-wedge observer.

    Parameters
    ----------
    signal : SignalSpec
        Rindler packet ``g(w)`` and amplitude.
    t : float
        Minkowski delay (positive).
    phi : ndarray
    a : float
    grid : FrequencyGrid
        Delayed-frame frequencies.
    source_grid : FrequencyGrid, optional
        Quadrature over the packet.
    dc : DelayedOverlaps, optional
        Precomputed packet overlaps on ``grid``.
    """
    if a <= 0:
        raise DomainError("acceleration must be positive")
    if dc is None:
        dc = delayed_overlap(signal.wavepacket, grid, t, a, source_grid)
    return homodyne_traces(lambda m, p: per_frequency_amplitudes_rdr(dc, m, p), grid,
                           thermal_kernel(grid.nodes, a), signal.magnitude, signal.phase, phi,
                           "rindler_to_delayed")


def cosine_fit(phi, x):
    """Least-squares fit ``x ~ c0 + A cos(phi - phase)``.

    Returns
    -------
    amplitude, phase, offset, residual
        ``residual`` is the fit residual norm divided by the trace norm.
    """
    phi = np.asarray(phi, dtype=float)
    x = np.asarray(x, dtype=float)
    design = np.column_stack([np.ones_like(phi), np.cos(phi), np.sin(phi)])
    coef, *_ = np.linalg.lstsq(design, x, rcond=None)
    c0, c, s = coef
    scale = np.linalg.norm(x)
    resid = np.linalg.norm(design @ coef - x) / scale if scale > 0 else 0.0
    return float(np.hypot(c, s)), float(np.arctan2(s, c)), float(c0), float(resid)


def harmonic_content(x, above=1):
    """Fraction of the trace norm in Fourier harmonics higher than ``above``.

    ``x`` must be sampled on a uniform periodic phase grid.
    """
    c = np.fft.rfft(np.asarray(x, dtype=float))
    power = np.abs(c) ** 2
    power[1:] *= 2.0
    if len(x) % 2 == 0:
        power[-1] /= 2.0
    total = power.sum()
    return float(np.sqrt(power[above + 1:].sum() / total)) if total > 0 else 0.0


def dominant_harmonic(x):
    """Index of the largest non-constant Fourier harmonic of a periodic trace."""
    c = np.abs(np.fft.rfft(np.asarray(x, dtype=float)))
    return int(np.argmax(c[1:]) + 1)
