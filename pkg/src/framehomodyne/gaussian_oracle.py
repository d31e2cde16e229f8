"""Finite-mode Gaussian-state simulator used as an independent check.

Conventions
-----------
Quadratures are interleaved ``r = (x_1, p_1, ..., x_M, p_M)`` with
``x = a + a^dag`` and ``p = -i (a - a^dag)``, so ``[r_i, r_j] = 2 i Omega_ij``
and the vacuum covariance is the identity (shot noise = 1).  The
covariance is ``sigma_ij = <{dr_i, dr_j}>/2``.

A quadratic observable ``Q = r^T H r / 2`` has

    <Q>   = (Tr(H sigma) + mu^T H mu) / 2
    Var Q = (Tr(sigma H sigma H) + Tr(Omega H Omega H)) / 2 + mu^T H sigma H mu

(Isserlis/Wick factorisation).  The number operator is ``Q`` with
``H = I_2 / 2`` on its mode, minus one half.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .bogoliubov_delay import (
    alpha_a_matrix,
    gamma_b_matrix,
    regular_matrix,
    rindler_delay_coeffs,
)
from .errors import DiscretizationError, DomainError, ValidationError
from .special_fn import squeezing_cosh_sinh
from .wavepackets import evaluate

__all__ = [
    "omega_form",
    "GaussianState",
    "SymplecticOp",
    "OracleResult",
    "vacuum",
    "thermal",
    "from_bogoliubov",
    "displacement",
    "phase_shifter",
    "beam_splitter",
    "single_mode_squeezer",
    "two_mode_squeezer",
    "symplectic_residual",
    "discretize_frame_change",
    "discretize_delay",
    "quadratic_moments",
    "number_observable",
    "simulate_balanced",
    "simulate_self",
    "oracle_mr",
    "oracle_rdr",
    "DEFAULT_MODES",
    "DEFAULT_LO",
]

DEFAULT_MODES = 128
DEFAULT_LO = 1e3
SYMPLECTIC_TOL = 1e-10
# the strong-oscillator formulas drop terms of order
# (signal photons + sum_j n_j (n_j + 1)) / N_lo in shot-noise units; above
# this fraction a result is flagged as outside their regime
MAX_DROPPED_FRACTION = 1e-3


def omega_form(m):
    """Symplectic form for ``m`` modes in interleaved ordering."""
    return np.kron(np.eye(m), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _quad_mean(alpha):
    """Interleaved quadrature means of complex mode amplitudes."""
    alpha = np.asarray(alpha, dtype=complex)
    out = np.empty(2 * alpha.size)
    out[0::2] = 2.0 * alpha.real
    out[1::2] = 2.0 * alpha.imag
    return out


def _mode_mean(mu):
    return 0.5 * (mu[0::2] + 1j * mu[1::2])


@dataclass(frozen=True, eq=False)
class GaussianState:
    mean: np.ndarray
    cov: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        n = mean.size
        if n % 2 or cov.shape != (n, n):
            raise ValidationError("mean must have length 2M and cov shape 2M x 2M")
        if not np.allclose(cov, cov.T, atol=1e-12 * max(1.0, np.abs(cov).max())):
            raise ValidationError("covariance must be symmetric")
        if self.labels and len(self.labels) != n // 2:
            raise ValidationError("one label per mode")

    @property
    def n_modes(self):
        return self.mean.size // 2

    def mode_means(self):
        """Complex ``<a_j>`` per mode."""
        return _mode_mean(self.mean)

    def uncertainty_residual(self):
        """Smallest eigenvalue of ``cov + i Omega`` (>= 0 for physical states)."""
        return float(np.linalg.eigvalsh(self.cov + 1j * omega_form(self.n_modes)).min())

    def select(self, modes):
        """Reduced state of the listed modes (partial trace)."""
        idx = np.ravel([[2 * m, 2 * m + 1] for m in modes]).astype(int)
        labels = tuple(self.labels[m] for m in modes) if self.labels else ()
        return GaussianState(self.mean[idx], self.cov[np.ix_(idx, idx)], labels)

    def __add__(self, other):
        """Tensor product (direct sum of quadratures)."""
        n1, n2 = self.mean.size, other.mean.size
        cov = np.zeros((n1 + n2, n1 + n2))
        cov[:n1, :n1] = self.cov
        cov[n1:, n1:] = other.cov
        labels = self.labels + other.labels if self.labels and other.labels else ()
        return GaussianState(np.concatenate([self.mean, other.mean]), cov, labels)

    def displaced(self, alpha):
        """State with ``alpha_j`` added to each mode amplitude."""
        return GaussianState(self.mean + _quad_mean(alpha), self.cov, self.labels)


def vacuum(m, labels=()):
    return GaussianState(np.zeros(2 * m), np.eye(2 * m), tuple(labels))


def thermal(n, labels=()):
    """Product of thermal states with occupations ``n`` (variance ``1 + 2 n``)."""
    n = np.asarray(n, dtype=float)
    if np.any(n < 0):
        raise DomainError("occupations must be non-negative")
    return GaussianState(np.zeros(2 * n.size), np.diag(np.repeat(1.0 + 2.0 * n, 2)), tuple(labels))


@dataclass(frozen=True, eq=False)
class SymplecticOp:
    """Gaussian unitary ``r -> S r + d``."""

    S: np.ndarray
    d: np.ndarray = None

    def __post_init__(self):
        S = np.asarray(self.S, dtype=float)
        object.__setattr__(self, "S", S)
        if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2:
            raise ValidationError("S must be a square 2M x 2M matrix")
        d = np.zeros(S.shape[0]) if self.d is None else np.asarray(self.d, dtype=float)
        if d.shape != (S.shape[0],):
            raise ValidationError("displacement length must match S")
        object.__setattr__(self, "d", d)

    @property
    def residual(self):
        return symplectic_residual(self.S)

    def apply(self, state):
        if state.mean.size != self.S.shape[0]:
            raise ValidationError("operator and state dimensions differ")
        return GaussianState(self.S @ state.mean + self.d, self.S @ state.cov @ self.S.T, state.labels)

    def then(self, other):
        """The operation ``other`` applied after ``self``."""
        return SymplecticOp(other.S @ self.S, other.S @ self.d + other.d)


def symplectic_residual(S):
    """``max |S Omega S^T - Omega|``."""
    om = omega_form(S.shape[0] // 2)
    return float(np.abs(S @ om @ S.T - om).max())


def _real_map(U, V):
    """Quadrature matrix of ``a' = U a + V a^dag`` (rectangular allowed)."""
    U = np.atleast_2d(np.asarray(U, dtype=complex))
    V = np.atleast_2d(np.asarray(V, dtype=complex))
    m_out, m_in = U.shape
    S = np.empty((2 * m_out, 2 * m_in))
    S[0::2, 0::2] = (U + V).real
    S[0::2, 1::2] = -(U - V).imag
    S[1::2, 0::2] = (U + V).imag
    S[1::2, 1::2] = (U - V).real
    return S


def from_bogoliubov(U, V, check=True):
    """SymplecticOp of the linear map ``a' = U a + V a^dag``."""
    S = _real_map(U, V)
    if check and symplectic_residual(S) > SYMPLECTIC_TOL:
        raise ValidationError("Bogoliubov matrices are not symplectic")
    return SymplecticOp(S)


def displacement(alpha):
    alpha = np.atleast_1d(alpha)
    return SymplecticOp(np.eye(2 * alpha.size), _quad_mean(alpha))


def _embed(m, modes, U2, V2):
    U = np.eye(m, dtype=complex)
    V = np.zeros((m, m), dtype=complex)
    idx = np.ix_(modes, modes)
    U[idx] = U2
    V[idx] = V2
    return from_bogoliubov(U, V)


def phase_shifter(m, mode, theta):
    """``a_mode -> e^{i theta} a_mode``."""
    return _embed(m, [mode], [[np.exp(1j * theta)]], [[0.0]])


def beam_splitter(m, j, k, transmissivity=0.5):
    """``a_j -> t a_j + r a_k``, ``a_k -> t a_k - r a_j``."""
    t, r = np.sqrt(transmissivity), np.sqrt(1.0 - transmissivity)
    return _embed(m, [j, k], [[t, r], [-r, t]], np.zeros((2, 2)))


def single_mode_squeezer(m, mode, r):
    return _embed(m, [mode], [[np.cosh(r)]], [[-np.sinh(r)]])


def two_mode_squeezer(m, j, k, r):
    """``a_j -> cosh r a_j + sinh r a_k^dag`` and symmetrically for ``a_k``."""
    ch, sh = np.cosh(r), np.sinh(r)
    return _embed(m, [j, k], [[ch, 0.0], [0.0, ch]], [[0.0, sh], [sh, 0.0]])


def discretize_frame_change(grid, a, tol=1e-6):
    """Unruh -> Rindler transform on a frequency grid as one symplectic op.

    Mode order is ``(c_0..c_{M-1}, d_0..d_{M-1})`` in and
    ``(right_0..right_{M-1}, left_0..left_{M-1})`` out, with
    ``right = cosh r c + sinh r d^dag`` and ``left = cosh r d + sinh r c^dag``.
    """
    m = len(grid)
    ch, sh = squeezing_cosh_sinh(grid.nodes, a)
    U = np.zeros((2 * m, 2 * m))
    V = np.zeros((2 * m, 2 * m))
    i = np.arange(m)
    U[i, i] = ch
    U[m + i, m + i] = ch
    V[i, m + i] = sh
    V[m + i, i] = sh
    op = SymplecticOp(_real_map(U, V))
    if tol is not None and op.residual > tol:
        raise DiscretizationError(f"frame change residual {op.residual:.3e}", op.residual)
    return op


def discretize_delay(grid, t, a, tol=1e-6):
    """Rindler -> delayed-Rindler transform (t > 0) on one grid.

    Mode order is ``(right, left)`` for both frames.  The truncated grid
    cannot hold the slowly decaying coefficients exactly, so the symplectic
    residual is large unless the grid is very wide; pass ``tol=None`` to
    return the operator regardless.
    """
    if t <= 0:
        raise DomainError("discretize_delay expects t > 0")
    c = rindler_delay_coeffs(grid.nodes, grid.nodes, t, a)
    aa = alpha_a_matrix(grid, t, a)
    gb = gamma_b_matrix(grid, t, a)
    R = lambda k: regular_matrix(k, grid)
    U = np.block([[aa, R(c.gamma_a)], [R(c.alpha_b), gb]])
    V = np.block([[R(c.beta_a), R(c.delta_a)], [R(c.beta_b), R(c.delta_b)]])
    op = SymplecticOp(_real_map(U, V))
    if tol is not None and op.residual > tol:
        raise DiscretizationError(f"delay transform residual {op.residual:.3e}", op.residual)
    return op


def quadratic_moments(state, H):
    """Mean and variance of ``r^T H r / 2``."""
    s, mu = state.cov, state.mean
    om = omega_form(state.n_modes)
    sH = s @ H
    oH = om @ H
    mean = 0.5 * (np.trace(sH) + mu @ H @ mu)
    var = 0.5 * (np.trace(sH @ sH) + np.trace(oH @ oH)) + mu @ H @ sH @ mu
    return float(mean), float(var)


def number_observable(m, weights):
    """``H`` and constant of ``sum_j weights_j a_j^dag a_j``."""
    weights = np.asarray(weights, dtype=float)
    if weights.size != m:
        raise ValidationError("one weight per mode")
    return np.diag(np.repeat(0.5 * weights, 2)), -0.5 * weights.sum()


@dataclass(frozen=True)
class OracleResult:
    X: float
    V: float
    lo_photons: float
    valid: bool


def _check_regime(lo_photons, dropped):
    valid = dropped <= MAX_DROPPED_FRACTION * lo_photons
    if not valid:
        warnings.warn("local oscillator is not strong compared with the signal and thermal photons; "
                      "strong-oscillator formulas do not apply", RuntimeWarning, stacklevel=3)
    return valid


def simulate_balanced(signal, lo, phi):
    """Balanced homodyne on two fields observed mode by mode.

    Parameters
    ----------
    signal, lo : GaussianState
        The observed modes of the signal field and of the oscillator field
        (same frequency grid, same mode order).
    phi : float
        Local phase applied to the oscillator before the 50:50 splitter.

    Returns
    -------
    OracleResult
        ``X = <N_c - N_d> / sqrt(<N_lo>)``, ``V = Var(N_c - N_d) / <N_lo>``.
    """
    m = signal.n_modes
    if lo.n_modes != m:
        raise ValidationError("signal and oscillator must have the same modes")
    joint = signal + lo
    n_lo = quadratic_moments(lo, np.eye(2 * m) * 0.5)[0] - 0.5 * m

    # phase on every oscillator mode, then splitters (oscillator j, signal j)
    U = np.eye(2 * m, dtype=complex)
    U[m:, m:] *= np.exp(1j * phi)
    rot = from_bogoliubov(U, np.zeros((2 * m, 2 * m)), check=False)
    t = np.sqrt(0.5)
    Ub = np.zeros((2 * m, 2 * m))
    i = np.arange(m)
    Ub[i, m + i] = t
    Ub[i, i] = t
    Ub[m + i, m + i] = t
    Ub[m + i, i] = -t
    bs = from_bogoliubov(Ub, np.zeros((2 * m, 2 * m)), check=False)
    out = rot.then(bs).apply(joint)

    H = np.diag(np.concatenate([np.full(2 * m, 0.5), np.full(2 * m, -0.5)]))
    mean, var = quadratic_moments(out, H)
    dropped = float(np.sum(np.abs(signal.mode_means()) ** 2)) + _thermal_excess(signal) + _thermal_excess(lo)
    valid = _check_regime(n_lo, dropped)
    return OracleResult(mean / np.sqrt(n_lo), var / n_lo, n_lo, valid)


def _thermal_excess(state):
    """``sum_j n_j (n_j + 1)`` from the diagonal mode variances."""
    v = 0.5 * (np.diag(state.cov)[0::2] + np.diag(state.cov)[1::2])
    n = 0.5 * (v - 1.0)
    return float(np.sum(n * (n + 1.0)))


def simulate_self(state, reference):
    """Self homodyne: photon count with and without the signal.

    Parameters
    ----------
    state : GaussianState
        Observed modes carrying the signal.
    reference : array_like of complex
        Reference displacement added to each observed mode.

    Returns
    -------
    OracleResult
        ``X = (<N> - N_0) / sqrt(N_0)``, ``V = Var(N) / N_0`` with ``N_0``
        the count of the reference alone on the signal-free background.
    """
    m = state.n_modes
    H, const = number_observable(m, np.ones(m))
    with_ref = state.displaced(reference)
    background = GaussianState(np.zeros(2 * m), state.cov).displaced(reference)
    mean, var = quadratic_moments(with_ref, H)
    n0 = quadratic_moments(background, H)[0] + const
    dropped = float(np.sum(np.abs(state.mode_means()) ** 2)) + _thermal_excess(state)
    valid = _check_regime(n0, dropped)
    return OracleResult((mean + const - n0) / np.sqrt(n0), var / n0, n0, valid)


def _strong_limit(sig_mean, lo_mean, cov):
    """Leading-order X and V for oscillator mode amplitudes ``lo_mean``."""
    norm2 = float(np.sum(np.abs(lo_mean) ** 2))
    X = 2.0 * np.real(np.vdot(lo_mean, sig_mean)) / np.sqrt(norm2)
    mu = _quad_mean(lo_mean)
    V = float(mu @ cov @ mu) / (4.0 * norm2)
    return X, V


def _traces(signal, lo_of_phase, ref_psi, phi, lo_amplitude, limit):
    """Balanced, self and ideal oracle traces for observed-mode states."""
    out = {k: {"X": np.empty(phi.size), "V": np.empty(phi.size), "valid": True} for k in ("balanced", "self", "ideal")}
    lo0 = lo_of_phase(0.0)
    bg = GaussianState(np.zeros_like(signal.mean), signal.cov)
    s_mean = signal.mode_means()
    for n, ph in enumerate(phi):
        lo_ph = lo_of_phase(ph)
        ideal_ref = np.exp(1j * ph) * ref_psi
        if limit:
            res = {
                "balanced": _strong_limit(s_mean, np.exp(1j * ph) * lo0, signal.cov),
                "self": _strong_limit(s_mean, lo_ph, signal.cov),
                "ideal": _strong_limit(s_mean, ideal_ref, signal.cov),
            }
            for k, (x, v) in res.items():
                out[k]["X"][n], out[k]["V"][n] = x, v
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            res = {
                "balanced": simulate_balanced(signal, bg.displaced(lo0), ph),
                "self": simulate_self(signal, lo_ph),
                "ideal": simulate_self(signal, ideal_ref),
            }
        for k, r in res.items():
            out[k]["X"][n], out[k]["V"][n] = r.X, r.V
            out[k]["valid"] &= r.valid
    if not limit and not all(v["valid"] for v in out.values()):
        warnings.warn(f"oscillator amplitude {lo_amplitude:g} is outside the strong-oscillator regime",
                      RuntimeWarning, stacklevel=3)
    return out


def oracle_mr(wavepacket, A, B, grid, a, signal_magnitude, psi, phi, lo_amplitude=DEFAULT_LO, limit=False):
    """Oracle traces for an inertial packet seen from the accelerated left wedge.

    The signal and oscillator are coherent states of the packet mode
    ``sum_j sqrt(w_j) (A_j c_j + B_j d_j)`` in the Unruh modes; the per-node
    two-mode squeeze maps them to Rindler modes and the right wedge is
    traced out.

    Parameters
    ----------
    wavepacket : GaussianWavePacket
        Unused except as a label; the mode is defined by ``A`` and ``B``.
    A, B : ndarray
        Unruh overlaps on ``grid``.
    grid : FrequencyGrid
        ``M`` observed frequencies.
    a : float
    signal_magnitude, psi : float
    phi : ndarray
    lo_amplitude : float
    limit : bool
        Return the strong-oscillator limit instead of finite-amplitude values.

    Returns
    -------
    dict
        Scheme -> {"X", "V", "valid"}.
    """
    m = len(grid)
    sw = np.sqrt(grid.weights)
    frame = discretize_frame_change(grid, a)
    left = list(range(m, 2 * m))

    def observed(amplitude):
        unruh = vacuum(2 * m).displaced(np.concatenate([amplitude * sw * np.conj(A),
                                                        amplitude * sw * np.conj(B)]))
        return frame.apply(unruh).select(left)

    signal = observed(signal_magnitude * np.exp(1j * psi))
    lo_of_phase = lambda ph: observed(lo_amplitude * np.exp(1j * ph)).mode_means()
    ref_psi = lo_of_phase(psi)
    return _traces(signal, lo_of_phase, ref_psi, np.asarray(phi, dtype=float), lo_amplitude, limit)


def delay_mean_map(g, source_grid, grid, t, a):
    """Quadrature map from source (right Rindler) modes to delayed left-wedge modes.

    Built from the regular kernels ``alpha_b``, ``beta_b`` with
    ``sqrt(w_j W_i)`` weights: ``b_j = sum_i (alpha_b a_i + beta_b a_i^dag)``.
    """
    c = rindler_delay_coeffs(grid.nodes, source_grid.nodes, t, a)
    wts = np.sqrt(np.outer(grid.weights, source_grid.weights))
    return _real_map(wts * c.alpha_b, wts * c.beta_b)


def oracle_rdr(g, source_grid, grid, t, a, signal_magnitude, psi, phi, lo_amplitude=DEFAULT_LO, limit=False):
    """Oracle traces for a Rindler packet seen from the delayed left wedge.

    The packet ``a_g = int g a`` is discretised on ``source_grid``
    (``<a_i> = beta sqrt(W_i) conj(g_i)``); its mean is propagated with
    :func:`delay_mean_map`; the delayed left-wedge modes carry the thermal
    covariance of the Minkowski vacuum.
    """
    if t <= 0:
        raise DomainError("oracle_rdr expects t > 0")
    T = delay_mean_map(g, source_grid, grid, t, a)
    gs = np.sqrt(source_grid.weights) * np.conj(evaluate(g, source_grid.nodes))
    _, sh = squeezing_cosh_sinh(grid.nodes, a)
    bath = thermal(sh**2)

    def observed_mean(amplitude):
        return _mode_mean(T @ _quad_mean(amplitude * gs))

    signal = bath.displaced(observed_mean(signal_magnitude * np.exp(1j * psi)))
    lo_of_phase = lambda ph: observed_mean(lo_amplitude * np.exp(1j * ph))
    ref_psi = lo_of_phase(psi)
    return _traces(signal, lo_of_phase, ref_psi, np.asarray(phi, dtype=float), lo_amplitude, limit)
