"""Bogoliubov coefficients between Rindler modes and Minkowski-time-shifted ones.

Conventions
-----------
``t`` is the signed Minkowski time shift.  Scalars are ``x = w/a``,
``x' = w'/a``, ``D = x - x'``, ``S = x + x'`` and ``L = a|t|``.

The Unruh-mode coefficients (``A, B, C, D``) are the k-integrals
``int dk/k (k/a)^(i nu) exp(-i k t)`` evaluated in closed form.  ``A`` and
``D`` are distributions: at ``w = w'`` they carry ``delta(w - w')/2`` plus a
principal-value ``1/(w - w')`` kernel.  The same holds for the Rindler
coefficients ``alpha_a`` and ``gamma_b``.  Away from the diagonal every
kernel below is an ordinary function.

For ``t > 0`` the eight Rindler coefficients reduce to gamma-function
ratios (``gamma_a = delta_a = 0`` exactly); ``t < 0`` follows from the
conjugation relations

    alpha_a(t) = conj(gamma_b(-t))   gamma_a(t) = conj(alpha_b(-t))
    beta_a(t)  = conj(delta_b(-t))   delta_a(t) = conj(beta_b(-t))
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import sici

from .errors import DomainError, QuadratureError
from .special_fn import log_gamma_complex as lg
from .special_fn import log_sinh, squeezing_cosh_sinh, z_factor
from .grids import panel_grid
from .wavepackets import TRUNCATION_WIDTHS, evaluate

__all__ = [
    "DelayedUnruhCoeffs",
    "DelayedRindlerCoeffs",
    "DelayedOverlaps",
    "unruh_time_coeffs",
    "rindler_delay_direct",
    "rindler_delay_coeffs",
    "pv_cell_integral",
    "unruh_a_matrix",
    "alpha_a_matrix",
    "gamma_b_matrix",
    "regular_matrix",
    "packet_grid",
    "delayed_overlap",
    "NAMES",
]

PACKET_PANEL_WIDTH = 0.4
_CHUNK = 256

NAMES = ("alpha_a", "beta_a", "gamma_a", "delta_a", "alpha_b", "beta_b", "gamma_b", "delta_b")


@dataclass(frozen=True, eq=False)
class DelayedUnruhCoeffs:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    t: float


@dataclass(frozen=True, eq=False)
class DelayedRindlerCoeffs:
    """Pointwise kernels ``X[i, j] = X(w_i, w'_j)`` at signed time ``t``."""

    alpha_a: np.ndarray
    beta_a: np.ndarray
    gamma_a: np.ndarray
    delta_a: np.ndarray
    alpha_b: np.ndarray
    beta_b: np.ndarray
    gamma_b: np.ndarray
    delta_b: np.ndarray
    t: float

    def as_dict(self):
        return {n: getattr(self, n) for n in NAMES}


@dataclass(frozen=True, eq=False)
class DelayedOverlaps:
    """Packet-integrated coefficients on the observed grid.

    ``alpha_a = int dw conj(g) alpha_a(w', w)``, ``beta_a = int dw g beta_a(w', w)``
    and likewise for the left wedge.
    """

    grid: object
    t: float
    a: float
    alpha_a: np.ndarray
    beta_a: np.ndarray
    alpha_b: np.ndarray
    beta_b: np.ndarray

    def commutator_sum(self):
        dens = (np.abs(self.alpha_a) ** 2 - np.abs(self.beta_a) ** 2
                + np.abs(self.alpha_b) ** 2 - np.abs(self.beta_b) ** 2)
        return float(self.grid.integrate(dens))


def _check(omega, omega_p, t, a):
    if t == 0:
        raise DomainError("t = 0 is a distributional limit; use a non-zero time shift")
    if a <= 0:
        raise DomainError("acceleration must be positive")
    if np.any(np.asarray(omega) <= 0) or np.any(np.asarray(omega_p) <= 0):
        raise DomainError("frequencies must be positive")


def _mesh(omega, omega_p):
    """Outer grid for two 1-d inputs, plain broadcasting otherwise (not materialised)."""
    w = np.asarray(omega, dtype=float)
    wp = np.asarray(omega_p, dtype=float)
    if w.ndim == 1 and wp.ndim == 1:
        w = w[:, None]
    return w, wp


def unruh_time_coeffs(omega, omega_p, t, a):
    """Direct Unruh-mode coefficients ``(A, B, C, D)`` for scalars or an outer grid.

    When both arguments are 1-d arrays the result is a matrix indexed
    ``[i, j] -> (omega[i], omega_p[j])``.

    Raises
    ------
    DomainError
        For ``t = 0`` or on the diagonal ``omega == omega_p`` (pole of A, D).
    """
    _check(omega, omega_p, t, a)
    w, wp = _mesh(omega, omega_p)
    if np.any(w == wp):
        raise DomainError("A and D have a pole at omega == omega_p")
    s = np.sign(t)
    L = a * abs(t)
    dl, sm = (w - wp) / a, (w + wp) / a
    zw, zp = z_factor(w, a), z_factor(wp, a)
    logL = np.log(L)
    A = np.conj(zw) * zp * np.exp(-s * np.pi * dl / 2 + 1j * dl * logL + lg(-1j * dl))
    B = np.conj(zw) * np.conj(zp) * np.exp(-s * np.pi * sm / 2 + 1j * sm * logL + lg(-1j * sm))
    C = zw * zp * np.exp(s * np.pi * sm / 2 - 1j * sm * logL + lg(1j * sm))
    D = zw * np.conj(zp) * np.exp(s * np.pi * dl / 2 - 1j * dl * logL + lg(1j * dl))
    return DelayedUnruhCoeffs(A, B, C, D, float(t))


def rindler_delay_direct(omega, omega_p, t, a):
    """All eight Rindler coefficients from cosh/sinh combinations of A..D.

    Loses accuracy to cancellation once the frequencies exceed a few ``a``;
    kept as an independent route for checking :func:`rindler_delay_coeffs`.
    """
    w, wp = _mesh(omega, omega_p)
    ch, sh = squeezing_cosh_sinh(w, a)
    chp, shp = squeezing_cosh_sinh(wp, a)
    fwd = unruh_time_coeffs(omega, omega_p, t, a)
    bwd = unruh_time_coeffs(omega, omega_p, -t, a)

    def even(X, Y):
        return ch * chp * X - sh * shp * Y

    def odd(X, Y):
        return -ch * shp * X + sh * chp * Y

    return DelayedRindlerCoeffs(
        alpha_a=even(fwd.A, bwd.A), beta_a=odd(fwd.B, bwd.B),
        gamma_a=even(fwd.B, bwd.B), delta_a=odd(fwd.A, bwd.A),
        alpha_b=even(fwd.C, bwd.C), beta_b=odd(fwd.D, bwd.D),
        gamma_b=even(fwd.D, bwd.D), delta_b=odd(fwd.C, bwd.C),
        t=float(t),
    )


def _sinh_ratio_log(u, v):
    """log|sinh(pi u)/sinh(pi v)| and the sign of v (u > 0, v != 0)."""
    return log_sinh(np.pi * u) - log_sinh(np.pi * np.abs(v)), np.sign(v)


def _pieces(w, wp, a, L):
    x, xp = w / a, wp / a
    dl, sm = x - xp, x + xp
    logP = -np.log(2 * np.pi * np.sqrt(w * wp))
    logL = np.log(L)
    return x, xp, dl, sm, logP, logL


def _smooth_factor(dl):
    """pi D / sinh(pi D), equal to 1 at D = 0."""
    y = np.pi * np.abs(dl)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = -2.0 * y * np.exp(-y) / np.expm1(-2.0 * y)
    return np.where(y < 1e-300, 1.0, out)


def alpha_a_smooth(omega, omega_p, t, a):
    """H with ``alpha_a(|t|) = (i/2pi) H L^(iD) / (w - w') + delta/2``; H(w, w) = 1."""
    w, wp = _mesh(omega, omega_p)
    x, xp, dl, sm, logP, logL = _pieces(w, wp, a, a * abs(t))
    logH = (np.log(a) + lg(1 + 1j * x) + lg(1 - 1j * xp) - lg(1 + 1j * dl)
            + log_sinh(np.pi * xp) - np.log(np.pi * np.sqrt(w * wp)))
    return np.exp(logH) * _smooth_factor(dl)


def gamma_b_smooth(omega, omega_p, t, a):
    """H with ``gamma_b(|t|) = -(i/2pi) H L^(-iD) / (w - w') + delta/2``."""
    w, wp = _mesh(omega, omega_p)
    x, xp, dl, sm, logP, logL = _pieces(w, wp, a, a * abs(t))
    logH = (np.log(a) + lg(1 - 1j * x) + lg(1 + 1j * xp) - lg(1 - 1j * dl)
            + log_sinh(np.pi * x) - np.log(np.pi * np.sqrt(w * wp)))
    return np.exp(logH) * _smooth_factor(dl)


def unruh_a_smooth(omega, omega_p, t, a):
    """H with ``A(|t|) = (i/2pi) H L^(iD) / (w - w') + delta/2``."""
    w, wp = _mesh(omega, omega_p)
    dl = (w - wp) / a
    s = np.sign(t)
    return (2 * np.pi * a * np.conj(z_factor(w, a)) * z_factor(wp, a)
            * np.exp(-s * np.pi * dl / 2 + lg(1 - 1j * dl)))


def _positive_time(w, wp, a, L, with_h=False):
    # w and wp only need to broadcast; the 1-d gamma factors are evaluated
    # once and lg(1 - iy) = conj(lg(1 + iy)) for real y
    x, xp, dl, sm, logP, logL = _pieces(w, wp, a, L)
    off = w != wp
    dl_safe = np.where(off, dl, 1.0)
    lx, lxp = lg(1 + 1j * x), lg(1 + 1j * xp)
    lD, lS = lg(1 + 1j * dl), lg(1 + 1j * sm)
    cx, cxp, cD, cS = np.conj(lx), np.conj(lxp), np.conj(lD), np.conj(lS)

    r_a, sgn_a = _sinh_ratio_log(xp, dl_safe)
    alpha_a = sgn_a * 1j * np.exp(logP + lx + cxp - lD + r_a + 1j * dl * logL)
    r_s, _ = _sinh_ratio_log(xp, sm)
    beta_a = -1j * np.exp(logP + lx + lxp - lS + r_s + 1j * sm * logL)
    alpha_b = 1j * np.exp(logP + cx + cxp - cS - 1j * sm * logL)
    beta_b = 1j * np.exp(logP + cx + lxp - cD - 1j * dl * logL)
    r_g, sgn_g = _sinh_ratio_log(x, dl_safe)
    gamma_b = -sgn_g * 1j * np.exp(logP + cx + lxp - cD + r_g - 1j * dl * logL)
    r_d, _ = _sinh_ratio_log(x, sm)
    delta_b = -1j * np.exp(logP + cx + cxp - cS + r_d - 1j * sm * logL)

    nan = np.nan + 0j
    alpha_a = np.where(off, alpha_a, nan)
    gamma_b = np.where(off, gamma_b, nan)
    zero = np.zeros_like(alpha_b)
    out = dict(alpha_a=alpha_a, beta_a=beta_a, gamma_a=zero, delta_a=zero.copy(),
               alpha_b=alpha_b, beta_b=beta_b, gamma_b=gamma_b, delta_b=delta_b)
    if with_h:
        out["h_alpha_a"] = np.exp(np.log(a) + lx + cxp - lD + log_sinh(np.pi * xp)
                                  - np.log(np.pi * np.sqrt(w * wp))) * _smooth_factor(dl)
    return out


def rindler_delay_coeffs(omega, omega_p, t, a):
    """Rindler coefficients from the stable gamma-ratio forms.

    The singular kernels ``alpha_a`` (t > 0) and ``gamma_b`` (t > 0), and
    their partners ``gamma_b``/``alpha_a`` at t < 0, are returned as NaN on
    exact diagonal points; discretised matrices use
    :func:`alpha_a_matrix`/:func:`unruh_a_matrix` instead.
    """
    _check(omega, omega_p, t, a)
    w, wp = _mesh(omega, omega_p)
    pos = _positive_time(w, wp, a, a * abs(t))
    if t > 0:
        return DelayedRindlerCoeffs(t=float(t), **pos)
    c = {k: np.conj(v) for k, v in pos.items()}
    return DelayedRindlerCoeffs(
        alpha_a=c["gamma_b"], gamma_a=c["alpha_b"], beta_a=c["delta_b"], delta_a=c["beta_b"],
        gamma_b=c["alpha_a"], alpha_b=c["gamma_a"], delta_b=c["beta_a"], beta_b=c["delta_a"],
        t=float(t),
    )


def pv_cell_integral(s1, s2, lam):
    """``PV int_{s1}^{s2} exp(i lam s) / s ds`` in closed form (sine/cosine integrals)."""
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    if lam == 0:
        return np.log(np.abs(s2) / np.abs(s1)) + 0j
    si2, ci2 = sici(abs(lam) * np.abs(s2))
    si1, ci1 = sici(abs(lam) * np.abs(s1))
    sin_part = np.sign(lam) * (np.sign(s2) * si2 - np.sign(s1) * si1)
    return (ci2 - ci1) + 1j * sin_part


def _singular_matrix(H, grid, lam, sign):
    """Discrete operator for ``delta/2 + sign (i/2pi) PV[H e^{i lam (w_i - w)} / (w_i - w)]``.

    Rows and columns are sqrt(weight)-normalised grid modes.  The phase
    factor and 1/(w_i - w) are integrated exactly over each cell; ``H`` is
    held at its node value.
    """
    w = grid.nodes
    # node-centred cells whose width is the quadrature weight, so the self
    # cell is symmetric and the cell sizes match the mode normalisation
    half = 0.5 * grid.weights
    s_hi = w[:, None] - (w - half)[None, :]
    s_lo = w[:, None] - (w + half)[None, :]
    cell = pv_cell_integral(s_lo, s_hi, lam)
    sw = np.sqrt(grid.weights)
    M = sign * (1j / (2 * np.pi)) * H * cell * (sw[:, None] / sw[None, :])
    M[np.diag_indices_from(M)] += 0.5
    return M


def unruh_a_matrix(grid, t, a):
    """Discretised Unruh coefficient ``A(t)`` (t > 0) as a mode-to-mode matrix."""
    if t <= 0:
        raise DomainError("unruh_a_matrix expects t > 0")
    H = unruh_a_smooth(grid.nodes, grid.nodes, t, a)
    return _singular_matrix(H, grid, np.log(a * t) / a, +1)


def alpha_a_matrix(grid, t, a):
    """Discretised ``alpha_a(t)`` (t > 0) as a mode-to-mode matrix."""
    if t <= 0:
        raise DomainError("alpha_a_matrix expects t > 0")
    H = alpha_a_smooth(grid.nodes, grid.nodes, t, a)
    return _singular_matrix(H, grid, np.log(a * t) / a, +1)


def gamma_b_matrix(grid, t, a):
    """Discretised ``gamma_b(t)`` (t > 0) as a mode-to-mode matrix."""
    if t <= 0:
        raise DomainError("gamma_b_matrix expects t > 0")
    H = gamma_b_smooth(grid.nodes, grid.nodes, t, a)
    return _singular_matrix(H, grid, -np.log(a * t) / a, -1)


def regular_matrix(kernel, grid):
    """Mode-to-mode matrix ``sqrt(w_i) K_ij sqrt(w_j)`` of a regular kernel."""
    sw = np.sqrt(grid.weights)
    return sw[:, None] * kernel * sw[None, :]


def packet_grid(center, width, panel_width=PACKET_PANEL_WIDTH, order=16):
    """Gauss-Legendre panels in ``log w`` over a Rindler packet's support.

    The lower end sits at ``1e-12 * center`` rather than at the Gaussian
    cut so that the ``sqrt(w)`` behaviour near zero is integrated.
    """
    lo = max(1e-12 * center, center - TRUNCATION_WIDTHS * width)
    return panel_grid(lo, center + TRUNCATION_WIDTHS * width, panel_width, order=order, log=True)


def delayed_overlap(g, grid, t, a, source_grid=None, tol=1e-8):
    """Integrate the delayed-Rindler coefficients against a Rindler packet.

    Parameters
    ----------
    g : GaussianWavePacket
        Rindler profile, normalised on ``source_grid``.
    grid : FrequencyGrid
        Observed (delayed-frame) frequencies.
    t : float
        Minkowski time shift; must be positive.
    a : float
        Acceleration.
    source_grid : FrequencyGrid, optional
        Quadrature over the packet frequency; :func:`packet_grid` by default.
    tol : float
        Allowed change on a subset of observed nodes when the source panels
        are halved.

    Returns
    -------
    DelayedOverlaps

    Raises
    ------
    QuadratureError
        If the refinement check exceeds ``tol``.
    """
    if t <= 0:
        raise DomainError("delayed_overlap expects t > 0")
    if source_grid is None:
        source_grid = packet_grid(g.center, g.width)
    out = _overlap(g, source_grid, grid.nodes, t, a)

    idx = np.unique(np.linspace(0, grid.nodes.size - 1, 9).astype(int))
    finer = packet_grid(g.center, g.width, 0.5 * PACKET_PANEL_WIDTH)
    chk = _overlap(g, finer, grid.nodes[idx], t, a)
    residual = max(np.max(np.abs(chk[k] - out[k][idx])) for k in range(4))
    if residual > tol:
        raise QuadratureError(f"delayed_overlap did not converge (residual {residual:.3e})", residual)
    return DelayedOverlaps(grid, float(t), float(a), *out)


def _overlap(g, source_grid, wobs, t, a):
    parts = [_overlap_block(g, source_grid, wobs[s:s + _CHUNK], t, a)
             for s in range(0, wobs.size, _CHUNK)]
    return tuple(np.concatenate(c) for c in zip(*parts))


def _overlap_block(g, source_grid, wobs, t, a):
    ws, wts = source_grid.nodes, source_grid.weights
    gs = evaluate(g, ws)
    lam = np.log(a * t) / a
    pos = _positive_time(wobs[:, None], ws[None, :], a, a * t, with_h=True)

    beta_a = pos["beta_a"] @ (wts * gs)
    alpha_b = pos["alpha_b"] @ (wts * np.conj(gs))
    beta_b = pos["beta_b"] @ (wts * gs)

    # alpha_a: delta/2 + (i/2pi) PV int conj(g) H e^{i lam s}/s, s = w' - w;
    # subtract the value at w = w' and integrate that piece exactly
    u = np.conj(gs)[None, :] * pos["h_alpha_a"]
    g_obs = np.conj(_eval_or_zero(g, wobs))
    s = wobs[:, None] - ws[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        integrand = (u - g_obs[:, None]) * np.exp(1j * lam * s) / s
    integrand = np.where(s == 0, 0.0, integrand)
    pv = integrand @ wts
    pv += g_obs * pv_cell_integral(wobs - source_grid.omega_max, wobs - source_grid.omega_min, lam)
    alpha_a = 0.5 * g_obs + (1j / (2 * np.pi)) * pv
    return alpha_a, beta_a, alpha_b, beta_b


def _eval_or_zero(g, w):
    lo, hi = g.support
    inside = (w >= lo) & (w <= hi)
    out = np.zeros(w.shape, dtype=complex)
    out[inside] = evaluate(g, w[inside])
    return out
