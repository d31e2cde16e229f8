"""Quadrature grids over positive frequency (or wavenumber) labels."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError

__all__ = ["FrequencyGrid", "log_grid", "panel_grid", "cell_edges"]


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Nodes and positive quadrature weights on ``[omega_min, omega_max]``.

    ``integrate(values)`` is the grid quadrature ``sum(weights * values)``.
    ``spacing`` records how the nodes were laid out (``"log"``, ``"panel"``)
    and is informational only.
    """

    nodes: np.ndarray
    weights: np.ndarray
    omega_min: float
    omega_max: float
    spacing: str = "log"

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValidationError("nodes and weights must be 1-d arrays of equal length")
        if nodes.size == 0:
            raise ValidationError("grid has no nodes")
        if np.any(np.diff(nodes) <= 0):
            raise ValidationError("grid nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise ValidationError("grid weights must be positive")
        if not 0 < self.omega_min <= nodes[0] or nodes[-1] > self.omega_max * (1 + 1e-12):
            raise ValidationError("grid nodes must lie within [omega_min, omega_max]")

    def __len__(self):
        return self.nodes.size

    def integrate(self, values, axis=-1):
        values = np.asarray(values)
        return np.tensordot(values, self.weights, axes=([axis], [0]))

    def norm(self, values):
        """L2 grid norm ``sqrt(sum w |v|^2)``."""
        return float(np.sqrt(self.integrate(np.abs(values) ** 2)))


def log_grid(omega_min, omega_max, n):
    """Log-spaced grid with trapezoidal weights in ``u = log(omega)``.

    The weight of an interior node is ``omega_i * h`` (``h`` the log step);
    end nodes get half of that.
    """
    if not 0 < omega_min < omega_max:
        raise DomainError("need 0 < omega_min < omega_max")
    if n < 2:
        raise DomainError("a log grid needs at least two nodes")
    u = np.linspace(np.log(omega_min), np.log(omega_max), n)
    h = u[1] - u[0]
    nodes = np.exp(u)
    nodes[0], nodes[-1] = omega_min, omega_max
    weights = nodes * h
    weights[[0, -1]] *= 0.5
    return FrequencyGrid(nodes, weights, float(omega_min), float(omega_max), "log")


def panel_grid(lo, hi, max_width, order=16, log=True):
    """Composite Gauss-Legendre grid on ``[lo, hi]``.

    With ``log=True`` the panels are uniform in ``u = log(x)`` and
    ``max_width`` bounds the panel width in ``u``; the returned weights
    include the Jacobian ``x``.
    """
    if not 0 < lo < hi:
        raise DomainError("need 0 < lo < hi")
    if max_width <= 0:
        raise DomainError("max_width must be positive")
    a, b = (np.log(lo), np.log(hi)) if log else (lo, hi)
    npanel = max(1, int(np.ceil((b - a) / max_width)))
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, npanel + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    if log:
        nodes = np.exp(t)
        weights = wt * nodes
    else:
        nodes, weights = t, wt
    return FrequencyGrid(nodes, weights, float(lo), float(hi), "panel")


def cell_edges(grid):
    """Cell boundaries around each node; geometric midpoints for log grids."""
    x = grid.nodes
    if grid.spacing == "log":
        mids = np.sqrt(x[1:] * x[:-1])
    else:
        mids = 0.5 * (x[1:] + x[:-1])
    return np.concatenate([[grid.omega_min], mids, [grid.omega_max]])
