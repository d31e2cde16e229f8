"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function."""


class QuadratureError(RuntimeError):
    """A numerical integral failed to reach its accuracy target.

    The achieved residual is stored on ``residual``.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ValidationError(ValueError):
    """An input object violates one of its invariants."""


class DiscretizationError(RuntimeError):
    """A discretized transform is too far from symplectic; refine the grid."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DegenerateScenarioError(RuntimeError):
    """The signal has no overlap with the observed wedge."""
