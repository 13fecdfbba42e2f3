"""Exception types shared across the library."""


class SafeFilterError(Exception):
    """Base class for library errors."""


class InsideObstacleError(SafeFilterError):
    """State penetrated the minimum-distance shell; repulsive potential undefined."""


class DegenerateDirectionError(SafeFilterError):
    """A direction vector degenerated to zero (e.g. state coincides with an obstacle center)."""


class InfeasibleConstraintError(SafeFilterError):
    """The safety constraint cannot be satisfied by any input at this state."""


class NoObstacleInViewError(SafeFilterError):
    """A scan produced no hits, so no barrier can be built from it."""
