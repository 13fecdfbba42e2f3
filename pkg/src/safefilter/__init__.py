"""Safety-filtering control library: potential fields, barrier functions,
and a planar obstacle-avoidance simulator with teleoperation support."""

from .core import (
    Circle,
    Segment,
    Scene,
    ControllerConfig,
    distance_to_obstacle,
    closest_obstacle,
)
from .errors import (
    SafeFilterError,
    InsideObstacleError,
    DegenerateDirectionError,
    InfeasibleConstraintError,
    NoObstacleInViewError,
)
from .cbf import BarrierEval, LinearClassK, filter_single_integrator, filter_affine

__version__ = "0.1.0"

__all__ = [
    "Circle",
    "Segment",
    "Scene",
    "ControllerConfig",
    "distance_to_obstacle",
    "closest_obstacle",
    "SafeFilterError",
    "InsideObstacleError",
    "DegenerateDirectionError",
    "InfeasibleConstraintError",
    "NoObstacleInViewError",
    "BarrierEval",
    "LinearClassK",
    "filter_single_integrator",
    "filter_affine",
]
