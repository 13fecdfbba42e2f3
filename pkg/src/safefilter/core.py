"""Geometric primitives, scenes, and controller configuration."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Tuple, Union

import numpy as np

from .errors import SafeFilterError


def as_vec(v) -> np.ndarray:
    """Coerce to a 1-D float64 array."""
    a = np.asarray(v, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {a.shape}")
    return a


def check_dims(*vecs: np.ndarray) -> int:
    n = len(vecs[0])
    for v in vecs[1:]:
        if len(v) != n:
            raise ValueError(f"dimension mismatch: {n} vs {len(v)}")
    return n


@dataclass(frozen=True)
class Circle:
    """Circular obstacle; radius 0 models a point obstacle."""

    center: np.ndarray
    radius: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", as_vec(self.center))
        if self.radius < 0:
            raise ValueError("circle radius must be >= 0")

    def distance(self, x: np.ndarray) -> float:
        """Signed distance from x to the circle surface (negative inside)."""
        x = as_vec(x)
        check_dims(x, self.center)
        return float(np.linalg.norm(x - self.center)) - self.radius

    def closest_point(self, x: np.ndarray) -> np.ndarray:
        """Closest point of the obstacle's skeleton (the center)."""
        return self.center


@dataclass(frozen=True)
class Segment:
    """Wall segment with optional thickness (full width across the centerline)."""

    a: np.ndarray
    b: np.ndarray
    thickness: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", as_vec(self.a))
        object.__setattr__(self, "b", as_vec(self.b))
        check_dims(self.a, self.b)
        if np.array_equal(self.a, self.b):
            raise ValueError("segment endpoints must be distinct")
        if self.thickness < 0:
            raise ValueError("segment thickness must be >= 0")

    def closest_point(self, x: np.ndarray) -> np.ndarray:
        """Closest point on the centerline segment."""
        x = as_vec(x)
        ab = self.b - self.a
        t = float(np.dot(x - self.a, ab) / np.dot(ab, ab))
        t = min(1.0, max(0.0, t))
        return self.a + t * ab

    def distance(self, x: np.ndarray) -> float:
        """Signed distance from x to the segment surface (negative inside the slab)."""
        x = as_vec(x)
        check_dims(x, self.a)
        return float(np.linalg.norm(x - self.closest_point(x))) - 0.5 * self.thickness


Obstacle = Union[Circle, Segment]


@dataclass(frozen=True)
class Scene:
    """Goal plus obstacles plus a bounding box for rendering and ray termination."""

    goal: np.ndarray
    obstacles: Tuple[Obstacle, ...]
    bounds: Tuple[float, float, float, float] = (-2.0, -4.0, 8.0, 7.0)  # xmin, ymin, xmax, ymax

    def __post_init__(self):
        object.__setattr__(self, "goal", as_vec(self.goal))
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        for obs in self.obstacles:
            if obs.distance(self.goal) <= 0:
                raise ValueError("goal must lie strictly outside every obstacle")

    def clearance(self, x: np.ndarray) -> float:
        """Distance from x to the nearest obstacle surface; +inf for an empty scene."""
        if not self.obstacles:
            return float("inf")
        return min(obs.distance(x) for obs in self.obstacles)


@dataclass(frozen=True)
class ControllerConfig:
    """Gains and shaping parameters shared by the APF and CBF controllers."""

    k_att: float = 1.0            # attractive gain
    k_rep: float = 1.0            # repulsive gain
    rho0: float = 1.0             # region of influence [m]
    d_obs: float = 0.5            # safety margin subtracted from obstacle distance [m]
    alpha: float = 1.0            # linear class-K gain [1/s]
    delta: float = 0.001          # barrier level offset, in (0, 1)
    track_gain: float = 4.0       # velocity-tracking gain [1/s]
    v_max: float = 2.0            # command saturation [m/s]

    def __post_init__(self):
        for name in ("k_att", "k_rep", "rho0", "alpha", "track_gain", "v_max"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")
        if self.d_obs < 0:
            raise ValueError("d_obs must be >= 0")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")

    def with_overrides(self, **kwargs) -> "ControllerConfig":
        return replace(self, **kwargs)


def distance_to_obstacle(x, obs: Obstacle) -> float:
    """Signed Euclidean distance from a point to an obstacle surface."""
    return obs.distance(as_vec(x))


def closest_obstacle(x, scene: Scene) -> Tuple[int, float]:
    """Index and distance of the nearest obstacle; ties go to the lowest index."""
    if not scene.obstacles:
        raise SafeFilterError("scene has no obstacles")
    x = as_vec(x)
    best_i, best_d = 0, scene.obstacles[0].distance(x)
    for i, obs in enumerate(scene.obstacles[1:], start=1):
        d = obs.distance(x)
        if d < best_d:
            best_i, best_d = i, d
    return best_i, best_d


def saturate(v: np.ndarray, v_max: float) -> np.ndarray:
    """Clip a vector to the given norm."""
    norm = float(np.linalg.norm(v))
    if norm > v_max:
        return v * (v_max / norm)
    return v
