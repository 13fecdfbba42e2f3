"""Simulated planar LIDAR over scene geometry.

The per-beam ray casting runs in a compiled extension when available and
falls back to a vectorized numpy kernel otherwise; `KERNEL` names the one
in use.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .cbf import BarrierEval
from .core import Circle, Scene, Segment, as_vec
from .errors import NoObstacleInViewError, SafeFilterError

try:
    from ._raycast import cast_rays

    KERNEL = "cython"
except ImportError:  # extension not built; use the numpy kernel
    from ._raycast_py import cast_rays

    KERNEL = "numpy"


@dataclass(frozen=True)
class LidarSpec:
    beam_count: int = 1080
    fov: float = 1.5 * np.pi  # 270 degrees
    max_range: float = 10.0
    mount_yaw: float = 0.0

    def __post_init__(self):
        if self.beam_count <= 0:
            raise ValueError("beam_count must be > 0")
        if not 0 < self.fov <= 2 * np.pi:
            raise ValueError("fov must lie in (0, 2*pi]")
        if self.max_range <= 0:
            raise ValueError("max_range must be > 0")


@dataclass(frozen=True)
class Scan:
    """One full sweep: absolute beam angles, ranges, and hit flags."""

    origin: np.ndarray
    angles: np.ndarray
    ranges: np.ndarray
    hits: np.ndarray
    max_range: float

    def hit_points(self) -> np.ndarray:
        """(m, 2) array of world-frame hit points."""
        a = self.angles[self.hits]
        r = self.ranges[self.hits]
        return self.origin[None, :] + np.stack([r * np.cos(a), r * np.sin(a)], axis=1)


def scene_arrays(scene: Scene):
    """Pack scene obstacles into the kernel's circle/segment arrays."""
    circles = [[o.center[0], o.center[1], o.radius] for o in scene.obstacles if isinstance(o, Circle)]
    segments = [
        [o.a[0], o.a[1], o.b[0], o.b[1], 0.5 * o.thickness]
        for o in scene.obstacles
        if isinstance(o, Segment)
    ]
    return (
        np.asarray(circles, dtype=np.float64).reshape(-1, 3),
        np.asarray(segments, dtype=np.float64).reshape(-1, 5),
    )


def scan(origin, heading: float, scene: Scene, spec: LidarSpec = LidarSpec()) -> Scan:
    """Cast evenly spaced beams across the field of view around the heading."""
    origin = as_vec(origin)
    if scene.clearance(origin) <= 0:
        raise SafeFilterError("scan origin is inside an obstacle")
    angles = heading + spec.mount_yaw + np.linspace(
        -0.5 * spec.fov, 0.5 * spec.fov, spec.beam_count
    )
    circles, segments = scene_arrays(scene)
    ranges = np.asarray(cast_rays(origin, angles, circles, segments, spec.max_range))
    hits = ranges < spec.max_range - 1e-9
    ranges = np.where(hits, ranges, spec.max_range)
    return Scan(origin=origin, angles=angles, ranges=ranges, hits=hits, max_range=spec.max_range)


def scan_barrier(s: Scan, d_obs: float) -> BarrierEval:
    """Distance barrier over scan hit points: h = min range - d_obs."""
    if not np.any(s.hits):
        raise NoObstacleInViewError("scan produced no hits")
    idx = int(np.argmin(np.where(s.hits, s.ranges, np.inf)))
    r = float(s.ranges[idx])
    a = float(s.angles[idx])
    # hit point is at origin + r * (cos a, sin a); gradient points back at the origin
    grad = -np.array([np.cos(a), np.sin(a)])
    return BarrierEval(h=r - d_obs, grad=grad)
