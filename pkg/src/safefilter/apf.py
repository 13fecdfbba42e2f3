"""Attractive/repulsive potentials and the classical gradient-descent controller.

Two repulsive variants are provided: the original inverse-distance form
(finite region of influence, blows up at the margin shell) and a Gaussian
force field suitable for dense scan points.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .core import ControllerConfig, Scene, as_vec, check_dims, saturate
from .errors import DegenerateDirectionError, InsideObstacleError


def attractive_value(x, goal, k_att: float) -> float:
    """Quadratic bowl centered on the goal: (k_att/2) * ||x - goal||^2."""
    x, goal = as_vec(x), as_vec(goal)
    check_dims(x, goal)
    d = x - goal
    return 0.5 * k_att * float(np.dot(d, d))


def attractive_gradient(x, goal, k_att: float) -> np.ndarray:
    """Gradient of the attractive potential: k_att * (x - goal)."""
    x, goal = as_vec(x), as_vec(goal)
    check_dims(x, goal)
    return k_att * (x - goal)


def repulsive_value(rho: float, k_rep: float, rho0: float) -> float:
    """Inverse-distance repulsive potential of the shell distance rho.

    Zero beyond the region of influence rho0; unbounded as rho -> 0+.
    """
    if rho <= 0:
        raise InsideObstacleError(f"shell distance must be > 0, got {rho}")
    if rho > rho0:
        return 0.0
    return 0.5 * k_rep * (1.0 / rho - 1.0 / rho0) ** 2


def repulsive_gradient(x, x_obs, rho: float, k_rep: float, rho0: float) -> np.ndarray:
    """Gradient of the inverse-distance repulsive potential at x.

    The field is radial about the obstacle point: the gradient is parallel
    to (x - x_obs) and the resulting force -grad pushes away from it.
    """
    x, x_obs = as_vec(x), as_vec(x_obs)
    check_dims(x, x_obs)
    if rho <= 0:
        raise InsideObstacleError(f"shell distance must be > 0, got {rho}")
    if rho > rho0:
        return np.zeros_like(x)
    diff = x - x_obs
    dist = float(np.linalg.norm(diff))
    if dist == 0.0:
        raise DegenerateDirectionError("state coincides with obstacle point")
    return -(k_rep / rho**2) * (1.0 / rho - 1.0 / rho0) * diff / dist


def gaussian_repulsive_force(x, x_obs, k_rep: float, rho0: float) -> np.ndarray:
    """Gaussian repulsive force (x - x_obs) * k_rep * exp(-rho^2 / rho0).

    Well defined everywhere, including x == x_obs where it vanishes.
    """
    x, x_obs = as_vec(x), as_vec(x_obs)
    check_dims(x, x_obs)
    diff = x - x_obs
    rho_sq = float(np.dot(diff, diff))
    return diff * (k_rep * np.exp(-rho_sq / rho0))


def gaussian_force_from_points(x: np.ndarray, points: np.ndarray, k_rep: float, rho0: float) -> np.ndarray:
    """Summed Gaussian repulsion from an (m, n) array of obstacle points."""
    x = as_vec(x)
    points = np.asarray(points, dtype=np.float64)
    if points.size == 0:
        return np.zeros_like(x)
    diff = x[None, :] - points
    rho_sq = np.einsum("ij,ij->i", diff, diff)
    weights = k_rep * np.exp(-rho_sq / rho0)
    return weights @ diff


def scene_repulsion(x: np.ndarray, scene: Scene, cfg: ControllerConfig) -> np.ndarray:
    """Summed inverse-distance repulsive gradient over all scene obstacles."""
    total = np.zeros_like(x)
    for obs in scene.obstacles:
        rho = obs.distance(x) - cfg.d_obs
        if rho > cfg.rho0:
            continue
        total += repulsive_gradient(x, obs.closest_point(x), rho, cfg.k_rep, cfg.rho0)
    return total


def apf_velocity(
    x,
    scene: Scene,
    cfg: ControllerConfig,
    scan_points: Optional[np.ndarray] = None,
    variant: str = "khatib",
) -> np.ndarray:
    """Gradient-descent velocity command, saturated to cfg.v_max.

    variant "khatib" sums inverse-distance repulsion over scene obstacles;
    variant "gaussian" sums Gaussian forces over scan_points (or, absent a
    scan, over obstacle closest points).
    """
    x = as_vec(x)
    v = -attractive_gradient(x, scene.goal, cfg.k_att)
    if variant == "khatib":
        v -= scene_repulsion(x, scene, cfg)
    elif variant == "gaussian":
        if scan_points is not None:
            v += gaussian_force_from_points(x, scan_points, cfg.k_rep, cfg.rho0)
        else:
            for obs in scene.obstacles:
                v += gaussian_repulsive_force(x, obs.closest_point(x), cfg.k_rep, cfg.rho0)
    else:
        raise ValueError(f"unknown repulsion variant: {variant!r}")
    return saturate(v, cfg.v_max)
