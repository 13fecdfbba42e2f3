"""Shared fixtures and oracles for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from safefilter.core import Circle, Scene, Segment


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def central_diff(f, x: np.ndarray, eps: float = 1e-6) -> np.ndarray:
    """Central finite-difference gradient oracle."""
    g = np.zeros_like(x, dtype=np.float64)
    for i in range(len(x)):
        dx = np.zeros_like(g)
        dx[i] = eps
        g[i] = (f(x + dx) - f(x - dx)) / (2 * eps)
    return g


def random_scene(rng, n_obstacles: int = 3, clear_point=None, clear_radius: float = 0.6) -> Scene:
    """Random circle/segment scene whose goal (and optional extra point) stay clear."""
    goal = rng.uniform(6.0, 9.0, 2)
    obstacles = []
    while len(obstacles) < n_obstacles:
        if rng.random() < 0.7:
            obs = Circle(center=rng.uniform(-3, 5, 2), radius=float(rng.uniform(0.1, 0.7)))
        else:
            a = rng.uniform(-3, 5, 2)
            b = a + rng.uniform(-2, 2, 2)
            if np.allclose(a, b):
                continue
            obs = Segment(a=a, b=b, thickness=float(rng.uniform(0.0, 0.3)))
        if obs.distance(goal) <= clear_radius:
            continue
        if clear_point is not None and obs.distance(np.asarray(clear_point)) <= clear_radius:
            continue
        obstacles.append(obs)
    return Scene(goal=goal, obstacles=tuple(obstacles), bounds=(-5, -5, 10, 10))
