"""Barrier constructors and the closed-form min-norm safety filter.

The filter solves, in closed form, the single-constraint QP

    min ||u - u_des||^2   s.t.   dh/dt(x, u) >= -alpha(h)

by projecting the desired input onto the constraint halfspace whenever the
desired input violates it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from . import apf
from .core import ControllerConfig, Scene, as_vec, closest_obstacle, saturate
from .errors import DegenerateDirectionError, InfeasibleConstraintError


@dataclass(frozen=True)
class BarrierEval:
    """Barrier value and spatial gradient at one state. Safe set is {h >= 0}."""

    h: float
    grad: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "grad", as_vec(self.grad))
        if not np.all(np.isfinite(self.grad)) or not np.isfinite(self.h):
            raise ValueError("barrier value and gradient must be finite")


@dataclass(frozen=True)
class LinearClassK:
    """Linear extended class-K function alpha(r) = gain * r."""

    gain: float = 1.0

    def __post_init__(self):
        if self.gain <= 0:
            raise ValueError("class-K gain must be > 0")

    def __call__(self, r: float) -> float:
        return self.gain * r


@dataclass(frozen=True)
class AffinePlant:
    """Control-affine dynamics dx/dt = f(x) + g(x) u."""

    f: Callable[[np.ndarray], np.ndarray]
    g: Callable[[np.ndarray], np.ndarray]


def distance_barrier(x, scene: Scene, d_obs: float) -> BarrierEval:
    """Distance barrier: h = (distance to the nearest obstacle) - d_obs.

    The gradient is the unit vector from the nearest obstacle point toward x.
    Ties between obstacles resolve to the lowest index.
    """
    x = as_vec(x)
    idx, dist = closest_obstacle(x, scene)
    nearest = scene.obstacles[idx].closest_point(x)
    diff = x - nearest
    norm = float(np.linalg.norm(diff))
    if norm == 0.0:
        raise DegenerateDirectionError("state coincides with the nearest obstacle point")
    return BarrierEval(h=dist - d_obs, grad=diff / norm)


def barrier_from_apf(u_rep: float, grad_u_rep, delta: float) -> BarrierEval:
    """Reciprocal barrier built from a repulsive potential.

    h = 1/(1 + u_rep) - delta, so h > 0 wherever the repulsion is mild and
    h -> -delta as the potential blows up at the obstacle shell.
    """
    if u_rep < 0:
        raise ValueError("repulsive potential must be >= 0")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    grad_u_rep = as_vec(grad_u_rep)
    denom = (1.0 + u_rep) ** 2
    return BarrierEval(h=1.0 / (1.0 + u_rep) - delta, grad=-grad_u_rep / denom)


def filter_single_integrator(
    v_des, be: BarrierEval, alpha: LinearClassK
) -> Tuple[np.ndarray, bool]:
    """Min-norm safety filter for velocity-controlled motion.

    Returns the desired velocity unchanged when it already satisfies
    grad_h . v >= -alpha(h); otherwise projects it onto that halfspace's
    boundary, making the constraint exactly active.
    """
    v_des = as_vec(v_des)
    grad = be.grad
    gg = float(np.dot(grad, grad))
    if gg == 0.0:
        raise DegenerateDirectionError("barrier gradient is zero")
    psi = float(np.dot(grad, v_des)) + alpha(be.h)
    if psi >= 0:
        return v_des, False
    return v_des - grad * (psi / gg), True


def filter_affine(
    u_des, plant: AffinePlant, x, be: BarrierEval, alpha: LinearClassK
) -> Tuple[np.ndarray, bool]:
    """Min-norm safety filter for a control-affine plant.

    Uses the Lie derivatives Lf_h = grad_h . f(x) and Lg_h = grad_h . g(x);
    raises InfeasibleConstraintError when the input cannot influence h and
    the drift alone violates the constraint.
    """
    u_des = as_vec(u_des)
    x = as_vec(x)
    f_x = as_vec(plant.f(x))
    g_x = np.atleast_2d(np.asarray(plant.g(x), dtype=np.float64))
    lf_h = float(np.dot(be.grad, f_x))
    lg_h = be.grad @ g_x
    lg_norm_sq = float(np.dot(lg_h, lg_h))
    psi = lf_h + float(np.dot(lg_h, u_des)) + alpha(be.h)
    if psi >= 0:
        return u_des, False
    if lg_norm_sq == 0.0:
        raise InfeasibleConstraintError(
            "input does not affect the barrier and drift violates the constraint"
        )
    return u_des - lg_h * (psi / lg_norm_sq), True


def apf_barrier(x, scene: Scene, cfg: ControllerConfig) -> BarrierEval:
    """Barrier derived from the summed inverse-distance repulsive potential."""
    x = as_vec(x)
    u_rep = 0.0
    grad_u = np.zeros_like(x)
    for obs in scene.obstacles:
        rho = obs.distance(x) - cfg.d_obs
        u_rep += apf.repulsive_value(rho, cfg.k_rep, cfg.rho0)
        if rho <= cfg.rho0:
            grad_u += apf.repulsive_gradient(x, obs.closest_point(x), rho, cfg.k_rep, cfg.rho0)
    return barrier_from_apf(u_rep, grad_u, cfg.delta)


def apf_cbf_velocity(x, scene: Scene, cfg: ControllerConfig) -> np.ndarray:
    """Pointwise-optimal blend of the attractive pull and the repulsion barrier.

    The attractive gradient (negated) is the desired velocity; the barrier
    built from the repulsive potential filters it. On the plateau where the
    repulsion vanishes the gradient is zero but h = 1 - delta > 0, so the
    constraint holds strictly and the filter is bypassed.
    """
    x = as_vec(x)
    v_des = -apf.attractive_gradient(x, scene.goal, cfg.k_att)
    be = apf_barrier(x, scene, cfg)
    if float(np.dot(be.grad, be.grad)) == 0.0:
        return saturate(v_des, cfg.v_max)
    v_star, _ = filter_single_integrator(v_des, be, LinearClassK(cfg.alpha))
    return saturate(v_star, cfg.v_max)
