"""Plant models that close the loop around velocity commands."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import as_vec, check_dims, saturate


@dataclass(frozen=True)
class PlantState:
    position: np.ndarray
    velocity: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position", as_vec(self.position))
        object.__setattr__(self, "velocity", as_vec(self.velocity))
        check_dims(self.position, self.velocity)

    @classmethod
    def at_rest(cls, position) -> "PlantState":
        p = as_vec(position)
        return cls(position=p, velocity=np.zeros_like(p))


@dataclass(frozen=True)
class SingleIntegrator:
    """Velocity commands are tracked exactly."""


@dataclass(frozen=True)
class DoubleIntegrator:
    """Acceleration u = -gain * (v - v_cmd), clamped to a_max."""

    gain: float = 4.0
    a_max: float = 10.0

    def __post_init__(self):
        if self.gain <= 0 or self.a_max <= 0:
            raise ValueError("gain and a_max must be > 0")


@dataclass(frozen=True)
class VelocityLag:
    """First-order lag toward the commanded velocity with time constant tau."""

    tau: float = 0.25
    a_max: float = 10.0

    def __post_init__(self):
        if self.tau <= 0 or self.a_max <= 0:
            raise ValueError("tau and a_max must be > 0")


PlantModel = Union[SingleIntegrator, DoubleIntegrator, VelocityLag]

V_PHYS_CAP = 5.0  # hard physical speed cap applied after every step [m/s]


def step(state: PlantState, v_cmd, model: PlantModel, dt: float) -> PlantState:
    """Advance the plant one semi-implicit Euler step."""
    if dt <= 0:
        raise ValueError("dt must be > 0")
    v_cmd = as_vec(v_cmd)
    check_dims(state.position, v_cmd)
    if isinstance(model, SingleIntegrator):
        return PlantState(state.position + v_cmd * dt, v_cmd)
    if isinstance(model, DoubleIntegrator):
        u = saturate(-model.gain * (state.velocity - v_cmd), model.a_max)
        v = saturate(state.velocity + u * dt, V_PHYS_CAP)
        return PlantState(state.position + v * dt, v)
    if isinstance(model, VelocityLag):
        u = saturate((v_cmd - state.velocity) / model.tau, model.a_max)
        v = saturate(state.velocity + u * dt, V_PHYS_CAP)
        return PlantState(state.position + v * dt, v)
    raise TypeError(f"unknown plant model: {model!r}")
