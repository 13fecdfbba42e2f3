"""Deterministic scenario runner and trajectory metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import apf, cbf, sensing
from .core import ControllerConfig, Scene, as_vec, saturate
from .dynamics import PlantModel, PlantState, step
from .errors import (
    DegenerateDirectionError,
    InfeasibleConstraintError,
    InsideObstacleError,
    NoObstacleInViewError,
)

CONTROLLERS = ("apf", "apf-gaussian", "cbf", "apf-cbf")

STUCK_SPEED = 0.01   # m/s
STUCK_TIME = 1.0     # s


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    scene: Scene
    start: np.ndarray
    plant: PlantModel
    controller: str
    cfg: ControllerConfig
    lidar: Optional[sensing.LidarSpec] = None
    dt: float = 0.01
    horizon: float = 30.0
    goal_tolerance: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "start", as_vec(self.start))
        if self.controller not in CONTROLLERS:
            raise ValueError(f"unknown controller {self.controller!r}")
        if self.dt <= 0 or self.horizon <= self.dt:
            raise ValueError("need dt > 0 and horizon > dt")
        if self.scene.clearance(self.start) <= self.cfg.d_obs:
            raise ValueError("start must be strictly safe (clearance > d_obs)")


@dataclass(frozen=True)
class Terminal:
    kind: str  # reached | stuck | collision | horizon | fault
    t: float
    detail: str = ""


@dataclass
class TrajectoryLog:
    t: np.ndarray
    position: np.ndarray
    velocity: np.ndarray
    v_des: np.ndarray
    v_star: np.ndarray
    h: np.ndarray
    clearance: np.ndarray
    intervened: np.ndarray
    terminal: Terminal

    def __len__(self) -> int:
        return len(self.t)


@dataclass(frozen=True)
class Metrics:
    reached: bool
    time_to_goal: Optional[float]
    min_clearance: float
    path_length: float
    oscillation_index: float
    reversal_count: int
    stuck: bool

    def summary(self) -> str:
        ttg = f"{self.time_to_goal:.2f}s" if self.time_to_goal is not None else "-"
        return (
            f"reached={self.reached} t_goal={ttg} min_clear={self.min_clearance:.3f}m "
            f"path={self.path_length:.2f}m osc={self.oscillation_index:.3f}rad "
            f"reversals={self.reversal_count} stuck={self.stuck}"
        )


def _controller_outputs(spec: ScenarioSpec, x: np.ndarray, scan: Optional[sensing.Scan]):
    """Desired and filtered velocity plus barrier value for one tick."""
    cfg = spec.cfg
    scene = spec.scene
    v_att = saturate(-apf.attractive_gradient(x, scene.goal, cfg.k_att), cfg.v_max)

    def barrier() -> Optional[cbf.BarrierEval]:
        if scan is not None:
            try:
                return sensing.scan_barrier(scan, cfg.d_obs)
            except NoObstacleInViewError:
                return None
        if not scene.obstacles:
            return None
        return cbf.distance_barrier(x, scene, cfg.d_obs)

    if spec.controller == "apf":
        v = apf.apf_velocity(x, scene, cfg, variant="khatib")
        be = barrier()
        return v, v, False, (be.h if be else float("inf"))
    if spec.controller == "apf-gaussian":
        pts = scan.hit_points() if scan is not None else None
        v = apf.apf_velocity(x, scene, cfg, scan_points=pts, variant="gaussian")
        be = barrier()
        return v, v, False, (be.h if be else float("inf"))
    if spec.controller == "cbf":
        be = barrier()
        if be is None:
            return v_att, v_att, False, float("inf")
        v_star, hit = cbf.filter_single_integrator(v_att, be, cbf.LinearClassK(cfg.alpha))
        return v_att, saturate(v_star, cfg.v_max), hit, be.h
    # apf-cbf
    be = cbf.apf_barrier(x, scene, cfg)
    if float(np.dot(be.grad, be.grad)) == 0.0:
        return v_att, v_att, False, be.h
    v_star, hit = cbf.filter_single_integrator(v_att, be, cbf.LinearClassK(cfg.alpha))
    return v_att, saturate(v_star, cfg.v_max), hit, be.h


def run(spec: ScenarioSpec) -> TrajectoryLog:
    """Advance the closed loop until goal, collision, stuck, or horizon."""
    state = PlantState.at_rest(spec.start)
    n_ticks = int(round(spec.horizon / spec.dt))
    stuck_ticks_needed = max(1, int(round(STUCK_TIME / spec.dt)))
    goal = spec.scene.goal

    rows_t: List[float] = []
    rows = {k: [] for k in ("pos", "vel", "v_des", "v_star", "h", "clear", "hit")}
    terminal: Optional[Terminal] = None
    slow_ticks = 0

    def log_row(t, x, clear, v_des, v_star, h, hit):
        rows_t.append(t)
        rows["pos"].append(x)
        rows["vel"].append(state.velocity)
        rows["v_des"].append(v_des)
        rows["v_star"].append(v_star)
        rows["h"].append(h)
        rows["clear"].append(clear)
        rows["hit"].append(hit)

    zero = np.zeros_like(spec.start)
    for k in range(n_ticks + 1):
        t = k * spec.dt
        x = state.position
        clear = spec.scene.clearance(x)

        if clear < 0:
            log_row(t, x, clear, zero, zero, clear - spec.cfg.d_obs, False)
            terminal = Terminal("collision", t)
            break
        if float(np.linalg.norm(x - goal)) <= spec.goal_tolerance:
            log_row(t, x, clear, zero, zero, clear - spec.cfg.d_obs, False)
            terminal = Terminal("reached", t)
            break

        scan = None
        if spec.lidar is not None:
            to_goal = goal - x
            heading = float(np.arctan2(to_goal[1], to_goal[0]))
            scan = sensing.scan(x, heading, spec.scene, spec.lidar)

        try:
            v_des, v_star, hit, h = _controller_outputs(spec, x, scan)
        except InsideObstacleError:
            # margin shell penetrated: the safety guarantee is already lost
            terminal = Terminal("collision", t, detail="InsideObstacleError")
            break
        except (DegenerateDirectionError, InfeasibleConstraintError) as e:
            terminal = Terminal("fault", t, detail=type(e).__name__)
            break

        log_row(t, x, clear, v_des, v_star, h, hit)

        slow_ticks = slow_ticks + 1 if float(np.linalg.norm(v_star)) < STUCK_SPEED else 0
        if slow_ticks >= stuck_ticks_needed:
            terminal = Terminal("stuck", t)
            break

        state = step(state, v_star, spec.plant, spec.dt)

    if terminal is None:
        terminal = Terminal("horizon", n_ticks * spec.dt)

    return TrajectoryLog(
        t=np.asarray(rows_t),
        position=np.asarray(rows["pos"]).reshape(-1, len(spec.start)),
        velocity=np.asarray(rows["vel"]).reshape(-1, len(spec.start)),
        v_des=np.asarray(rows["v_des"]).reshape(-1, len(spec.start)),
        v_star=np.asarray(rows["v_star"]).reshape(-1, len(spec.start)),
        h=np.asarray(rows["h"]),
        clearance=np.asarray(rows["clear"]),
        intervened=np.asarray(rows["hit"], dtype=bool),
        terminal=terminal,
    )


def oscillation_index(velocity: np.ndarray, speed_floor: float = 0.05) -> float:
    """Excess turning: total heading variation minus net heading change.

    Zero for straight lines and smooth one-sided arcs; large for zig-zags.
    """
    v = velocity[np.linalg.norm(velocity, axis=1) > speed_floor]
    if len(v) < 2:
        return 0.0
    theta = np.arctan2(v[:, 1], v[:, 0])
    dtheta = np.diff(theta)
    dtheta = (dtheta + np.pi) % (2 * np.pi) - np.pi
    return float(np.sum(np.abs(dtheta)) - abs(np.sum(dtheta)))


def compute_metrics(log: TrajectoryLog, spec: ScenarioSpec) -> Metrics:
    """Aggregate safety, goal attainment, and smoothness figures from a log."""
    if len(log) == 0:
        raise ValueError("empty trajectory log")
    reached = log.terminal.kind == "reached"
    v = log.velocity
    dots = np.einsum("ij,ij->i", v[1:], v[:-1])
    path = float(np.sum(np.linalg.norm(np.diff(log.position, axis=0), axis=1)))
    return Metrics(
        reached=reached,
        time_to_goal=log.terminal.t if reached else None,
        min_clearance=float(np.min(log.clearance)),
        path_length=path,
        oscillation_index=oscillation_index(v),
        reversal_count=int(np.sum(dots < 0)),
        stuck=log.terminal.kind == "stuck",
    )
