"""Scenario file loading (TOML) and override handling."""

from __future__ import annotations

import math
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Union

import tomli

from .core import Circle, ControllerConfig, Scene, Segment
from .dynamics import DoubleIntegrator, PlantModel, SingleIntegrator, VelocityLag
from .errors import SafeFilterError
from .sensing import LidarSpec
from .sim import ScenarioSpec

CFG_FIELDS = ("k_att", "k_rep", "rho0", "d_obs", "alpha", "delta", "track_gain", "v_max")
RUN_FIELDS = ("dt", "horizon", "goal_tolerance")


class ScenarioParseError(SafeFilterError):
    """Scenario file failed to parse or validate."""


def _obstacle(entry: dict, i: int):
    kind = entry.get("kind")
    try:
        if kind == "circle":
            return Circle(center=entry["center"], radius=float(entry.get("radius", 0.0)))
        if kind == "segment":
            return Segment(a=entry["a"], b=entry["b"], thickness=float(entry.get("thickness", 0.0)))
    except (KeyError, ValueError, TypeError) as e:
        raise ScenarioParseError(f"obstacle #{i}: {e}") from e
    raise ScenarioParseError(f"obstacle #{i}: unknown kind {kind!r}")


def _plant(table: dict) -> PlantModel:
    kind = table.get("kind", "single")
    if kind == "single":
        return SingleIntegrator()
    if kind == "double":
        return DoubleIntegrator(
            gain=float(table.get("gain", 4.0)), a_max=float(table.get("a_max", 10.0))
        )
    if kind == "velocity_lag":
        return VelocityLag(
            tau=float(table.get("tau", 0.25)), a_max=float(table.get("a_max", 10.0))
        )
    raise ScenarioParseError(f"plant: unknown kind {kind!r}")


def apply_overrides(data: dict, overrides: Dict[str, float]) -> dict:
    """Apply --set key=value pairs onto parsed scenario data."""
    for key, value in overrides.items():
        if key in CFG_FIELDS:
            data.setdefault("controller", {})[key] = value
        elif key in RUN_FIELDS:
            data.setdefault("run", {})[key] = value
        else:
            raise ScenarioParseError(f"unknown override parameter {key!r}")
    return data


def spec_from_data(
    data: dict,
    controller: Optional[str] = None,
    overrides: Optional[Dict[str, float]] = None,
) -> ScenarioSpec:
    if overrides:
        data = apply_overrides(data, dict(overrides))
    try:
        scene_tbl = data["scene"]
        scene = Scene(
            goal=scene_tbl["goal"],
            obstacles=tuple(
                _obstacle(o, i) for i, o in enumerate(scene_tbl.get("obstacles", []))
            ),
            bounds=tuple(scene_tbl.get("bounds", (-2.0, -4.0, 8.0, 7.0))),
        )
        ctrl_tbl = dict(data.get("controller", {}))
        kind = controller or ctrl_tbl.pop("kind", "cbf")
        cfg = ControllerConfig(**{k: float(v) for k, v in ctrl_tbl.items() if k in CFG_FIELDS})
        lidar = None
        if "lidar" in data:
            lt = data["lidar"]
            lidar = LidarSpec(
                beam_count=int(lt.get("beam_count", 1080)),
                fov=math.radians(float(lt.get("fov_deg", 270.0))),
                max_range=float(lt.get("max_range", 10.0)),
            )
        run_tbl = data.get("run", {})
        return ScenarioSpec(
            name=str(data.get("name", "scenario")),
            scene=scene,
            start=data["start"]["position"],
            plant=_plant(data.get("plant", {})),
            controller=kind,
            cfg=cfg,
            lidar=lidar,
            dt=float(run_tbl.get("dt", 0.01)),
            horizon=float(run_tbl.get("horizon", 30.0)),
            goal_tolerance=float(run_tbl.get("goal_tolerance", 0.05)),
        )
    except ScenarioParseError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ScenarioParseError(str(e)) from e


def load_scenario(
    path: Union[str, Path],
    controller: Optional[str] = None,
    overrides: Optional[Dict[str, float]] = None,
) -> ScenarioSpec:
    """Load a scenario file, optionally forcing a controller and overriding parameters."""
    path = Path(path)
    try:
        with open(path, "rb") as f:
            data = tomli.load(f)
    except tomli.TOMLDecodeError as e:
        raise ScenarioParseError(f"{path}: {e}") from e
    return spec_from_data(data, controller=controller, overrides=overrides)


def bundled_scenario_names() -> List[str]:
    """Names of the scenario files shipped with the package."""
    pkg = resources.files("safefilter") / "scenarios"
    return sorted(p.name[: -len(".toml")] for p in pkg.iterdir() if p.name.endswith(".toml"))


def bundled_scenario_path(name: str) -> Path:
    p = resources.files("safefilter") / "scenarios" / f"{name}.toml"
    if not p.is_file():
        raise ScenarioParseError(f"no bundled scenario named {name!r}")
    return Path(str(p))


def canonical_scenarios() -> List[ScenarioSpec]:
    """The five scan-based benchmark scenarios, as bundled."""
    return [load_scenario(bundled_scenario_path(f"quad{i}")) for i in range(1, 6)]
