import textwrap

import numpy as np
import pytest

from safefilter.core import Circle, Segment
from safefilter.dynamics import SingleIntegrator, VelocityLag
from safefilter.scenario_io import (
    ScenarioParseError,
    apply_overrides,
    bundled_scenario_names,
    bundled_scenario_path,
    canonical_scenarios,
    load_scenario,
)

MINIMAL = textwrap.dedent("""
    name = "mini"
    [scene]
    goal = [3.0, 0.0]
    [[scene.obstacles]]
    kind = "circle"
    center = [1.5, 1.0]
    radius = 0.2
    [start]
    position = [0.0, 0.0]
""")


def write(tmp_path, text, name="s.toml"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestLoad:
    def test_minimal_defaults(self, tmp_path):
        spec = load_scenario(write(tmp_path, MINIMAL))
        assert spec.name == "mini"
        assert isinstance(spec.plant, SingleIntegrator)
        assert spec.controller == "cbf"
        assert spec.lidar is None
        assert spec.dt == 0.01 and spec.horizon == 30.0

    def test_example1_contents(self):
        spec = load_scenario(bundled_scenario_path("example1"))
        assert spec.controller == "apf"
        assert np.allclose(spec.scene.goal, [3.0, 5.0])
        assert len(spec.scene.obstacles) == 2
        assert all(isinstance(o, Circle) and o.radius == 0.0 for o in spec.scene.obstacles)
        assert spec.cfg.d_obs == 0.5 and spec.cfg.k_att == 1.0 and spec.cfg.k_rep == 1.0

    def test_controller_override(self, tmp_path):
        spec = load_scenario(write(tmp_path, MINIMAL), controller="apf-cbf")
        assert spec.controller == "apf-cbf"

    def test_parameter_overrides(self, tmp_path):
        spec = load_scenario(write(tmp_path, MINIMAL), overrides={"rho0": 0.25, "dt": 0.02})
        assert spec.cfg.rho0 == 0.25 and spec.dt == 0.02

    def test_unknown_override_rejected(self, tmp_path):
        with pytest.raises(ScenarioParseError):
            load_scenario(write(tmp_path, MINIMAL), overrides={"bogus": 1.0})

    def test_bad_toml_rejected(self, tmp_path):
        with pytest.raises(ScenarioParseError):
            load_scenario(write(tmp_path, "not [valid"))

    def test_unknown_obstacle_kind(self, tmp_path):
        bad = MINIMAL.replace('kind = "circle"', 'kind = "triangle"')
        with pytest.raises(ScenarioParseError, match="triangle"):
            load_scenario(write(tmp_path, bad))

    def test_missing_scene_rejected(self, tmp_path):
        with pytest.raises(ScenarioParseError):
            load_scenario(write(tmp_path, 'name = "empty"'))

    def test_unknown_plant_kind(self, tmp_path):
        text = MINIMAL + '\n[plant]\nkind = "hovercraft"\n'
        with pytest.raises(ScenarioParseError, match="hovercraft"):
            load_scenario(write(tmp_path, text))


class TestApplyOverrides:
    def test_routes_to_sections(self):
        data = {}
        apply_overrides(data, {"alpha": 2.0, "horizon": 10.0})
        assert data["controller"]["alpha"] == 2.0
        assert data["run"]["horizon"] == 10.0


class TestBundled:
    def test_names(self):
        names = bundled_scenario_names()
        assert {"example1", "quad1", "quad2", "quad3", "quad4", "quad5",
                "teleop_course"} <= set(names)

    def test_missing_name(self):
        with pytest.raises(ScenarioParseError):
            bundled_scenario_path("quad99")

    def test_canonical_scenarios(self):
        specs = canonical_scenarios()
        assert len(specs) == 5
        for spec in specs:
            assert np.allclose(spec.scene.goal, [5.0, 0.0])
            assert isinstance(spec.plant, VelocityLag)
            assert spec.lidar is not None and spec.lidar.beam_count == 1080
            assert spec.cfg.d_obs == 0.3

    def test_doorway_gaps(self):
        specs = {s.name: s for s in canonical_scenarios()}
        for name, gap in (("quad3", 1.0), ("quad4", 0.7)):
            a, b = specs[name].scene.obstacles
            edge_gap = abs(a.center[1] - b.center[1]) - a.radius - b.radius
            assert edge_gap == pytest.approx(gap)

    def test_wall_blocks_bounds(self):
        spec = next(s for s in canonical_scenarios() if s.name == "quad5")
        (wall,) = spec.scene.obstacles
        assert isinstance(wall, Segment)
        xmin, ymin, xmax, ymax = spec.scene.bounds
        ys = sorted([wall.a[1], wall.b[1]])
        assert ys[0] <= ymin and ys[1] >= ymax  # no way around inside bounds
