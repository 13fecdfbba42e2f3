import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import central_diff
from safefilter import apf
from safefilter.core import Circle, ControllerConfig, Scene
from safefilter.errors import DegenerateDirectionError, InsideObstacleError


class TestAttractive:
    def test_value_at_goal_zero(self):
        assert apf.attractive_value((3.0, 5.0), (3.0, 5.0), 1.0) == 0.0

    def test_value_quadratic(self):
        assert apf.attractive_value((0.0, 0.0), (3.0, 4.0), 2.0) == pytest.approx(25.0)

    def test_gradient_matches_finite_difference(self, rng):
        for _ in range(100):
            x, goal = rng.uniform(-5, 5, 2), rng.uniform(-5, 5, 2)
            k = float(rng.uniform(0.1, 5))
            g = apf.attractive_gradient(x, goal, k)
            fd = central_diff(lambda p: apf.attractive_value(p, goal, k), x)
            assert np.allclose(g, fd, rtol=1e-5, atol=1e-7)


class TestRepulsive:
    def test_zero_beyond_influence(self):
        assert apf.repulsive_value(1.5, 1.0, 1.0) == 0.0

    def test_continuous_at_influence_boundary(self):
        eps = 1e-9
        assert apf.repulsive_value(1.0 - eps, 1.0, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_blows_up_near_shell(self):
        assert apf.repulsive_value(1e-4, 1.0, 1.0) > 1e7

    def test_inside_shell_raises(self):
        with pytest.raises(InsideObstacleError):
            apf.repulsive_value(0.0, 1.0, 1.0)
        with pytest.raises(InsideObstacleError):
            apf.repulsive_value(-0.1, 1.0, 1.0)

    def test_gradient_matches_finite_difference(self, rng):
        d_obs = 0.2
        for _ in range(100):
            x_obs = rng.uniform(-3, 3, 2)
            # stay strictly inside the influence region and off the shell
            offset = rng.uniform(0.3, 0.9) + d_obs
            ang = rng.uniform(0, 2 * np.pi)
            x = x_obs + offset * np.array([np.cos(ang), np.sin(ang)])
            k, rho0 = float(rng.uniform(0.5, 3)), 1.0

            def value(p):
                rho_p = float(np.linalg.norm(p - x_obs)) - d_obs
                return apf.repulsive_value(rho_p, k, rho0)

            rho = float(np.linalg.norm(x - x_obs)) - d_obs
            g = apf.repulsive_gradient(x, x_obs, rho, k, rho0)
            fd = central_diff(value, x)
            assert np.allclose(g, fd, rtol=1e-5, atol=1e-8)

    def test_force_points_away_from_obstacle(self):
        x, x_obs = np.array([1.0, 0.0]), np.array([0.0, 0.0])
        g = apf.repulsive_gradient(x, x_obs, 1.0 - 0.5, 1.0, 1.0)
        force = -g
        assert force[0] > 0 and force[1] == pytest.approx(0.0)

    def test_degenerate_point_raises(self):
        with pytest.raises(DegenerateDirectionError):
            apf.repulsive_gradient((0.0, 0.0), (0.0, 0.0), 0.5, 1.0, 1.0)


class TestGaussian:
    def test_vanishes_at_obstacle_point(self):
        f = apf.gaussian_repulsive_force((1.0, 1.0), (1.0, 1.0), 1.0, 1.0)
        assert np.allclose(f, 0.0)

    def test_decays_with_distance(self):
        near = apf.gaussian_repulsive_force((0.5, 0.0), (0.0, 0.0), 1.0, 0.5)
        far = apf.gaussian_repulsive_force((3.0, 0.0), (0.0, 0.0), 1.0, 0.5)
        assert np.linalg.norm(near) > np.linalg.norm(far)

    def test_rotational_symmetry(self, rng):
        k, rho0 = 1.3, 0.7
        x_obs = np.zeros(2)
        for _ in range(20):
            x = rng.uniform(-2, 2, 2)
            phi = float(rng.uniform(0, 2 * np.pi))
            c, s = np.cos(phi), np.sin(phi)
            rot = np.array([[c, -s], [s, c]])
            f1 = rot @ apf.gaussian_repulsive_force(x, x_obs, k, rho0)
            f2 = apf.gaussian_repulsive_force(rot @ x, x_obs, k, rho0)
            assert np.allclose(f1, f2, atol=1e-12)

    def test_point_sum_matches_loop(self, rng):
        x = rng.uniform(-1, 1, 2)
        pts = rng.uniform(-2, 2, (50, 2))
        total = apf.gaussian_force_from_points(x, pts, 0.8, 0.4)
        loop = sum(apf.gaussian_repulsive_force(x, p, 0.8, 0.4) for p in pts)
        assert np.allclose(total, loop, atol=1e-12)

    def test_empty_points(self):
        assert np.allclose(
            apf.gaussian_force_from_points(np.zeros(2), np.empty((0, 2)), 1.0, 1.0), 0.0
        )


class TestApfVelocity:
    def scene(self):
        return Scene(goal=(3.0, 5.0), obstacles=(Circle(center=(1.0, 2.0)),))

    @given(px=st.floats(-4, 4), py=st.floats(-4, 4))
    @settings(max_examples=100, deadline=None)
    def test_saturated(self, px, py):
        cfg = ControllerConfig(v_max=2.0)
        scene = self.scene()
        x = np.array([px, py])
        if scene.clearance(x) <= cfg.d_obs + 1e-6:
            return
        v = apf.apf_velocity(x, scene, cfg)
        assert np.linalg.norm(v) <= cfg.v_max * (1 + 1e-12)

    def test_pure_attraction_outside_influence(self):
        cfg = ControllerConfig()
        x = np.array([3.0, 0.0])  # far from the obstacle at (1, 2)
        v = apf.apf_velocity(x, self.scene(), cfg)
        expected = -apf.attractive_gradient(x, np.array([3.0, 5.0]), 1.0)
        from safefilter.core import saturate

        assert np.allclose(v, saturate(expected, cfg.v_max))

    def test_unknown_variant_rejected(self):
        with pytest.raises(ValueError):
            apf.apf_velocity((0.0, 0.0), self.scene(), ControllerConfig(), variant="nope")

    def test_gaussian_prefers_scan_points(self, rng):
        cfg = ControllerConfig(k_rep=0.5, rho0=0.3)
        pts = rng.uniform(1.0, 2.0, (30, 2))
        v = apf.apf_velocity((0.0, 0.0), self.scene(), cfg, scan_points=pts, variant="gaussian")
        assert np.all(np.isfinite(v))
