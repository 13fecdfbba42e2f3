import numpy as np
import pytest

from conftest import central_diff, random_scene
from safefilter import apf, cbf
from safefilter.core import Circle, ControllerConfig, Scene
from safefilter.errors import DegenerateDirectionError, InfeasibleConstraintError


class TestBarrierEval:
    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            cbf.BarrierEval(h=float("nan"), grad=(1.0, 0.0))
        with pytest.raises(ValueError):
            cbf.BarrierEval(h=1.0, grad=(float("inf"), 0.0))


class TestLinearClassK:
    def test_linear(self):
        a = cbf.LinearClassK(2.0)
        assert a(3.0) == 6.0 and a(-1.0) == -2.0 and a(0.0) == 0.0

    def test_gain_must_be_positive(self):
        with pytest.raises(ValueError):
            cbf.LinearClassK(0.0)


class TestDistanceBarrier:
    def test_value_and_gradient(self):
        scene = Scene(goal=(9.0, 9.0), obstacles=(Circle(center=(0.0, 0.0), radius=0.5),))
        be = cbf.distance_barrier((2.0, 0.0), scene, d_obs=0.3)
        assert be.h == pytest.approx(1.2)
        assert np.allclose(be.grad, [1.0, 0.0])

    def test_gradient_is_unit(self, rng):
        scene = random_scene(rng, 3)
        for _ in range(50):
            x = rng.uniform(-4, 8, 2)
            if scene.clearance(x) < 1e-3:
                continue
            be = cbf.distance_barrier(x, scene, 0.3)
            assert np.linalg.norm(be.grad) == pytest.approx(1.0)

    def test_degenerate_center_raises(self):
        scene = Scene(goal=(9.0, 9.0), obstacles=(Circle(center=(0.0, 0.0)),))
        with pytest.raises(DegenerateDirectionError):
            cbf.distance_barrier((0.0, 0.0), scene, 0.3)


class TestBarrierFromApf:
    def test_boundary_level(self):
        # h = 0 exactly when U_rep = 1/delta - 1
        be = cbf.barrier_from_apf(999.0, (0.0, 0.0), delta=0.001)
        assert be.h == pytest.approx(0.0, abs=1e-12)

    def test_plateau_is_strictly_safe(self):
        be = cbf.barrier_from_apf(0.0, (0.0, 0.0), delta=0.001)
        assert be.h == pytest.approx(0.999)

    def test_gradient_chain_rule(self, rng):
        for _ in range(50):
            u = float(rng.uniform(0, 10))
            g = rng.uniform(-2, 2, 2)
            be = cbf.barrier_from_apf(u, g, 0.001)
            assert np.allclose(be.grad, -g / (1 + u) ** 2)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            cbf.barrier_from_apf(-0.1, (0, 0), 0.001)
        with pytest.raises(ValueError):
            cbf.barrier_from_apf(1.0, (0, 0), 1.5)


class TestFilterSingleIntegrator:
    def test_pass_through_when_safe(self):
        be = cbf.BarrierEval(h=1.0, grad=(1.0, 0.0))
        v, hit = cbf.filter_single_integrator((0.5, 0.0), be, cbf.LinearClassK(1.0))
        assert not hit and np.allclose(v, [0.5, 0.0])

    def test_constraint_active_when_intervening(self, rng):
        for _ in range(100):
            grad = rng.uniform(-1, 1, 2)
            if np.linalg.norm(grad) < 0.1:
                continue
            be = cbf.BarrierEval(h=float(rng.uniform(-0.5, 1.0)), grad=grad)
            alpha = cbf.LinearClassK(float(rng.uniform(0.2, 3)))
            v_des = rng.uniform(-3, 3, 2)
            v, hit = cbf.filter_single_integrator(v_des, be, alpha)
            psi_out = float(np.dot(be.grad, v)) + alpha(be.h)
            if hit:
                assert psi_out == pytest.approx(0.0, abs=1e-10)
            else:
                assert psi_out >= -1e-12 and np.array_equal(v, np.asarray(v_des, float))

    def test_minimal_invasiveness(self, rng):
        # no feasible velocity is closer to the desired one than the output
        for _ in range(50):
            be = cbf.BarrierEval(h=-0.2, grad=rng.uniform(0.2, 1, 2))
            alpha = cbf.LinearClassK(1.0)
            v_des = rng.uniform(-2, 2, 2)
            v, _ = cbf.filter_single_integrator(v_des, be, alpha)
            d_star = np.linalg.norm(v - v_des)
            for _ in range(200):
                cand = rng.uniform(-5, 5, 2)
                if float(np.dot(be.grad, cand)) + alpha(be.h) >= 0:
                    assert np.linalg.norm(cand - v_des) >= d_star - 1e-9

    def test_zero_gradient_raises(self):
        be = cbf.BarrierEval(h=1.0, grad=(0.0, 0.0))
        with pytest.raises(DegenerateDirectionError):
            cbf.filter_single_integrator((1.0, 0.0), be, cbf.LinearClassK(1.0))


class TestFilterAffine:
    @staticmethod
    def integrator_plant(n=2):
        return cbf.AffinePlant(f=lambda x: np.zeros(n), g=lambda x: np.eye(n))

    def test_reduces_to_single_integrator(self, rng):
        plant = self.integrator_plant()
        for _ in range(50):
            be = cbf.BarrierEval(h=float(rng.uniform(-0.5, 1)), grad=rng.uniform(-1, 1, 2))
            if np.linalg.norm(be.grad) < 0.1:
                continue
            u_des = rng.uniform(-2, 2, 2)
            alpha = cbf.LinearClassK(1.0)
            u1, hit1 = cbf.filter_affine(u_des, plant, np.zeros(2), be, alpha)
            u2, hit2 = cbf.filter_single_integrator(u_des, be, alpha)
            assert hit1 == hit2 and np.allclose(u1, u2, atol=1e-12)

    def test_drift_can_rescue_feasibility(self):
        # drift pushes h up fast enough: no intervention even with bad u_des
        plant = cbf.AffinePlant(f=lambda x: np.array([5.0, 0.0]), g=lambda x: np.eye(2))
        be = cbf.BarrierEval(h=0.0, grad=(1.0, 0.0))
        u, hit = cbf.filter_affine((-1.0, 0.0), plant, np.zeros(2), be, cbf.LinearClassK(1.0))
        assert not hit

    def test_infeasible_when_input_cannot_act(self):
        # g projects the input orthogonally to grad h and the drift violates
        plant = cbf.AffinePlant(
            f=lambda x: np.array([-1.0, 0.0]),
            g=lambda x: np.array([[0.0], [1.0]]),
        )
        be = cbf.BarrierEval(h=0.0, grad=(1.0, 0.0))
        with pytest.raises(InfeasibleConstraintError):
            cbf.filter_affine((0.5,), plant, np.zeros(2), be, cbf.LinearClassK(1.0))


class TestApfBarrier:
    def scene(self):
        return Scene(
            goal=(3.0, 5.0),
            obstacles=(Circle(center=(1.0, 2.0)), Circle(center=(2.5, 3.0))),
        )

    def test_gradient_matches_finite_difference(self, rng):
        cfg = ControllerConfig()
        scene = self.scene()
        checked = 0
        while checked < 100:
            x = rng.uniform(-1, 4, 2)
            rho = scene.clearance(x) - cfg.d_obs
            if not 0.05 < rho < cfg.rho0 - 0.05:
                continue

            def value(p):
                return cbf.apf_barrier(p, scene, cfg).h

            be = cbf.apf_barrier(x, scene, cfg)
            fd = central_diff(value, x)
            assert np.allclose(be.grad, fd, rtol=1e-4, atol=1e-7)
            checked += 1

    def test_plateau_value(self):
        cfg = ControllerConfig()
        be = cbf.apf_barrier((3.0, 0.0), self.scene(), cfg)  # beyond rho0 of both
        assert be.h == pytest.approx(1.0 - cfg.delta)
        assert np.allclose(be.grad, 0.0)

    def test_apf_cbf_velocity_bypasses_on_plateau(self):
        cfg = ControllerConfig()
        from safefilter.core import saturate

        x = np.array([3.0, 0.0])
        v = cbf.apf_cbf_velocity(x, self.scene(), cfg)
        expected = saturate(-apf.attractive_gradient(x, np.array([3.0, 5.0]), 1.0), cfg.v_max)
        assert np.allclose(v, expected)
