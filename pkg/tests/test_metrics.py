import math

import numpy as np
import pytest

from cassini import metrics
from cassini.geometry import (
    Ball,
    DomainError,
    PuncturedSpace,
    unit_ball,
    upper_halfplane,
)
from cassini.moebius import random_orthogonal

import oracles

B2 = unit_ball(2)
B3 = unit_ball(3)
P0 = PuncturedSpace(punctures=[[0.0, 0.0]])


def e1(n):
    v = np.zeros(n)
    v[0] = 1.0
    return v


def uniform_ball_pairs(rng, n, count, cap=0.999):
    def draw():
        while True:
            p = rng.uniform(-1.0, 1.0, n)
            if np.linalg.norm(p) <= cap:
                return p
    return ([draw() for _ in range(count)], [draw() for _ in range(count)])


class TestCassinian:
    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_center_closed_form(self, n):
        mv = metrics.cassinian(unit_ball(n), np.zeros(n), 0.5 * e1(n))
        assert mv.value == pytest.approx(1.0, abs=1e-12)
        assert mv.method == "optimized"

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_radial_closed_form(self, n):
        mv = metrics.cassinian(unit_ball(n), 0.25 * e1(n), 0.5 * e1(n))
        assert mv.value == pytest.approx(2.0 / 3.0, abs=1e-12)

    def test_punctured_exact(self):
        mv = metrics.cassinian(P0, [1.0, 0.0], [0.0, 1.0])
        assert mv.value == math.sqrt(2.0)
        assert mv.method == "closed_form"
        assert np.array_equal(mv.witness.point, [0.0, 0.0])

    def test_disk_pair_with_witness(self):
        # frozen from a 1e6-angle scan of |x-p||p-y| on the unit circle
        mv = metrics.cassinian(B2, [0.5, 0.0], [-0.5, 0.0])
        assert mv.value == pytest.approx(4.0 / 3.0, abs=1e-12)
        assert abs(abs(mv.witness.point[0]) - 1.0) <= 1e-8  # p = +-e1

    def test_degenerate_pair(self):
        mv = metrics.cassinian(B2, [0.3, 0.1], [0.3, 0.1])
        assert mv.value == 0.0
        assert mv.witness is None

    def test_outside_domain_raises(self):
        with pytest.raises(DomainError):
            metrics.cassinian(B2, [1.5, 0.0], [0.0, 0.0])

    def test_boundary_proximity_raises(self):
        x = (1.0 - 1e-14) * e1(2)
        with pytest.raises(DomainError):
            metrics.cassinian(B2, x, [0.0, 0.0])

    def test_witness_consistency(self):
        rng = np.random.default_rng(5)
        X, Y = uniform_ball_pairs(rng, 3, 10)
        for x, y in zip(X, Y):
            mv = metrics.cassinian(B3, x, y)
            w = mv.witness
            obj = np.linalg.norm(np.asarray(x) - w.point) * \
                np.linalg.norm(w.point - np.asarray(y))
            re_eval = np.linalg.norm(np.asarray(x) - np.asarray(y)) / obj
            assert abs(re_eval - mv.value) <= w.gap_estimate + 1e-15


class TestDistanceRatio:
    def test_center_log2(self):
        mv = metrics.distance_ratio_j(B2, [0.0, 0.0], [0.5, 0.0])
        assert mv.value == pytest.approx(math.log(2.0), abs=1e-15)

    def test_identity(self):
        assert metrics.distance_ratio_j(B2, [0.1, 0.2], [0.1, 0.2]).value == 0.0

    def test_punctured(self):
        mv = metrics.distance_ratio_j(P0, [1.0, 0.0], [2.0, 0.0])
        assert mv.value == pytest.approx(math.log(2.0), abs=1e-15)


class TestHyperbolic:
    def test_ball_zero(self):
        assert metrics.hyperbolic_ball([0.0, 0.0], [0.0, 0.0]).value == 0.0

    def test_ball_log3(self):
        # 2 artanh(1/2) = log 3, via the sinh identity at |y| = 1/2
        mv = metrics.hyperbolic_ball([0.0, 0.0], [0.5, 0.0])
        assert mv.value == pytest.approx(math.log(3.0), abs=1e-14)

    def test_ball_symmetry(self):
        rng = np.random.default_rng(2)
        X, Y = uniform_ball_pairs(rng, 3, 50)
        for x, y in zip(X, Y):
            assert metrics.hyperbolic_ball(x, y).value == pytest.approx(
                metrics.hyperbolic_ball(y, x).value, abs=1e-12)

    def test_ball_outside_raises(self):
        with pytest.raises(DomainError):
            metrics.hyperbolic_ball([1.0, 0.0], [0.0, 0.0])

    def test_halfplane_log2(self):
        mv = metrics.hyperbolic_halfplane([0.0, 1.0], [0.0, 2.0])
        assert mv.value == pytest.approx(math.log(2.0), abs=1e-14)
        assert mv.value == pytest.approx(2.0 * math.atanh(1.0 / 3.0), abs=1e-14)

    def test_halfplane_identity_case(self):
        assert metrics.hyperbolic_halfplane([1.0, 2.0], [1.0, 2.0]).value == 0.0

    def test_halfplane_p_identity(self):
        # p = tanh(rho / 2) on the upper half-plane
        rng = np.random.default_rng(3)
        H = upper_halfplane()
        for _ in range(200):
            z1 = np.array([rng.uniform(-3, 3), rng.uniform(0.05, 3)])
            z2 = np.array([rng.uniform(-3, 3), rng.uniform(0.05, 3)])
            rho = metrics.hyperbolic_halfplane(z1, z2).value
            p = metrics.p_quantity(H, z1, z2).value
            assert abs(p - math.tanh(rho / 2.0)) <= 1e-12

    def test_halfplane_lower_raises(self):
        with pytest.raises(DomainError):
            metrics.hyperbolic_halfplane([0.0, -1.0], [0.0, 2.0])


class TestVisualAngle:
    def test_disk_pair(self):
        # frozen from dense sampling; analytic check at z = (0, +-1) gives
        # cos = 0.6
        mv = metrics.visual_angle(B2, [0.5, 0.0], [-0.5, 0.0])
        assert mv.value == pytest.approx(math.acos(0.6), abs=1e-10)
        assert abs(mv.witness.point[1]) == pytest.approx(1.0, abs=1e-8)

    def test_disk_center_pair(self):
        # max over the circle of the angle subtended by 0 and e1/2 is pi/6,
        # attained at polar angle +-pi/3 (dense-sampling oracle)
        mv = metrics.visual_angle(B2, [0.0, 0.0], [0.5, 0.0])
        assert mv.value == pytest.approx(math.pi / 6.0, abs=1e-10)

    def test_degenerate(self):
        assert metrics.visual_angle(B3, [0.1] * 3, [0.1] * 3).value == 0.0

    def test_matches_oracle(self):
        # norms capped at 0.9: a bare scan only resolves the supremum to
        # 1e-6 when the extremal dip is wider than its mesh
        rng = np.random.default_rng(8)
        X, Y = uniform_ball_pairs(rng, 2, 10, cap=0.9)
        for x, y in zip(X, Y):
            pts = oracles.plane_circle_points(np.zeros(2), 1.0, x, y, 100000)
            v_scan = oracles.scan_visual_angle(pts, np.asarray(x), np.asarray(y))
            v_opt = metrics.visual_angle(B2, x, y).value
            assert v_opt >= v_scan - 1e-12
            assert v_opt == pytest.approx(v_scan, rel=1e-6)


class TestPQuantity:
    def test_ball_third(self):
        mv = metrics.p_quantity(B2, [0.0, 0.0], [0.5, 0.0])
        assert mv.value == pytest.approx(1.0 / 3.0, abs=1e-15)

    def test_identity(self):
        assert metrics.p_quantity(B2, [0.2, 0.2], [0.2, 0.2]).value == 0.0

    def test_halfplane_third(self):
        mv = metrics.p_quantity(upper_halfplane(), [0.0, 1.0], [0.0, 2.0])
        assert mv.value == pytest.approx(1.0 / 3.0, abs=1e-15)

    def test_range(self):
        rng = np.random.default_rng(4)
        X, Y = uniform_ball_pairs(rng, 2, 100)
        p = metrics.p_values(B2, np.array(X), np.array(Y))
        assert np.all((p >= 0.0) & (p < 1.0))


class TestStructuralProperties:
    def test_symmetry_all_quantities(self):
        rng = np.random.default_rng(9)
        for domain, n in ((B2, 2), (B3, 3), (P0, 2)):
            X, Y = uniform_ball_pairs(rng, n, 40)
            if isinstance(domain, PuncturedSpace):
                X = [x + 2.0 for x in X]
                Y = [y + 2.0 for y in Y]
            X, Y = np.array(X), np.array(Y)
            cxy, _ = metrics.cassinian_values(domain, X, Y)
            cyx, _ = metrics.cassinian_values(domain, Y, X)
            np.testing.assert_allclose(cxy, cyx, rtol=1e-12, atol=1e-12)
            np.testing.assert_allclose(metrics.distance_ratio_values(domain, X, Y),
                                       metrics.distance_ratio_values(domain, Y, X),
                                       rtol=1e-12)
            np.testing.assert_allclose(metrics.p_values(domain, X, Y),
                                       metrics.p_values(domain, Y, X), rtol=1e-12)

    def test_cassinian_triangle_inequality(self):
        rng = np.random.default_rng(10)
        for domain, n, shift in ((B2, 2, 0.0), (P0, 2, 2.0)):
            X, Y = uniform_ball_pairs(rng, n, 60)
            Z, _ = uniform_ball_pairs(rng, n, 60)
            X = np.array(X) + shift
            Y = np.array(Y) + shift
            Z = np.array(Z) + shift
            cxz, _ = metrics.cassinian_values(domain, X, Z)
            cxy, _ = metrics.cassinian_values(domain, X, Y)
            cyz, _ = metrics.cassinian_values(domain, Y, Z)
            scale = np.maximum(1.0, cxz)
            assert np.all(cxz <= cxy + cyz + 1e-10 * scale)

    def test_translation_invariance(self):
        rng = np.random.default_rng(11)
        X, Y = uniform_ball_pairs(rng, 2, 20)
        shift = np.array([0.3, -1.7])
        shifted = Ball(center=shift, radius=1.0)
        for x, y in zip(X, Y):
            a = metrics.cassinian(B2, x, y).value
            b = metrics.cassinian(shifted, x + shift, y + shift).value
            assert b == pytest.approx(a, rel=1e-12, abs=1e-12)
            ja = metrics.distance_ratio_j(B2, x, y).value
            jb = metrics.distance_ratio_j(shifted, x + shift, y + shift).value
            assert jb == pytest.approx(ja, rel=1e-12, abs=1e-12)

    def test_scaling_covariance(self):
        rng = np.random.default_rng(12)
        X, Y = uniform_ball_pairs(rng, 2, 10)
        lam = 2.5
        big = Ball(center=np.zeros(2), radius=lam)
        for x, y in zip(X, Y):
            c1 = metrics.cassinian(B2, x, y).value
            c2 = metrics.cassinian(big, lam * x, lam * y).value
            assert c2 == pytest.approx(c1 / lam, rel=1e-11)
            for fn in (metrics.distance_ratio_j, metrics.p_quantity,
                       metrics.visual_angle):
                v1 = fn(B2, x, y).value
                v2 = fn(big, lam * np.asarray(x), lam * np.asarray(y)).value
                assert v2 == pytest.approx(v1, rel=1e-9, abs=1e-11)

    def test_orthogonal_invariance(self):
        rng = np.random.default_rng(13)
        X, Y = uniform_ball_pairs(rng, 3, 10)
        Q = random_orthogonal(3, rng)
        for x, y in zip(X, Y):
            for fn in (metrics.cassinian, metrics.visual_angle):
                v1 = fn(B3, x, y).value
                v2 = fn(B3, Q @ x, Q @ y).value
                assert v2 == pytest.approx(v1, rel=1e-10, abs=1e-10)

    def test_in_plane_conjecture_against_full_sphere(self):
        # the planar fast path must dominate a coarse full-sphere scan
        rng = np.random.default_rng(14)
        X, Y = uniform_ball_pairs(rng, 3, 8)
        sphere = oracles.fibonacci_sphere_points(np.zeros(3), 1.0, 200000)
        for x, y in zip(X, Y):
            x, y = np.asarray(x), np.asarray(y)
            c_opt = metrics.cassinian(B3, x, y).value
            v_opt = metrics.visual_angle(B3, x, y).value
            assert c_opt >= oracles.scan_cassinian(sphere, x, y) * (1 - 1e-3)
            assert v_opt >= oracles.scan_visual_angle(sphere, x, y) - 1e-3

    def test_oracle_equivalence_small(self):
        # norms capped at 0.9, see TestVisualAngle.test_matches_oracle
        rng = np.random.default_rng(15)
        for domain, n in ((B2, 2), (B3, 3)):
            X, Y = uniform_ball_pairs(rng, n, 8, cap=0.9)
            for x, y in zip(X, Y):
                pts = oracles.plane_circle_points(np.zeros(n), 1.0, x, y, 100000)
                c_scan = oracles.scan_cassinian(pts, np.asarray(x), np.asarray(y))
                c_opt = metrics.cassinian(domain, x, y).value
                assert c_opt == pytest.approx(c_scan, rel=1e-6)


class TestHalfspaceSolvers:
    def test_cassinian_vertical_pair(self):
        # min over the line of sqrt((t^2+1)(t^2+4)) is at t = 0
        mv = metrics.cassinian(upper_halfplane(), [0.0, 1.0], [0.0, 2.0])
        assert mv.value == pytest.approx(0.5, abs=1e-12)

    def test_cassinian_3d(self):
        from cassini.geometry import HalfSpace
        H3 = HalfSpace(unit_normal=[0.0, 0.0, 1.0], offset=0.0)
        mv = metrics.cassinian(H3, [0.0, 0.0, 1.0], [0.0, 0.0, 2.0])
        assert mv.value == pytest.approx(0.5, abs=1e-12)


class TestInequalityConfig:
    def test_valid(self):
        cfg = metrics.InequalityConfig(lambda_bound=0.5, tolerance=1e-9)
        assert cfg.lambda_bound == 0.5

    def test_invalid_lambda(self):
        with pytest.raises(ValueError):
            metrics.InequalityConfig(lambda_bound=1.0)

    def test_invalid_tolerance(self):
        with pytest.raises(ValueError):
            metrics.InequalityConfig(tolerance=0.0)
