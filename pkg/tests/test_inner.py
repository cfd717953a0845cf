import json
import math

import numpy as np
import pytest

from cassini import inner, metrics
from cassini.geometry import Ball, DomainError, PuncturedSpace, unit_ball
from cassini.inner import GeodesicOptions

B2 = unit_ball(2)
B3 = unit_ball(3)
P0 = PuncturedSpace(punctures=[[0.0, 0.0]])


def e1(n):
    v = np.zeros(n)
    v[0] = 1.0
    return v


class TestPathLengthPartition:
    def test_ball_radial_segment(self):
        # every partition of a radial segment telescopes to |x| / (1 - |x|)
        val = inner.path_length_partition(B2, [[0.0, 0.0], [0.5, 0.0]])
        assert val == pytest.approx(1.0, abs=1e-12)

    def test_single_point(self):
        assert inner.path_length_partition(B2, [[0.1, 0.2]]) == 0.0

    def test_punctured_radial_segment(self):
        val = inner.path_length_partition(P0, [[1.0, 0.0], [2.0, 0.0]])
        assert val == pytest.approx(0.5, abs=1e-12)

    def test_vertex_outside_raises(self):
        with pytest.raises(DomainError):
            inner.path_length_partition(B2, [[0.0, 0.0], [1.5, 0.0]])


class TestPathLengthIntegral:
    def test_ball_radial_segment(self):
        # int_0^0.5 dt / (1 - t)^2 = 1
        val = inner.path_length_integral(B2, [[0.0, 0.0], [0.5, 0.0]])
        assert val == pytest.approx(1.0, rel=1e-9)

    def test_punctured_radial_segment(self):
        # int_1^2 dt / t^2 = 1/2, and the single-puncture rule is exact
        val = inner.path_length_integral(P0, [[1.0, 0.0], [2.0, 0.0]])
        assert val == pytest.approx(0.5, abs=1e-14)

    def test_quarter_straight_chord(self):
        # frozen: int along the chord (1,0)->(0,1) of |z|^-2 is pi/sqrt(2)
        val = inner.path_length_integral(P0, [[1.0, 0.0], [0.0, 1.0]])
        assert val == pytest.approx(math.pi / math.sqrt(2.0), rel=1e-12)

    def test_schemes_agree_on_random_polylines(self):
        rng = np.random.default_rng(21)
        for _ in range(5):
            pts = rng.uniform(-0.4, 0.4, (4, 2))
            quad = inner.path_length_integral(B2, pts)
            part = inner.path_length_partition(B2, pts, rel_tol=1e-6)
            assert part == pytest.approx(quad, rel=1e-4)


class TestClosedForms:
    def test_punctured_pair(self):
        assert inner.closed_form_inner(P0, [3.0, 0.0], [0.0, 4.0]) == \
            pytest.approx(5.0 / 12.0, abs=1e-15)

    def test_ball_center(self):
        assert inner.closed_form_inner(B2, [0.0, 0.0], [0.9, 0.0]) == \
            pytest.approx(9.0, rel=1e-14)

    def test_ball_off_center_absent(self):
        assert inner.closed_form_inner(B2, [0.3, 0.0], [0.6, 0.0]) is None

    def test_multi_puncture_absent(self):
        P2 = PuncturedSpace(punctures=[[0.0, 0.0], [2.0, 0.0]])
        assert inner.closed_form_inner(P2, [1.0, 0.0], [1.0, 1.0]) is None

    def test_degenerate(self):
        assert inner.closed_form_inner(B2, [0.1, 0.1], [0.1, 0.1]) == 0.0


class TestInnerUpperBound:
    def test_ball_center_tight(self):
        assert inner.inner_upper_bound(B2, [0.0, 0.0], [0.5, 0.0]) == \
            pytest.approx(1.0, abs=1e-15)

    def test_punctured_example(self):
        assert inner.inner_upper_bound(P0, [1.0, 0.0], [1.5, 0.0]) == \
            pytest.approx(1.0, abs=1e-15)

    def test_precondition(self):
        with pytest.raises(DomainError):
            inner.inner_upper_bound(B2, [0.5, 0.0], [-0.5, 0.0])


class TestInnerCassinian:
    def test_ball_center_segment(self):
        res = inner.inner_cassinian(B2, np.zeros(2), 0.5 * e1(2))
        assert res.value == pytest.approx(1.0, rel=5e-3)
        assert res.backend == "polyline_descent"

    def test_punctured_quarter(self):
        res = inner.inner_cassinian(P0, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
        assert res.value == pytest.approx(math.sqrt(2.0), rel=5e-3)

    def test_degenerate(self):
        res = inner.inner_cassinian(B2, np.array([0.1, 0.1]), np.array([0.1, 0.1]))
        assert res.value == 0.0
        assert res.path.vertices.shape[0] == 1

    def test_nested_ball_scaling(self):
        res = inner.inner_cassinian(Ball(center=[0.0, 0.0], radius=2.0),
                                    np.zeros(2), 0.5 * e1(2))
        assert res.value == pytest.approx(1.0 / 6.0, rel=5e-3)

    def test_result_invariants(self):
        res = inner.inner_cassinian(P0, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
        assert res.value == res.path.length_value
        assert res.refinement_gap >= 0.0
        clear = P0.boundary_distances(res.path.vertices)
        assert np.all(clear >= 1e-9)
        c = metrics.cassinian(P0, [1.0, 0.0], [0.0, 1.0]).value
        assert res.path.length_value >= c - 1e-6

    def test_dominates_cassinian(self):
        rng = np.random.default_rng(22)
        for _ in range(4):
            x = rng.uniform(-0.6, 0.6, 2)
            y = rng.uniform(-0.6, 0.6, 2)
            res = inner.inner_cassinian(B2, x, y)
            c = metrics.cassinian(B2, x, y).value
            assert res.value >= c - 1e-6

    def test_symmetry(self):
        x = np.array([0.4, 0.1])
        y = np.array([-0.3, 0.35])
        a = inner.inner_cassinian(B2, x, y).value
        b = inner.inner_cassinian(B2, y, x).value
        assert a == pytest.approx(b, rel=5e-3)

    def test_endpoint_validation(self):
        with pytest.raises(DomainError):
            inner.inner_cassinian(B2, np.array([1.5, 0.0]), np.zeros(2))
        with pytest.raises(DomainError):
            inner.inner_cassinian(P0, np.zeros(2), np.array([1.0, 0.0]))


class TestMonotonicity:
    def test_nested_balls(self):
        rng = np.random.default_rng(23)
        big = Ball(center=np.zeros(2), radius=2.0)
        for _ in range(4):
            x = rng.uniform(-0.6, 0.6, 2)
            y = rng.uniform(-0.6, 0.6, 2)
            if np.linalg.norm(x - y) < 1e-3:
                continue
            small_res = inner.inner_cassinian(B2, x, y)
            big_res = inner.inner_cassinian(
                big, x, y, GeodesicOptions(extra_initial_paths=(small_res.path.vertices,)))
            assert big_res.value <= small_res.value + 1e-4

    def test_puncture_set_inclusion(self):
        more = PuncturedSpace(punctures=[[0.0, 0.0], [2.0, 0.0]])
        rng = np.random.default_rng(24)
        for _ in range(3):
            while True:
                x = rng.uniform(-2, 2, 2)
                y = rng.uniform(-2, 2, 2)
                if (more.boundary_distances(x[None])[0] > 0.1
                        and more.boundary_distances(y[None])[0] > 0.1
                        and np.linalg.norm(x - y) > 0.1):
                    break
            res_more = inner.inner_cassinian(more, x, y)
            res_fewer = inner.inner_cassinian(
                P0, x, y, GeodesicOptions(extra_initial_paths=(res_more.path.vertices,)))
            assert res_fewer.value <= res_more.value + 1e-4


class TestBackends:
    def test_grid_agrees_with_descent(self):
        x = np.array([1.0, 0.0])
        y = np.array([0.0, 1.0])
        a = inner.inner_cassinian(P0, x, y)
        b = inner.inner_cassinian(P0, x, y, GeodesicOptions(
            backend="grid_dijkstra", grid_resolution=129))
        assert b.backend == "grid_dijkstra"
        assert b.value == pytest.approx(a.value, rel=1e-2)

    def test_grid_rejects_high_dim(self):
        with pytest.raises(DomainError):
            inner.inner_cassinian(
                PuncturedSpace(punctures=[np.zeros(4)]),
                np.array([1.0, 0, 0, 0]), np.array([0.0, 1, 0, 0]),
                GeodesicOptions(backend="grid_dijkstra"))

    def test_closed_form_backend(self):
        res = inner.inner_cassinian(P0, np.array([1.0, 0.0]), np.array([0.0, 1.0]),
                                    GeodesicOptions(backend="closed_form"))
        assert res.backend == "closed_form"
        assert res.value == pytest.approx(math.sqrt(2.0), abs=1e-15)
        # the rendered polyline is the analytic geodesic: its quadrature
        # length reproduces the closed form to discretization accuracy
        quad = inner.path_length_integral(P0, res.path.vertices)
        assert quad == pytest.approx(res.value, rel=1e-3)

    def test_closed_form_backend_unavailable(self):
        with pytest.raises(DomainError):
            inner.inner_cassinian(B2, np.array([0.3, 0.0]), np.array([0.6, 0.0]),
                                  GeodesicOptions(backend="closed_form"))

    def test_detour_initialization(self):
        # straight segment through the puncture forces a detour
        res = inner.inner_cassinian(P0, np.array([1.0, 0.0]), np.array([-1.0, 0.0]))
        cf = inner.closed_form_inner(P0, np.array([1.0, 0.0]), np.array([-1.0, 0.0]))
        assert res.value == pytest.approx(cf, rel=5e-3)


class TestCorollaryBound:
    def test_solver_below_bound(self):
        rng = np.random.default_rng(25)
        for _ in range(4):
            x = rng.uniform(-0.5, 0.5, 2)
            dx = B2.boundary_distance(x)
            u = rng.standard_normal(2)
            u /= np.linalg.norm(u)
            y = x + 0.6 * dx * u
            res = inner.inner_cassinian(B2, x, y)
            bound = inner.inner_upper_bound(B2, x, y)
            assert res.value <= bound * (1.0 + 1e-4)


class TestPathJson:
    def test_roundtrip(self):
        path = inner.Path(vertices=np.array([[0.0, 0.0], [0.5, 0.0]]),
                          length_value=1.0, scheme="quadrature")
        back = inner.path_from_json(json.loads(json.dumps(inner.path_to_json(path))))
        assert np.array_equal(back.vertices, path.vertices)
        assert back.length_value == path.length_value
        assert back.scheme == path.scheme
