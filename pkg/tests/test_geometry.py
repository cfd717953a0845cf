import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cassini.geometry import (
    Ball,
    DimensionError,
    DomainError,
    HalfSpace,
    PuncturedSpace,
    boundary_distance,
    boundary_sample,
    contains,
    domain_from_json,
    domain_to_json,
    unit_ball,
    upper_halfplane,
)

B2 = unit_ball(2)
P2 = PuncturedSpace(punctures=[[0.0, 0.0], [2.0, 0.0]])


def coords(n=2, lo=-3.0, hi=3.0):
    return st.lists(st.floats(lo, hi, allow_nan=False), min_size=n, max_size=n)


class TestBoundaryDistance:
    def test_ball_center(self):
        assert boundary_distance(B2, [0.0, 0.0]) == 1.0

    def test_ball_radial(self):
        assert boundary_distance(B2, [0.5, 0.0]) == 0.5

    def test_punctured_nearest(self):
        assert boundary_distance(P2, [0.5, 0.0]) == 0.5

    def test_halfspace_height(self):
        assert boundary_distance(upper_halfplane(), [3.0, 2.0]) == 2.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            boundary_distance(B2, [0.0, 0.0, 0.0])

    @given(coords(), coords())
    def test_lipschitz(self, a, b):
        x, y = np.array(a), np.array(b)
        for dom in (B2, P2, upper_halfplane()):
            dx = dom.boundary_distance(x)
            dy = dom.boundary_distance(y)
            assert abs(dx - dy) <= np.linalg.norm(x - y) + 1e-12

    @given(coords(), st.floats(0.1, 10.0))
    def test_ball_scaling_covariance(self, a, lam):
        x = np.array(a)
        big = Ball(center=np.zeros(2), radius=lam)
        assert big.boundary_distance(lam * x) == pytest.approx(
            lam * B2.boundary_distance(x), rel=1e-12, abs=1e-12)


class TestContains:
    def test_ball(self):
        assert contains(B2, [0.0, 0.0])
        assert not contains(B2, [1.0, 0.0])  # boundary excluded

    def test_puncture_removed(self):
        assert not contains(PuncturedSpace(punctures=[[0.0, 0.0]]), [0.0, 0.0])
        assert contains(PuncturedSpace(punctures=[[0.0, 0.0]]), [0.5, 0.0])

    @given(coords())
    def test_positive_clearance_iff_inside(self, a):
        x = np.array(a)
        for dom in (B2, upper_halfplane()):
            assert (dom.boundary_distance(x) > 0 and dom.contains(x)) or \
                   (not dom.contains(x))
            if dom.contains(x):
                assert dom.boundary_distance(x) > 0


class TestBoundarySample:
    def test_circle_on_sphere(self):
        pts = boundary_sample(B2, 4, seed=7)
        assert pts.shape == (4, 2)
        assert np.all(np.abs(np.linalg.norm(pts, axis=1) - 1.0) <= 1e-12)

    def test_ball3_on_sphere(self):
        pts = boundary_sample(unit_ball(3), 1000, seed=3)
        assert np.all(np.abs(np.linalg.norm(pts, axis=1) - 1.0) <= 1e-12)

    def test_punctured_returns_punctures(self):
        pts = boundary_sample(P2, 10, seed=0)
        assert np.array_equal(pts, P2.punctures)

    def test_deterministic(self):
        a = boundary_sample(B2, 16, seed=11)
        b = boundary_sample(B2, 16, seed=11)
        assert np.array_equal(a, b)

    def test_halfspace_needs_patch(self):
        with pytest.raises(ValueError):
            boundary_sample(upper_halfplane(), 5, seed=0)
        pts = boundary_sample(upper_halfplane(), 64, seed=0,
                              patch_center=[1.0, 2.0], patch_radius=5.0)
        assert np.all(np.abs(pts[:, 1]) <= 1e-12)
        assert np.all(np.abs(pts[:, 0] - 1.0) <= 5.0 + 1e-12)


class TestValidation:
    def test_bad_radius(self):
        with pytest.raises(DomainError):
            Ball(center=[0.0, 0.0], radius=0.0)

    def test_bad_normal(self):
        with pytest.raises(DomainError):
            HalfSpace(unit_normal=[0.0, 2.0], offset=0.0)

    def test_duplicate_punctures(self):
        with pytest.raises(DomainError):
            PuncturedSpace(punctures=[[0.0, 0.0], [0.0, 0.0]])

    def test_nonfinite_point(self):
        with pytest.raises(DomainError):
            boundary_distance(B2, [np.nan, 0.0])


class TestJson:
    @pytest.mark.parametrize("dom", [
        B2, Ball(center=[1.0, -2.0, 0.5], radius=3.0), upper_halfplane(), P2,
    ])
    def test_roundtrip(self, dom):
        back = domain_from_json(json.dumps(domain_to_json(dom)))
        assert type(back) is type(dom)
        assert back.dimension == dom.dimension
        x = np.full(dom.dimension, 0.25)
        assert back.boundary_distance(x) == dom.boundary_distance(x)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            domain_from_json({"kind": "torus"})
