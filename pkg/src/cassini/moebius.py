"""Moebius transformations of the unit ball and Cassinian distortion bounds.

A ball automorphism is represented as an explicit factor sequence of
orthogonal matrices and inversions in spheres orthogonal to the unit sphere.
The inversion swapping an interior point a with the origin, the sharp
multiplicative distortion bounds (1 -+ |a|) / (1 +- |a|), and the radial
configuration attaining the upper bound are all provided, together with
numeric residual checks for the two distance identities the bounds rest on
(inversions rescale distances by r^2 / (|x-a*||y-a*|); composing the
automorphism with the inversion that kills its origin image is a rigid map).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import metrics
from .geometry import DomainError, as_point, unit_ball

ORTHOGONAL_TOL = 1e-12
# points this close to an inversion center would map near infinity
CENTER_CLEARANCE = 1e-9


@dataclass(frozen=True)
class SphereInversion:
    """Inversion in a sphere orthogonal to the unit sphere.

    Orthogonality forces radius^2 = |center|^2 - 1, which is what makes the
    map preserve the unit ball; the constructor refuses anything else.
    """

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        c2 = float(self.center @ self.center)
        if c2 <= 1.0:
            raise DomainError("inversion center must lie outside the closed unit ball")
        if abs(self.radius * self.radius - (c2 - 1.0)) > ORTHOGONAL_TOL * max(1.0, c2):
            raise DomainError("inversion sphere must be orthogonal to the unit sphere")

    @property
    def dimension(self) -> int:
        return self.center.shape[0]

    def transform(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        d = X - self.center
        n2 = np.sum(d * d, axis=-1, keepdims=True)
        if np.any(n2 < CENTER_CLEARANCE * CENTER_CLEARANCE):
            raise DomainError("point coincides with the inversion center (maps to infinity)")
        return self.center + (self.radius * self.radius / n2) * d


@dataclass(frozen=True)
class MoebiusMap:
    """Composition of orthogonal matrices and sphere inversions, applied in
    sequence order; every factor preserves the unit ball, hence so does the
    composite."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(
            f if isinstance(f, SphereInversion) else np.asarray(f, dtype=float)
            for f in self.factors
        )
        dim = None
        for f in factors:
            if isinstance(f, SphereInversion):
                d = f.dimension
            else:
                if f.ndim != 2 or f.shape[0] != f.shape[1]:
                    raise DomainError("orthogonal factor must be a square matrix")
                if not np.allclose(f.T @ f, np.eye(f.shape[0]), atol=ORTHOGONAL_TOL):
                    raise DomainError("matrix factor is not orthogonal")
                d = f.shape[0]
            if dim is None:
                dim = d
            elif d != dim:
                raise DomainError("factors have mismatched dimensions")
        if dim is None:
            raise DomainError("a Moebius map needs at least one factor")
        object.__setattr__(self, "factors", factors)

    @property
    def dimension(self) -> int:
        f = self.factors[0]
        return f.dimension if isinstance(f, SphereInversion) else f.shape[0]

    def transform(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        for f in self.factors:
            if isinstance(f, SphereInversion):
                X = f.transform(X)
            else:
                X = X @ f.T
        return X


def inversion_sending_to_zero(a) -> SphereInversion:
    """The inversion swapping the interior point a (a != 0) with the origin."""
    a = as_point(a)
    na = float(np.linalg.norm(a))
    if na == 0.0:
        raise DomainError("a = 0 has no defining inversion; use an orthogonal map")
    if na >= 1.0:
        raise DomainError("a must lie in the open unit ball")
    center = a / (na * na)
    radius = math.sqrt(float(center @ center) - 1.0)
    return SphereInversion(center=center, radius=radius)


def apply(m, x) -> np.ndarray:
    """Apply a map (MoebiusMap, SphereInversion, or orthogonal matrix) to a point."""
    x = as_point(x)
    if isinstance(m, (MoebiusMap, SphereInversion)):
        return m.transform(x)
    m = np.asarray(m, dtype=float)
    return m @ x


def check_inversion_identity(s: SphereInversion, x, y) -> float:
    """Residual of |s(x) - s(y)| = r^2 |x-y| / (|x - center||y - center|)."""
    x = as_point(x)
    y = as_point(y)
    lhs = float(np.linalg.norm(s.transform(x) - s.transform(y)))
    dx = float(np.linalg.norm(x - s.center))
    dy = float(np.linalg.norm(y - s.center))
    rhs = s.radius * s.radius * float(np.linalg.norm(x - y)) / (dx * dy)
    return abs(lhs - rhs)


def distortion_bounds(a) -> tuple[float, float]:
    """Sharp multiplicative bounds on Cassinian distortion for maps with
    image-of-origin a: ((1-|a|)/(1+|a|), (1+|a|)/(1-|a|))."""
    a = as_point(a)
    na = float(np.linalg.norm(a))
    if na >= 1.0:
        raise DomainError("|a| must be < 1")
    return (1.0 - na) / (1.0 + na), (1.0 + na) / (1.0 - na)


@dataclass(frozen=True)
class SharpnessWitness:
    """Radial configuration attaining the upper distortion bound."""

    x: np.ndarray
    y: np.ndarray
    image_x: np.ndarray
    image_y: np.ndarray
    ratio: float


def sharpness_witness(a, t: float) -> SharpnessWitness:
    """Pair (0, t e1) whose images under the inversion swapping a and 0
    realize the distortion ratio (1+|a|)/(1-|a|) exactly.

    Requires a on the open e1 segment (0 < |a| < 1, a = |a| e1) and
    t in (-1, 0).
    """
    a = as_point(a)
    na = float(np.linalg.norm(a))
    if not 0.0 < na < 1.0 or abs(na - a[0]) > 1e-12 * max(1.0, na):
        raise DomainError("a must satisfy a = |a| e1 with 0 < |a| < 1")
    if not -1.0 < t < 0.0:
        raise DomainError("t must lie in (-1, 0)")
    n = a.shape[0]
    sigma = inversion_sending_to_zero(a)
    x = np.zeros(n)
    y = np.zeros(n)
    y[0] = t
    image_x = sigma.transform(x)
    image_y = sigma.transform(y)
    ball = unit_ball(n)
    c_pre = metrics.cassinian(ball, x, y).value
    c_post = metrics.cassinian(ball, image_x, image_y).value
    return SharpnessWitness(x=x, y=y, image_x=image_x, image_y=image_y,
                            ratio=c_post / c_pre)


def distortion_ratio(m, x, y) -> float:
    """c(m x, m y) / c(x, y) on the unit ball."""
    x = as_point(x)
    y = as_point(y)
    if np.array_equal(x, y):
        raise DomainError("distortion ratio needs distinct points")
    ball = unit_ball(x.shape[0])
    mx = apply(m, x)
    my = apply(m, y)
    c_pre = metrics.cassinian(ball, x, y).value
    c_post = metrics.cassinian(ball, mx, my).value
    return c_post / c_pre


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish orthogonal matrix (QR of a Gaussian, sign-fixed); reflections
    are allowed."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))[None, :]


def random_ball_automorphism(n: int, rng: np.random.Generator,
                             a_cap: float = 0.9) -> MoebiusMap:
    """U1 o sigma_a o U2 with Haar orthogonal factors and |a| <= a_cap."""
    u1 = random_orthogonal(n, rng)
    u2 = random_orthogonal(n, rng)
    d = rng.standard_normal(n)
    d /= np.linalg.norm(d)
    a = d * (a_cap * rng.uniform(0.05, 1.0))
    sigma = inversion_sending_to_zero(a)
    return MoebiusMap(factors=(u2, sigma, u1))


# -- JSON serialization -------------------------------------------------------

def map_to_json(m: MoebiusMap) -> dict:
    factors = []
    for f in m.factors:
        if isinstance(f, SphereInversion):
            factors.append({"type": "inversion", "center": f.center.tolist(),
                            "radius": f.radius})
        else:
            factors.append({"type": "orthogonal", "matrix": f.tolist()})
    return {"factors": factors}


def map_from_json(obj: dict | str) -> MoebiusMap:
    if isinstance(obj, str):
        obj = json.loads(obj)
    factors = []
    for f in obj["factors"]:
        if f["type"] == "inversion":
            factors.append(SphereInversion(center=np.asarray(f["center"], dtype=float),
                                           radius=float(f["radius"])))
        elif f["type"] == "orthogonal":
            factors.append(np.asarray(f["matrix"], dtype=float))
        else:
            raise ValueError(f"unknown factor type {f['type']!r}")
    return MoebiusMap(factors=tuple(factors))
