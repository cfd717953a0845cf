"""Domain descriptors for proper Euclidean subdomains: ball, half-space, punctured space.

Every other module queries domains exclusively through ``boundary_distance``,
``contains`` and ``boundary_sample``, so these three operations define the
geometric contract of the whole package.  The ambient space is R^n with
n >= 2; the point at infinity is never a boundary point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

# Metric operations reject points closer to the boundary than this: the
# Cassinian density 1/delta^2 and every metric here blow up at the boundary.
INTERIOR_TOL = 1e-12

# Numerical tolerance for structural invariants (unit normals, on-sphere checks).
GEOM_TOL = 1e-12


class DomainError(ValueError):
    """Point outside the domain, too close to the boundary, or parameter out of range."""


class DimensionError(ValueError):
    """Point dimension does not match the ambient dimension."""


def as_point(x) -> np.ndarray:
    """Coerce to a finite float vector of dimension >= 2."""
    p = np.asarray(x, dtype=float)
    if p.ndim != 1 or p.shape[0] < 2:
        raise DimensionError(f"expected a coordinate vector of dimension >= 2, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise DomainError("point has non-finite coordinates")
    return p


def _check_dim(domain: "Domain", x: np.ndarray) -> None:
    if x.shape[0] != domain.dimension:
        raise DimensionError(
            f"point dimension {x.shape[0]} != domain dimension {domain.dimension}"
        )


@dataclass(frozen=True)
class BoundaryWitness:
    """A boundary point (approximately) achieving a supremum or infimum.

    ``value`` is the achieved objective value, ``gap_estimate`` a conservative
    upper bound on the distance to the true extremal value, ``evaluations``
    the number of objective evaluations spent.
    """

    point: np.ndarray
    value: float
    gap_estimate: float
    evaluations: int


class Domain:
    """Base interface; see Ball, HalfSpace, PuncturedSpace."""

    kind: str = ""

    @property
    def dimension(self) -> int:
        raise NotImplementedError

    def boundary_distance(self, x) -> float:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def boundary_sample(self, m: int, seed: int = 0, **kw) -> np.ndarray:
        raise NotImplementedError

    # vectorized variant used by the solvers and the harness; X is (k, n)
    def boundary_distances(self, X: np.ndarray) -> np.ndarray:
        return np.array([self.boundary_distance(x) for x in np.atleast_2d(X)])

    # signed inner distance: equals boundary distance inside, negative outside
    # (punctured space is "inside" everywhere off the punctures)
    def interior_clearances(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class Ball(Domain):
    center: np.ndarray
    radius: float
    kind: str = field(default="ball", init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise DomainError(f"ball radius must be positive, got {self.radius}")

    @property
    def dimension(self) -> int:
        return self.center.shape[0]

    def boundary_distance(self, x) -> float:
        x = as_point(x)
        _check_dim(self, x)
        return abs(self.radius - float(np.linalg.norm(x - self.center)))

    def boundary_distances(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.abs(self.radius - np.linalg.norm(X - self.center, axis=-1))

    def interior_clearances(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return self.radius - np.linalg.norm(X - self.center, axis=-1)

    def contains(self, x) -> bool:
        x = as_point(x)
        _check_dim(self, x)
        return float(np.linalg.norm(x - self.center)) < self.radius

    def boundary_sample(self, m: int, seed: int = 0, **kw) -> np.ndarray:
        if m < 1:
            raise ValueError("m must be >= 1")
        rng = np.random.default_rng(seed)
        w = rng.standard_normal((m, self.dimension))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        return self.center + self.radius * w


@dataclass(frozen=True)
class HalfSpace(Domain):
    """The open set { x : <x, unit_normal> > offset }."""

    unit_normal: np.ndarray
    offset: float
    kind: str = field(default="halfspace", init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "unit_normal", as_point(self.unit_normal))
        object.__setattr__(self, "offset", float(self.offset))
        if abs(float(np.linalg.norm(self.unit_normal)) - 1.0) > GEOM_TOL:
            raise DomainError("half-space normal must have unit length")

    @property
    def dimension(self) -> int:
        return self.unit_normal.shape[0]

    def boundary_distance(self, x) -> float:
        x = as_point(x)
        _check_dim(self, x)
        return abs(float(x @ self.unit_normal) - self.offset)

    def boundary_distances(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.abs(X @ self.unit_normal - self.offset)

    def interior_clearances(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return X @ self.unit_normal - self.offset

    def contains(self, x) -> bool:
        x = as_point(x)
        _check_dim(self, x)
        return float(x @ self.unit_normal) > self.offset

    def hyperplane_basis(self) -> np.ndarray:
        """Orthonormal basis of the boundary hyperplane, rows = basis vectors."""
        n = self.dimension
        basis = np.eye(n)
        # Gram-Schmidt against the normal, dropping the most-parallel axis.
        drop = int(np.argmax(np.abs(self.unit_normal)))
        vecs = [basis[i] for i in range(n) if i != drop]
        out = []
        for v in vecs:
            w = v - (v @ self.unit_normal) * self.unit_normal
            for u in out:
                w = w - (w @ u) * u
            out.append(w / np.linalg.norm(w))
        return np.array(out)

    def project(self, x) -> np.ndarray:
        """Orthogonal projection onto the boundary hyperplane."""
        x = as_point(x)
        return x - (float(x @ self.unit_normal) - self.offset) * self.unit_normal

    def boundary_sample(self, m: int, seed: int = 0, *, patch_center=None,
                        patch_radius: float | None = None) -> np.ndarray:
        if m < 1:
            raise ValueError("m must be >= 1")
        if patch_center is None or patch_radius is None:
            raise ValueError("half-space boundary sampling needs patch_center and patch_radius")
        rng = np.random.default_rng(seed)
        origin = self.project(as_point(patch_center))
        basis = self.hyperplane_basis()  # (n-1, n)
        k = basis.shape[0]
        # uniform in the k-dimensional patch disk by rejection from the cube
        pts = np.empty((m, k))
        got = 0
        while got < m:
            cand = rng.uniform(-1.0, 1.0, size=(2 * (m - got) + 8, k))
            cand = cand[np.sum(cand * cand, axis=1) <= 1.0]
            take = min(len(cand), m - got)
            pts[got:got + take] = cand[:take]
            got += take
        return origin + (patch_radius * pts) @ basis


@dataclass(frozen=True)
class PuncturedSpace(Domain):
    """R^n minus a nonempty finite set of punctures."""

    punctures: np.ndarray
    kind: str = field(default="punctured", init=False, repr=False)

    def __post_init__(self):
        P = np.atleast_2d(np.asarray(self.punctures, dtype=float))
        if P.shape[0] < 1 or P.shape[1] < 2 or not np.all(np.isfinite(P)):
            raise DomainError("punctures must be a nonempty list of finite points, n >= 2")
        for i in range(P.shape[0]):
            for j in range(i + 1, P.shape[0]):
                if np.array_equal(P[i], P[j]):
                    raise DomainError("punctures must be pairwise distinct")
        object.__setattr__(self, "punctures", P)

    @property
    def dimension(self) -> int:
        return self.punctures.shape[1]

    def boundary_distance(self, x) -> float:
        x = as_point(x)
        _check_dim(self, x)
        return float(np.min(np.linalg.norm(self.punctures - x, axis=1)))

    def boundary_distances(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        d = np.linalg.norm(X[:, None, :] - self.punctures[None, :, :], axis=-1)
        return d.min(axis=1)

    def interior_clearances(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        d = np.linalg.norm(X[..., None, :] - self.punctures, axis=-1)
        return d.min(axis=-1)

    def contains(self, x) -> bool:
        x = as_point(x)
        _check_dim(self, x)
        return self.boundary_distance(x) > 0.0

    def boundary_sample(self, m: int, seed: int = 0, **kw) -> np.ndarray:
        # the boundary is the finite puncture set; m is ignored
        return self.punctures.copy()


def unit_ball(n: int) -> Ball:
    return Ball(center=np.zeros(n), radius=1.0)


def upper_halfplane() -> HalfSpace:
    """The planar upper half-plane { (x, y) : y > 0 }."""
    return HalfSpace(unit_normal=np.array([0.0, 1.0]), offset=0.0)


# -- module-level wrappers mirroring the domain methods ----------------------

def boundary_distance(domain: Domain, x) -> float:
    return domain.boundary_distance(x)


def contains(domain: Domain, x) -> bool:
    return domain.contains(x)


def boundary_sample(domain: Domain, m: int, seed: int = 0, **kw) -> np.ndarray:
    return domain.boundary_sample(m, seed, **kw)


def require_interior(domain: Domain, x, tol: float = INTERIOR_TOL) -> np.ndarray:
    """Validate that x lies in the domain with boundary distance >= tol."""
    x = as_point(x)
    _check_dim(domain, x)
    if not domain.contains(x):
        raise DomainError(f"point {x.tolist()} is not inside the {domain.kind} domain")
    if domain.boundary_distance(x) < tol:
        raise DomainError(f"point {x.tolist()} is closer than {tol} to the boundary")
    return x


# -- JSON serialization -------------------------------------------------------

def domain_to_json(domain: Domain) -> dict:
    if isinstance(domain, Ball):
        return {"kind": "ball", "center": domain.center.tolist(), "radius": domain.radius}
    if isinstance(domain, HalfSpace):
        return {"kind": "halfspace", "normal": domain.unit_normal.tolist(),
                "offset": domain.offset}
    if isinstance(domain, PuncturedSpace):
        return {"kind": "punctured", "punctures": domain.punctures.tolist()}
    raise TypeError(f"unknown domain type {type(domain)!r}")


def domain_from_json(obj: dict | str) -> Domain:
    if isinstance(obj, str):
        obj = json.loads(obj)
    kind = obj.get("kind")
    if kind == "ball":
        return Ball(center=np.asarray(obj["center"], dtype=float), radius=float(obj["radius"]))
    if kind == "halfspace":
        return HalfSpace(unit_normal=np.asarray(obj["normal"], dtype=float),
                         offset=float(obj["offset"]))
    if kind == "punctured":
        return PuncturedSpace(punctures=np.asarray(obj["punctures"], dtype=float))
    raise ValueError(f"unknown domain kind {kind!r}")
