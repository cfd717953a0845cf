"""Point-pair quantities on canonical domains.

Implements the Cassinian metric (a boundary supremum), the distance ratio
metric, the hyperbolic metric of the unit ball and upper half-plane, the
visual angle metric, and the quantity p (a hyperbolic-style ratio that is
not itself a metric).  Closed forms are used wherever the defining formula
is explicit; the two genuine boundary suprema (Cassinian, visual angle) are
solved by a two-stage scheme:

  stage 1: restrict the boundary objective to the 2-plane through x, y and
           the domain's natural axis (ball center / boundary projections),
           scan densely in angle (or arclength), refine the best bracket by
           golden section;
  stage 2: cross-check with a 64-start projected coordinate descent over the
           full boundary, and keep the better value.

Stage 1 is exact whenever the extremal boundary point lies in that plane
(empirically always, for these domains); stage 2 guards the computation if
it ever does not.  All kernels are vectorized over pair batches: the
single-pair operations run the same code with a batch of one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    Ball,
    BoundaryWitness,
    Domain,
    DomainError,
    HalfSpace,
    PuncturedSpace,
    as_point,
    require_interior,
)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

# defaults for the supremum solvers
CASSINIAN_SCAN = 2048
VISUAL_SCAN = 4096
DESCENT_STARTS = 64
DESCENT_FLOOR = 1e-12
GOLDEN_TOL = 1e-12


@dataclass(frozen=True)
class MetricValue:
    """A computed point-pair quantity with provenance.

    ``witness`` is set for the two boundary-supremum quantities and locates a
    boundary point at which the reported value is attained (within
    ``witness.gap_estimate``).
    """

    value: float
    witness: BoundaryWitness | None = None
    method: str = "closed_form"  # closed_form | optimized | sampled


@dataclass(frozen=True)
class InequalityConfig:
    """Norm cap and tolerance for the small-norm comparison lemmas."""

    lambda_bound: float = 0.0
    tolerance: float = 1e-10

    def __post_init__(self):
        if not 0.0 <= self.lambda_bound < 1.0:
            raise ValueError("lambda_bound must lie in [0, 1)")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


# ---------------------------------------------------------------------------
# small vector helpers
# ---------------------------------------------------------------------------

def _norm(V: np.ndarray) -> np.ndarray:
    return np.linalg.norm(V, axis=-1)


def _plane_basis_batch(V1: np.ndarray, V2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal basis of span{v1, v2} per row, with deterministic fallback.

    Degenerate rows (zero or collinear vectors) get the first standard basis
    vector not parallel to the primary direction as the second axis.
    """
    k, n = V1.shape
    n1 = _norm(V1)
    n2 = _norm(V2)
    primary = np.where(n1[:, None] > 1e-300, V1, V2)
    pn = _norm(primary)
    # both zero: arbitrary (callers exclude this), use e1
    e1 = np.zeros((k, n))
    e1[:, 0] = 1.0
    primary = np.where(pn[:, None] > 1e-300, primary, e1)
    U1 = primary / np.maximum(_norm(primary), 1e-300)[:, None]

    secondary = np.where(n1[:, None] > 1e-300, V2, V1)
    W = secondary - np.sum(secondary * U1, axis=1, keepdims=True) * U1
    wn = _norm(W)
    degenerate = wn <= 1e-12 * np.maximum(np.maximum(n1, n2), 1.0)
    if np.any(degenerate):
        # first standard basis vector not parallel to U1
        not_parallel = np.abs(U1) < 1.0 - 1e-9  # (k, n) True where e_j admissible
        j = np.argmax(not_parallel, axis=1)
        E = np.zeros((k, n))
        E[np.arange(k), j] = 1.0
        Wf = E - np.sum(E * U1, axis=1, keepdims=True) * U1
        W = np.where(degenerate[:, None], Wf, W)
        wn = _norm(W)
    U2 = W / np.maximum(wn, 1e-300)[:, None]
    return U1, U2


def _golden_batch(f, a: np.ndarray, b: np.ndarray, iters: int):
    """Lockstep golden-section minimization of ``f`` over per-row brackets."""
    h = b - a
    c = a + (1.0 - _INVPHI) * h
    d = a + _INVPHI * h
    fc = f(c)
    fd = f(d)
    for _ in range(iters):
        less = fc < fd
        a_new = np.where(less, a, c)
        b_new = np.where(less, d, b)
        width = b_new - a_new
        c_cand = a_new + (1.0 - _INVPHI) * width
        d_cand = a_new + _INVPHI * width
        t_eval = np.where(less, c_cand, d_cand)
        f_eval = f(t_eval)
        c_new = np.where(less, c_cand, d)
        d_new = np.where(less, c, d_cand)
        fc_new = np.where(less, f_eval, fd)
        fd_new = np.where(less, fc, f_eval)
        a, b, c, d, fc, fd = a_new, b_new, c_new, d_new, fc_new, fd_new
    t_best = np.where(fc < fd, c, d)
    f_best = np.minimum(fc, fd)
    return t_best, f_best


def _golden_iters(width: float, tol: float) -> int:
    if width <= tol:
        return 1
    return int(math.ceil(math.log(width / tol) / math.log(1.0 / _INVPHI))) + 1


# ---------------------------------------------------------------------------
# boundary objectives, vectorized in the ambient space
# ---------------------------------------------------------------------------

def _product_objective(X: np.ndarray, Y: np.ndarray, P: np.ndarray) -> np.ndarray:
    """|x - p| * |p - y| with broadcasting over trailing point axes of P."""
    return _norm(X - P) * _norm(P - Y)


def _angle_objective(X: np.ndarray, Y: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Euclidean angle subtended by x and y at p, in [0, pi].

    Uses the half-angle form 2 atan2(|u - w|, |u + w|) on unit vectors, which
    stays fully accurate for tiny angles (arccos loses everything below the
    square root of machine epsilon) and for angles near pi.
    """
    vx = X - P
    vy = Y - P
    u = vx / np.maximum(_norm(vx), 1e-300)[..., None]
    w = vy / np.maximum(_norm(vy), 1e-300)[..., None]
    return 2.0 * np.arctan2(_norm(u - w), _norm(u + w))


def _signed_axes(n: int) -> np.ndarray:
    """The 2n signed coordinate directions, shape (2n, n)."""
    eye = np.eye(n)
    return np.concatenate([eye, -eye], axis=0)


def _coordinate_descent(eval_fn, project_fn, Z0, step0, floor, max_sweeps=250):
    """Gradient-free coordinate descent over a batch of lanes.

    ``Z0`` is (L, m): L independent lanes in m coordinates.  Each sweep
    evaluates all 2m signed coordinate moves of every still-active lane in
    one vectorized pass, keeps per-lane best moves, and halves the step of
    lanes that stalled (sub-roundoff gains do not count as progress).  Lanes
    whose step falls below ``floor`` drop out of the work arrays, so the
    sweep cost tracks the shrinking active set.  Returns (Z, F, evaluations).
    """
    Z = project_fn(np.array(Z0, dtype=float))
    L, m = Z.shape
    F = eval_fn(Z[:, None, :], np.arange(L))[:, 0]
    dirs = _signed_axes(m)
    step = np.broadcast_to(np.asarray(step0, dtype=float), (L,)).copy()
    floor = np.broadcast_to(np.asarray(floor, dtype=float), (L,)).copy()
    active = np.flatnonzero(step >= floor)
    evals = L
    for _ in range(max_sweeps):
        if active.size == 0:
            break
        Za = Z[active]
        C = Za[:, None, :] + step[active, None, None] * dirs[None, :, :]
        C = project_fn(C)
        FC = eval_fn(C, active)  # (A, 2m)
        evals += FC.size
        jb = np.argmin(FC, axis=1)
        ar = np.arange(active.size)
        Fb = FC[ar, jb]
        Fa = F[active]
        better = Fb < Fa - 1e-12 * np.abs(Fa)
        Z[active] = np.where(better[:, None], C[ar, jb], Za)
        F[active] = np.where(better, Fb, Fa)
        step[active] = np.where(better, step[active], 0.5 * step[active])
        active = active[step[active] >= floor[active]]
    return Z, F, evals


def _planar_angles(px, py, qx, qy):
    """Stable angle between planar vectors (px, py) and (qx, qy)."""
    na = np.maximum(np.hypot(px, py), 1e-300)
    nb = np.maximum(np.hypot(qx, qy), 1e-300)
    ux, uy = px / na, py / na
    wx, wy = qx / nb, qy / nb
    return 2.0 * np.arctan2(np.hypot(ux - wx, uy - wy), np.hypot(ux + wx, uy + wy))


def _sphere_descent(mode, X, Y, center, radius, W0, floor, max_sweeps=250):
    """Multistart descent of the boundary objective over the sphere.

    ``W0`` is (k, s, n): s start directions per pair; moves are coordinate
    steps in the ambient axes projected back to the unit sphere.  Returns
    per-pair best (value, direction) and the evaluation count.
    """
    k, s, n = W0.shape
    lane_pair = np.repeat(np.arange(k), s)
    Xl = np.asarray(X, dtype=float)[lane_pair]
    Yl = np.asarray(Y, dtype=float)[lane_pair]

    def eval_fn(C, idx):
        P = center + radius * C
        xs = Xl[idx][:, None, :]
        ys = Yl[idx][:, None, :]
        if mode == "cassinian":
            return _product_objective(xs, ys, P)
        return -_angle_objective(xs, ys, P)

    def project(C):
        return C / np.maximum(_norm(C), 1e-300)[..., None]

    Z, F, evals = _coordinate_descent(eval_fn, project, W0.reshape(k * s, n),
                                      math.pi / 4.0, floor, max_sweeps)
    F = F.reshape(k, s)
    i = np.argmin(F, axis=1)
    rows = np.arange(k)
    return F[rows, i], Z.reshape(k, s, n)[rows, i], evals


def _start_directions(count: int, n: int) -> np.ndarray:
    """Deterministic spread of unit vectors used as descent starts."""
    rng = np.random.default_rng(5061)  # fixed; starts never depend on the query
    W = rng.standard_normal((count, n))
    return W / _norm(W)[:, None]


# ---------------------------------------------------------------------------
# ball kernels
# ---------------------------------------------------------------------------

def _ball_supremum_batch(domain: Ball, X, Y, *, mode: str, samples: int,
                         starts: int, floor: float, screen: int | None = None):
    """Shared two-stage solver for the ball's boundary suprema.

    mode "cassinian": minimize |x-p||p-y| over the sphere, report
    sep / min as the metric value.  mode "visual": maximize the subtended
    angle.  Returns (values, gaps, witness_points, evaluations).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    k, n = X.shape
    c = domain.center
    R = domain.radius
    vx = X - c
    vy = Y - c
    U1, U2 = _plane_basis_batch(vx, vy)
    x2 = np.stack([np.sum(vx * U1, axis=1), np.sum(vx * U2, axis=1)], axis=1)
    y2 = np.stack([np.sum(vy * U1, axis=1), np.sum(vy * U2, axis=1)], axis=1)

    # stage 1a: dense angular scan (chunked to bound memory); the golden
    # stage minimizes, so the angle objective is negated throughout

    theta = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    best_theta = np.empty(k)
    best_val = np.empty(k)
    chunk = max(1, int(4_000_000 // samples))
    for lo in range(0, k, chunk):
        hi = min(k, lo + chunk)
        ct = np.cos(theta)[None, :]
        st = np.sin(theta)[None, :]
        px = R * ct - x2[lo:hi, 0][:, None]
        py_ = R * st - x2[lo:hi, 1][:, None]
        qx = R * ct - y2[lo:hi, 0][:, None]
        qy = R * st - y2[lo:hi, 1][:, None]
        if mode == "cassinian":
            vals = np.sqrt((px * px + py_ * py_) * (qx * qx + qy * qy))
        else:
            vals = -_planar_angles(px, py_, qx, qy)
        idx = np.argmin(vals, axis=1)
        best_theta[lo:hi] = theta[idx]
        best_val[lo:hi] = vals[np.arange(hi - lo), idx]
    evals = k * samples

    # stage 1b: golden-section refinement of three candidate brackets; the
    # angles of x and y seed brackets so near-boundary dips narrower than the
    # scan mesh are never missed.
    hmesh = 2.0 * math.pi / samples
    tx = np.arctan2(x2[:, 1], x2[:, 0])
    ty = np.arctan2(y2[:, 1], y2[:, 0])
    tx = np.where(_norm(x2) > 1e-12 * R, tx, best_theta)
    ty = np.where(_norm(y2) > 1e-12 * R, ty, best_theta)
    cands = np.stack([best_theta, tx, ty], axis=1)  # (k, 3)
    iters = _golden_iters(2.0 * hmesh, GOLDEN_TOL)

    def planar3(t):
        ct = np.cos(t)
        st = np.sin(t)
        px = R * ct - x2[:, 0][:, None]
        py_ = R * st - x2[:, 1][:, None]
        qx = R * ct - y2[:, 0][:, None]
        qy = R * st - y2[:, 1][:, None]
        if mode == "cassinian":
            return np.sqrt((px * px + py_ * py_) * (qx * qx + qy * qy))
        return -_planar_angles(px, py_, qx, qy)

    t_ref, f_ref = _golden_batch(planar3, cands - hmesh, cands + hmesh, iters)
    evals += 3 * k * (iters + 2)
    j = np.argmin(f_ref, axis=1)
    rows = np.arange(k)
    theta_star = t_ref[rows, j]
    W_planar = (np.cos(theta_star)[:, None] * U1 + np.sin(theta_star)[:, None] * U2)

    # stage 2: full-sphere multistart cross-check (the planar slice already
    # covers the whole boundary when n == 2)
    if n >= 3 and starts > 0:
        shared = _start_directions(max(starts - 4, 1), n)
        # radial directions of x and y seed the descent (they carry the
        # near-boundary dips); degenerate rows fall back to the planar witness
        wx = np.where((_norm(vx) > 1e-12 * R)[:, None],
                      vx / np.maximum(_norm(vx), 1e-300)[:, None], W_planar)
        wy = np.where((_norm(vy) > 1e-12 * R)[:, None],
                      vy / np.maximum(_norm(vy), 1e-300)[:, None], W_planar)
        specials = np.stack([wx, wy, W_planar, -W_planar], axis=1)  # (k, 4, n)

        if mode == "cassinian":
            flat_obj = lambda P: _product_objective(X[:, None, :], Y[:, None, :], P)
        else:
            flat_obj = lambda P: -_angle_objective(X[:, None, :], Y[:, None, :], P)

        W_shared = np.broadcast_to(shared, (k,) + shared.shape)
        if screen is not None and shared.shape[0] > screen:
            # descend only the most promising starts per pair; every start is
            # still evaluated, so no basin seen by the 64 starts is dropped
            F0 = flat_obj(c + R * shared[None, :, :])
            evals += F0.size
            idx = np.argpartition(F0, screen, axis=1)[:, :screen]
            W_sel = np.take_along_axis(W_shared, idx[..., None], axis=1)
            W0 = np.concatenate([W_sel, specials], axis=1)
        else:
            W0 = np.concatenate([W_shared, specials], axis=1)
        f_desc, w_desc, ev = _sphere_descent(mode, X, Y, c, R, W0, floor)
        evals += ev
        better = f_desc < f_ref[rows, j]
        W_final = np.where(better[:, None], w_desc, W_planar)
    else:
        W_final = W_planar

    P_star = c + R * W_final
    # report the value re-evaluated in ambient coordinates at the witness, so
    # objective(witness) reproduces it exactly
    if mode == "cassinian":
        f_star = _product_objective(X, Y, P_star)
        sep = _norm(X - Y)
        values = sep / np.maximum(f_star, 1e-300)
        scan_values = sep / np.maximum(np.abs(best_val), 1e-300)
        dx = np.maximum(R - _norm(vx), 1e-300)
        dy = np.maximum(R - _norm(vy), 1e-300)
        lip = sep * (1.0 / (dx * dx * dy) + 1.0 / (dx * dy * dy))
    else:
        values = _angle_objective(X, Y, P_star)
        scan_values = -best_val
        dx = np.maximum(R - _norm(vx), 1e-300)
        dy = np.maximum(R - _norm(vy), 1e-300)
        lip = 1.0 / dx + 1.0 / dy
    gaps = np.abs(values - scan_values) + lip * (2.0 * math.pi * R / samples)
    return values, gaps, P_star, evals


# ---------------------------------------------------------------------------
# half-space kernels
# ---------------------------------------------------------------------------

def _halfspace_supremum_batch(domain: HalfSpace, X, Y, *, mode: str, samples: int,
                              starts: int, floor: float, screen: int | None = None):
    """Two-stage solver on the boundary hyperplane.

    The line through the boundary projections of x and y carries the product
    minimizer exactly (moving perpendicular to it increases both factors),
    and empirically the angle maximizer as well; the multistart stage
    explores the full patch for n >= 3 regardless.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    k, n = X.shape
    nrm = domain.unit_normal
    hx = X @ nrm - domain.offset
    hy = Y @ nrm - domain.offset
    PX = X - hx[:, None] * nrm  # boundary projections
    PY = Y - hy[:, None] * nrm
    origin = 0.5 * (PX + PY)
    span = PY - PX
    sn = _norm(span)
    basis = domain.hyperplane_basis()  # (n-1, n)
    dirv = np.where(sn[:, None] > 1e-300, span / np.maximum(sn, 1e-300)[:, None],
                    basis[0][None, :])

    T = 10.0 * (1.0 + _norm(X) + _norm(Y))  # patch half-extent per pair

    def line_obj(t):
        P = origin[:, None, :] + t[..., None] * dirv[:, None, :]
        if mode == "cassinian":
            return _product_objective(X[:, None, :], Y[:, None, :], P)
        return -_angle_objective(X[:, None, :], Y[:, None, :], P)

    # dense scan of the line patch
    u = np.linspace(-1.0, 1.0, samples)
    tgrid = T[:, None] * u[None, :]
    best_t = np.empty(k)
    best_val = np.empty(k)
    chunk = max(1, int(4_000_000 // samples))
    for lo in range(0, k, chunk):
        hi = min(k, lo + chunk)
        P = origin[lo:hi, None, :] + tgrid[lo:hi][..., None] * dirv[lo:hi, None, :]
        if mode == "cassinian":
            vals = _product_objective(X[lo:hi, None, :], Y[lo:hi, None, :], P)
        else:
            vals = -_angle_objective(X[lo:hi, None, :], Y[lo:hi, None, :], P)
        idx = np.argmin(vals, axis=1)
        best_t[lo:hi] = tgrid[lo:hi][np.arange(hi - lo), idx]
        best_val[lo:hi] = vals[np.arange(hi - lo), idx]
    evals = k * samples

    # golden refinement around the scan best and both projections
    hmesh = 2.0 * T / (samples - 1)
    t_px = np.sum((PX - origin) * dirv, axis=1)
    t_py = np.sum((PY - origin) * dirv, axis=1)
    cands = np.stack([best_t, t_px, t_py], axis=1)
    iters = _golden_iters(float(np.max(2.0 * hmesh)), GOLDEN_TOL)
    t_ref, f_ref = _golden_batch(line_obj, cands - hmesh[:, None],
                                 cands + hmesh[:, None], iters)
    evals += 3 * k * (iters + 2)
    rows = np.arange(k)
    j = np.argmin(f_ref, axis=1)
    t_star = t_ref[rows, j]
    P_star = origin + t_star[:, None] * dirv
    f_star = f_ref[rows, j]

    if n >= 3 and starts > 0:
        # multistart coordinate descent in hyperplane coordinates
        m = basis.shape[0]
        sdirs = _start_directions(starts, m)
        if screen is not None and starts > screen:
            P0 = origin[:, None, :] + (T[:, None, None] * sdirs[None, :, :]) @ basis
            if mode == "cassinian":
                F0 = _product_objective(X[:, None, :], Y[:, None, :], P0)
            else:
                F0 = -_angle_objective(X[:, None, :], Y[:, None, :], P0)
            evals += F0.size
            idx = np.argpartition(F0, screen, axis=1)[:, :screen]
            sel = np.take_along_axis(
                np.broadcast_to(sdirs, (k,) + sdirs.shape), idx[..., None], axis=1)
            S0 = T[:, None, None] * sel
        else:
            S0 = T[:, None, None] * np.broadcast_to(sdirs, (k,) + sdirs.shape)
        # include the refined line point as a start
        S0 = np.concatenate([S0, ((P_star - origin) @ basis.T)[:, None, :]], axis=1)
        s = S0.shape[1]
        lane_pair = np.repeat(np.arange(k), s)
        Xl = X[lane_pair]
        Yl = Y[lane_pair]
        Ol = origin[lane_pair]

        def patch_eval(C, idx):
            P = Ol[idx][:, None, :] + C @ basis
            xs = Xl[idx][:, None, :]
            ys = Yl[idx][:, None, :]
            if mode == "cassinian":
                return _product_objective(xs, ys, P)
            return -_angle_objective(xs, ys, P)

        step0 = (T / 4.0)[lane_pair]
        floor_len = np.maximum(floor, 1e-14) * T[lane_pair]
        Z, F, ev = _coordinate_descent(patch_eval, lambda C: C,
                                       S0.reshape(k * s, m), step0, floor_len)
        evals += ev
        F = F.reshape(k, s)
        i = np.argmin(F, axis=1)
        f_desc = F[rows, i]
        P_desc = origin + Z.reshape(k, s, m)[rows, i] @ basis
        better = f_desc < f_star
        P_star = np.where(better[:, None], P_desc, P_star)

    if mode == "cassinian":
        f_fin = _product_objective(X, Y, P_star)
        sep = _norm(X - Y)
        values = sep / np.maximum(f_fin, 1e-300)
        scan_values = sep / np.maximum(np.abs(best_val), 1e-300)
        dx = np.maximum(np.abs(hx), 1e-300)
        dy = np.maximum(np.abs(hy), 1e-300)
        lip = sep * (1.0 / (dx * dx * dy) + 1.0 / (dx * dy * dy))
    else:
        values = _angle_objective(X, Y, P_star)
        scan_values = -best_val
        dx = np.maximum(np.abs(hx), 1e-300)
        dy = np.maximum(np.abs(hy), 1e-300)
        lip = 1.0 / dx + 1.0 / dy
    gaps = np.abs(values - scan_values) + lip * hmesh
    return values, gaps, P_star, evals


# ---------------------------------------------------------------------------
# punctured-space kernels (finite boundary: exact maxima)
# ---------------------------------------------------------------------------

def _punctured_supremum_batch(domain: PuncturedSpace, X, Y, *, mode: str):
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    P = domain.punctures  # (m, n)
    if mode == "cassinian":
        f = _product_objective(X[:, None, :], Y[:, None, :], P[None, :, :])
        i = np.argmin(f, axis=1)
        rows = np.arange(X.shape[0])
        sep = _norm(X - Y)
        values = sep / np.maximum(f[rows, i], 1e-300)
    else:
        a = _angle_objective(X[:, None, :], Y[:, None, :], P[None, :, :])
        i = np.argmax(a, axis=1)
        rows = np.arange(X.shape[0])
        values = a[rows, i]
    witness = P[i]
    gaps = np.zeros(X.shape[0])
    return values, gaps, witness, X.shape[0] * P.shape[0]


# ---------------------------------------------------------------------------
# vectorized quantity kernels (used by the harness)
# ---------------------------------------------------------------------------

def cassinian_values(domain: Domain, X, Y, *, samples: int = CASSINIAN_SCAN,
                     starts: int = DESCENT_STARTS, floor: float = DESCENT_FLOOR,
                     screen: int | None = None):
    """Vectorized Cassinian metric: returns (values, gap_estimates).

    ``screen`` caps how many of the evaluated descent starts are refined per
    pair (throughput mode for large batches); None refines all of them.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if isinstance(domain, PuncturedSpace):
        v, g, _, _ = _punctured_supremum_batch(domain, X, Y, mode="cassinian")
    elif isinstance(domain, Ball):
        v, g, _, _ = _ball_supremum_batch(domain, X, Y, mode="cassinian",
                                          samples=samples, starts=starts,
                                          floor=floor, screen=screen)
    elif isinstance(domain, HalfSpace):
        v, g, _, _ = _halfspace_supremum_batch(domain, X, Y, mode="cassinian",
                                               samples=samples, starts=starts,
                                               floor=floor, screen=screen)
    else:
        raise TypeError(f"unsupported domain {type(domain)!r}")
    degenerate = _norm(X - Y) == 0.0
    return np.where(degenerate, 0.0, v), np.where(degenerate, 0.0, g)


def visual_angle_values(domain: Domain, X, Y, *, samples: int = VISUAL_SCAN,
                        starts: int = DESCENT_STARTS, floor: float = DESCENT_FLOOR,
                        screen: int | None = None):
    """Vectorized visual angle metric: returns (values, gap_estimates)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if isinstance(domain, PuncturedSpace):
        v, g, _, _ = _punctured_supremum_batch(domain, X, Y, mode="visual")
    elif isinstance(domain, Ball):
        v, g, _, _ = _ball_supremum_batch(domain, X, Y, mode="visual",
                                          samples=samples, starts=starts,
                                          floor=floor, screen=screen)
    elif isinstance(domain, HalfSpace):
        v, g, _, _ = _halfspace_supremum_batch(domain, X, Y, mode="visual",
                                               samples=samples, starts=starts,
                                               floor=floor, screen=screen)
    else:
        raise TypeError(f"unsupported domain {type(domain)!r}")
    degenerate = _norm(X - Y) == 0.0
    return np.where(degenerate, 0.0, v), np.where(degenerate, 0.0, g)


def distance_ratio_values(domain: Domain, X, Y) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    dmin = np.minimum(domain.boundary_distances(X), domain.boundary_distances(Y))
    return np.log1p(_norm(X - Y) / dmin)


def p_values(domain: Domain, X, Y) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    sep = _norm(X - Y)
    dx = domain.boundary_distances(X)
    dy = domain.boundary_distances(Y)
    return sep / np.sqrt(sep * sep + 4.0 * dx * dy)


def hyperbolic_ball_values(X, Y) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    s = _norm(X - Y) / np.sqrt((1.0 - np.sum(X * X, 1)) * (1.0 - np.sum(Y * Y, 1)))
    return 2.0 * np.arcsinh(s)


# ---------------------------------------------------------------------------
# public single-pair operations
# ---------------------------------------------------------------------------

def _degenerate_pair(x: np.ndarray, y: np.ndarray) -> bool:
    return bool(np.array_equal(x, y))


def cassinian(domain: Domain, x, y) -> MetricValue:
    """Cassinian metric: sup over boundary points p of |x-y| / (|x-p||p-y|)."""
    x = require_interior(domain, x)
    y = require_interior(domain, y)
    if _degenerate_pair(x, y):
        return MetricValue(0.0, None, "closed_form")
    if isinstance(domain, PuncturedSpace):
        v, g, w, ev = _punctured_supremum_batch(domain, x[None], y[None], mode="cassinian")
        witness = BoundaryWitness(w[0].copy(), float(v[0]), float(g[0]), int(ev))
        return MetricValue(float(v[0]), witness, "closed_form")
    if isinstance(domain, Ball):
        v, g, w, ev = _ball_supremum_batch(domain, x[None], y[None], mode="cassinian",
                                           samples=CASSINIAN_SCAN,
                                           starts=DESCENT_STARTS, floor=DESCENT_FLOOR)
    elif isinstance(domain, HalfSpace):
        v, g, w, ev = _halfspace_supremum_batch(domain, x[None], y[None], mode="cassinian",
                                                samples=CASSINIAN_SCAN,
                                                starts=DESCENT_STARTS, floor=DESCENT_FLOOR)
    else:
        raise TypeError(f"unsupported domain {type(domain)!r}")
    witness = BoundaryWitness(w[0].copy(), float(v[0]), float(g[0]), int(ev))
    return MetricValue(float(v[0]), witness, "optimized")


def distance_ratio_j(domain: Domain, x, y) -> MetricValue:
    """Distance ratio metric: log(1 + |x-y| / (delta(x) ^ delta(y)))."""
    x = require_interior(domain, x)
    y = require_interior(domain, y)
    if _degenerate_pair(x, y):
        return MetricValue(0.0, None, "closed_form")
    return MetricValue(float(distance_ratio_values(domain, x[None], y[None])[0]),
                       None, "closed_form")


def hyperbolic_ball(x, y) -> MetricValue:
    """Hyperbolic metric of the unit ball via the sinh(rho/2) identity."""
    x = as_point(x)
    y = as_point(y)
    if x.shape != y.shape:
        raise DomainError("points must share a dimension")
    if np.linalg.norm(x) >= 1.0 or np.linalg.norm(y) >= 1.0:
        raise DomainError("hyperbolic_ball requires |x| < 1 and |y| < 1")
    if _degenerate_pair(x, y):
        return MetricValue(0.0, None, "closed_form")
    return MetricValue(float(hyperbolic_ball_values(x[None], y[None])[0]),
                       None, "closed_form")


def hyperbolic_halfplane(z1, z2) -> MetricValue:
    """Hyperbolic metric of the upper half-plane: 2 artanh(|z1-z2| / |z1-conj(z2)|)."""
    z1 = as_point(z1)
    z2 = as_point(z2)
    if z1.shape[0] != 2 or z2.shape[0] != 2:
        raise DomainError("hyperbolic_halfplane is planar (n = 2)")
    if z1[1] <= 0 or z2[1] <= 0:
        raise DomainError("points must lie in the upper half-plane")
    if _degenerate_pair(z1, z2):
        return MetricValue(0.0, None, "closed_form")
    mirror = np.array([z2[0], -z2[1]])
    t = float(np.linalg.norm(z1 - z2) / np.linalg.norm(z1 - mirror))
    return MetricValue(2.0 * math.atanh(t), None, "closed_form")


def visual_angle(domain: Domain, x, y) -> MetricValue:
    """Visual angle metric: sup over boundary points z of the angle x-z-y."""
    x = require_interior(domain, x)
    y = require_interior(domain, y)
    if _degenerate_pair(x, y):
        return MetricValue(0.0, None, "closed_form")
    if isinstance(domain, PuncturedSpace):
        v, g, w, ev = _punctured_supremum_batch(domain, x[None], y[None], mode="visual")
        witness = BoundaryWitness(w[0].copy(), float(v[0]), float(g[0]), int(ev))
        return MetricValue(float(v[0]), witness, "closed_form")
    if isinstance(domain, Ball):
        v, g, w, ev = _ball_supremum_batch(domain, x[None], y[None], mode="visual",
                                           samples=VISUAL_SCAN,
                                           starts=DESCENT_STARTS, floor=DESCENT_FLOOR)
    elif isinstance(domain, HalfSpace):
        v, g, w, ev = _halfspace_supremum_batch(domain, x[None], y[None], mode="visual",
                                                samples=VISUAL_SCAN,
                                                starts=DESCENT_STARTS, floor=DESCENT_FLOOR)
    else:
        raise TypeError(f"unsupported domain {type(domain)!r}")
    witness = BoundaryWitness(w[0].copy(), float(v[0]), float(g[0]), int(ev))
    return MetricValue(float(v[0]), witness, "optimized")


def p_quantity(domain: Domain, x, y) -> MetricValue:
    """The quantity |x-y| / sqrt(|x-y|^2 + 4 delta(x) delta(y)), in [0, 1)."""
    x = require_interior(domain, x)
    y = require_interior(domain, y)
    if _degenerate_pair(x, y):
        return MetricValue(0.0, None, "closed_form")
    return MetricValue(float(p_values(domain, x[None], y[None])[0]), None, "closed_form")
