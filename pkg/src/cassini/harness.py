"""Randomized, seeded verification of the comparison inequalities.

Each check draws admissible point pairs (uniform sampling plus deterministic
near-boundary, near-radial and antipodal stress pairs), evaluates both sides
of one inequality, and reports violations with witnesses and slack
statistics.  Checks of solver-approximated quantities (Cassinian, visual
angle, inner metric) widen the violation threshold by the solver's reported
gap so that certified approximation error is never misread as a
counterexample; closed-form checks run at 1e-10 relative.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import inner, metrics, moebius
from .geometry import (
    Ball,
    Domain,
    DomainError,
    PuncturedSpace,
    domain_from_json,
    domain_to_json,
    unit_ball,
)

CHECK_IDS = (
    "sinh_rho_le_c",
    "rho_le_2c",
    "j_le_factor_c",
    "c_le_j_lambda",
    "visual_angle",
    "p_le_sqrt2_delta_c",
    "moebius_distortion",
    "inner_metric",
)

# throughput settings for the vectorized solvers inside suites
_C_KW = dict(samples=1024, floor=1e-6, screen=8)
_V_KW = dict(samples=4096, floor=1e-6, screen=8)

_MAX_RECORDED_VIOLATIONS = 50


@dataclass
class SuiteSpec:
    check_id: str
    domain: Domain
    dimension: int
    sample_count: int
    seed: int
    lambda_bound: float | None = None
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.check_id not in CHECK_IDS:
            raise ValueError(f"unknown check_id {self.check_id!r}")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if self.lambda_bound is not None and not 0.0 <= self.lambda_bound < 1.0:
            raise ValueError("lambda_bound must lie in [0, 1)")
        if not self.tolerance >= 0.0:
            raise ValueError("tolerance must be nonnegative")

    @property
    def inequality_config(self) -> metrics.InequalityConfig:
        return metrics.InequalityConfig(lambda_bound=self.lambda_bound or 0.0,
                                        tolerance=max(self.tolerance, 1e-300))


@dataclass
class SuiteReport:
    check_id: str
    domain: dict
    dimension: int
    samples_run: int
    seed: int
    violations: list = field(default_factory=list)
    worst_slack_ratio: float = 0.0
    sharpest_ratio: float = 0.0
    runtime_ms: float = 0.0
    sharpness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "check_id": self.check_id,
            "domain": self.domain,
            "n": self.dimension,
            "samples": self.samples_run,
            "seed": self.seed,
            "violations": self.violations,
            "worst_slack_ratio": self.worst_slack_ratio,
            "sharpest_ratio": self.sharpest_ratio,
            "runtime_ms": self.runtime_ms,
        }
        if self.sharpness is not None:
            out["sharpness"] = self.sharpness
        return out


@dataclass
class AggregateReport:
    reports: list
    total_violations: int
    ok: bool

    def to_json(self) -> dict:
        return {"reports": [r.to_json() for r in self.reports],
                "total_violations": self.total_violations, "ok": self.ok}


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

def _uniform_ball(rng, n, count, cap):
    """Uniform points in the ball of radius cap, by rejection from the cube."""
    out = np.empty((count, n))
    got = 0
    while got < count:
        cand = rng.uniform(-1.0, 1.0, size=(2 * (count - got) + 16, n))
        cand = cand[np.sum(cand * cand, axis=1) <= 1.0]
        take = min(len(cand), count - got)
        out[got:got + take] = cap * cand[:take]
        got += take
    return out


def _ball_pairs(rng, n, count, lam=None):
    cap = (lam if lam is not None else 1.0) - 1e-9
    return _uniform_ball(rng, n, count, cap), _uniform_ball(rng, n, count, cap)


def _adversarial_ball_pairs(n, lam=None):
    """Deterministic stress pairs: near-boundary (clearance down to 1e-6),
    near-radial, antipodal, near-degenerate."""
    cap = (lam if lam is not None else 1.0)
    e1 = np.zeros(n)
    e1[0] = 1.0
    e2 = np.zeros(n)
    e2[1] = 1.0
    diag = (e1 + e2) / math.sqrt(2.0)
    r_big = cap * (1.0 - 1e-6)
    r_mid = cap * 0.5
    X = [r_big * e1, r_big * e1, 0.3 * cap * e1, r_big * diag, r_mid * e1,
         np.zeros(n), r_big * e1, 1e-6 * cap * e1]
    Y = [-r_big * e1, r_big * diag, 0.7 * cap * e1 + 1e-9 * cap * e2,
         -r_big * diag, r_mid * e1 + 1e-9 * cap * e2, r_mid * e1,
         r_mid * e2, -1e-6 * cap * e1]
    return np.array(X), np.array(Y)


def _punctured_box_pairs(rng, domain: PuncturedSpace, count):
    P = domain.punctures
    lo = P.min(axis=0) - 3.0
    hi = P.max(axis=0) + 3.0
    def draw(k):
        out = np.empty((k, domain.dimension))
        got = 0
        while got < k:
            cand = rng.uniform(lo, hi, size=(2 * (k - got) + 16, domain.dimension))
            keep = domain.boundary_distances(cand) >= 1e-9
            cand = cand[keep]
            take = min(len(cand), k - got)
            out[got:got + take] = cand[:take]
            got += take
        return out
    return draw(count), draw(count)


def _require_unit_ball(spec: SuiteSpec) -> Ball:
    d = spec.domain
    if not isinstance(d, Ball) or not np.allclose(d.center, 0.0) or d.radius != 1.0:
        raise DomainError(f"check {spec.check_id!r} runs on the unit ball")
    return d


def _finish(report: SuiteReport, t0: float) -> SuiteReport:
    report.runtime_ms = 1000.0 * (time.perf_counter() - t0)
    return report


def _record(report: SuiteReport, X, Y, lhs, rhs, slack, mask) -> None:
    idx = np.flatnonzero(mask)[:_MAX_RECORDED_VIOLATIONS]
    for i in idx:
        report.violations.append({
            "x": np.asarray(X[i]).tolist(),
            "y": np.asarray(Y[i]).tolist(),
            "lhs": float(lhs[i]),
            "rhs": float(rhs[i]),
            "slack": float(slack[i]),
        })


def _ratio_max(lhs, rhs) -> float:
    ok = rhs > 1e-300
    if not np.any(ok):
        return 0.0
    return float(np.max(lhs[ok] / rhs[ok]))


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def check_sinh_rho_le_c(spec: SuiteSpec) -> SuiteReport:
    """sinh(rho/2) <= c on the unit ball, plus the radial sharpness track."""
    t0 = time.perf_counter()
    ball = _require_unit_ball(spec)
    rng = np.random.default_rng(spec.seed)
    X, Y = _ball_pairs(rng, spec.dimension, spec.sample_count)
    Xa, Ya = _adversarial_ball_pairs(spec.dimension)
    X = np.vstack([X, Xa])
    Y = np.vstack([Y, Ya])
    c, gap = metrics.cassinian_values(ball, X, Y, **_C_KW)
    lhs = (np.linalg.norm(X - Y, axis=1)
           / np.sqrt((1 - np.sum(X * X, 1)) * (1 - np.sum(Y * Y, 1))))
    slack = lhs - c
    bad = slack > spec.tolerance * np.maximum(1.0, c) + gap
    report = SuiteReport(spec.check_id, domain_to_json(ball), spec.dimension,
                         X.shape[0], spec.seed)
    _record(report, X, Y, lhs, c, slack, bad)
    report.worst_slack_ratio = _ratio_max(lhs, c)
    radii = [0.5, 0.1, 0.01, 0.001]
    ratios = [(1.0 - r) / math.sqrt(1.0 - r * r) for r in radii]
    report.sharpness = {"radii": radii, "radial_ratios": ratios}
    report.sharpest_ratio = max(report.worst_slack_ratio, max(ratios))
    return _finish(report, t0)


def check_rho_le_2c(spec: SuiteSpec) -> SuiteReport:
    """rho <= 2c on the unit ball."""
    t0 = time.perf_counter()
    ball = _require_unit_ball(spec)
    rng = np.random.default_rng(spec.seed)
    X, Y = _ball_pairs(rng, spec.dimension, spec.sample_count)
    Xa, Ya = _adversarial_ball_pairs(spec.dimension)
    X = np.vstack([X, Xa])
    Y = np.vstack([Y, Ya])
    c, gap = metrics.cassinian_values(ball, X, Y, **_C_KW)
    rho = metrics.hyperbolic_ball_values(X, Y)
    rhs = 2.0 * c
    slack = rho - rhs
    bad = slack > spec.tolerance * np.maximum(1.0, rhs) + 2.0 * gap
    report = SuiteReport(spec.check_id, domain_to_json(ball), spec.dimension,
                         X.shape[0], spec.seed)
    _record(report, X, Y, rho, rhs, slack, bad)
    report.worst_slack_ratio = _ratio_max(rho, rhs)
    report.sharpest_ratio = report.worst_slack_ratio
    return _finish(report, t0)


def check_j_le_factor_c(spec: SuiteSpec) -> SuiteReport:
    """j <= (|x-y| + min delta) c on any domain; on the unit ball also the
    (1 + |x| ^ |y|) c and 2c forms and j(0, x) <= c(0, x)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(spec.seed)
    is_unit_ball = (isinstance(spec.domain, Ball)
                    and np.allclose(spec.domain.center, 0.0)
                    and spec.domain.radius == 1.0)
    if isinstance(spec.domain, Ball):
        X, Y = _ball_pairs(rng, spec.dimension, spec.sample_count)
        Xa, Ya = _adversarial_ball_pairs(spec.dimension)
        X = np.vstack([X, Xa])
        Y = np.vstack([Y, Ya])
    elif isinstance(spec.domain, PuncturedSpace):
        X, Y = _punctured_box_pairs(rng, spec.domain, spec.sample_count)
    else:
        raise DomainError("j_le_factor_c runs on balls and punctured spaces")
    c, gap = metrics.cassinian_values(spec.domain, X, Y, **_C_KW)
    j = metrics.distance_ratio_values(spec.domain, X, Y)
    sep = np.linalg.norm(X - Y, axis=1)
    dmin = np.minimum(spec.domain.boundary_distances(X),
                      spec.domain.boundary_distances(Y))
    factor = sep + dmin
    rhs = factor * c
    slack = j - rhs
    bad = slack > spec.tolerance * np.maximum(1.0, rhs) + factor * gap
    report = SuiteReport(spec.check_id, domain_to_json(spec.domain), spec.dimension,
                         X.shape[0], spec.seed)
    _record(report, X, Y, j, rhs, slack, bad)
    report.worst_slack_ratio = _ratio_max(j, rhs)
    if is_unit_ball:
        f2 = 1.0 + np.minimum(np.linalg.norm(X, axis=1), np.linalg.norm(Y, axis=1))
        for form_factor in (f2, np.full_like(f2, 2.0)):
            rhs_k = form_factor * c
            slack_k = j - rhs_k
            bad_k = slack_k > spec.tolerance * np.maximum(1.0, rhs_k) + form_factor * gap
            _record(report, X, Y, j, rhs_k, slack_k, bad_k)
        # center pairs: j(0, x) <= c(0, x)
        Z = np.zeros((8, spec.dimension))
        W = _uniform_ball(np.random.default_rng(spec.seed + 1), spec.dimension,
                          8, 1.0 - 1e-6)
        c0, gap0 = metrics.cassinian_values(spec.domain, Z, W, **_C_KW)
        j0 = metrics.distance_ratio_values(spec.domain, Z, W)
        slack0 = j0 - c0
        bad0 = slack0 > spec.tolerance * np.maximum(1.0, c0) + gap0
        _record(report, Z, W, j0, c0, slack0, bad0)
    report.sharpest_ratio = report.worst_slack_ratio
    return _finish(report, t0)


def check_c_le_j_lambda(spec: SuiteSpec) -> SuiteReport:
    """c <= j / (1 - lambda)^2 on the lambda-capped unit ball."""
    t0 = time.perf_counter()
    ball = _require_unit_ball(spec)
    if spec.lambda_bound is None:
        raise ValueError("c_le_j_lambda needs lambda_bound")
    lam = spec.lambda_bound
    rng = np.random.default_rng(spec.seed)
    X, Y = _ball_pairs(rng, spec.dimension, spec.sample_count, lam=lam)
    Xa, Ya = _adversarial_ball_pairs(spec.dimension, lam=lam)
    X = np.vstack([X, Xa])
    Y = np.vstack([Y, Ya])
    c, gap = metrics.cassinian_values(ball, X, Y, **_C_KW)
    j = metrics.distance_ratio_values(ball, X, Y)
    rhs = j / (1.0 - lam) ** 2
    slack = c - rhs
    bad = slack > spec.tolerance * np.maximum(1.0, rhs) + gap
    report = SuiteReport(spec.check_id, domain_to_json(ball), spec.dimension,
                         X.shape[0], spec.seed)
    _record(report, X, Y, c, rhs, slack, bad)
    report.worst_slack_ratio = _ratio_max(c, rhs)
    report.sharpest_ratio = report.worst_slack_ratio
    return _finish(report, t0)


def check_visual_angle(spec: SuiteSpec) -> SuiteReport:
    """v/2 <= tan(v/2) <= c on the unit ball; with a lambda cap in the plane,
    also c <= 2(3 + lambda^2) / (3 (1 - lambda^2)(1 - lambda)^2) v."""
    t0 = time.perf_counter()
    ball = _require_unit_ball(spec)
    rng = np.random.default_rng(spec.seed)
    X, Y = _ball_pairs(rng, spec.dimension, spec.sample_count)
    Xa, Ya = _adversarial_ball_pairs(spec.dimension)
    X = np.vstack([X, Xa])
    Y = np.vstack([Y, Ya])
    c, gap_c = metrics.cassinian_values(ball, X, Y, **_C_KW)
    v, gap_v = metrics.visual_angle_values(ball, X, Y, **_V_KW)
    report = SuiteReport(spec.check_id, domain_to_json(ball), spec.dimension,
                         X.shape[0], spec.seed)
    half = 0.5 * np.clip(v, 0.0, math.pi - 1e-12)
    tan_half = np.tan(half)
    # v/2 <= tan(v/2) is a calculus fact, but assert it on the computed values
    slack0 = half - tan_half
    bad0 = slack0 > spec.tolerance * np.maximum(1.0, tan_half)
    _record(report, X, Y, half, tan_half, slack0, bad0)
    # tan gets the propagated angle gap: d tan(v/2) = (1 + tan^2) dv / 2
    tan_gap = 0.5 * (1.0 + tan_half ** 2) * gap_v
    slack1 = tan_half - c
    bad1 = slack1 > spec.tolerance * np.maximum(1.0, c) + gap_c + tan_gap
    _record(report, X, Y, tan_half, c, slack1, bad1)
    report.worst_slack_ratio = _ratio_max(tan_half, c)
    if spec.lambda_bound is not None:
        if spec.dimension != 2:
            raise DomainError("the lambda comparison of c against v is planar")
        lam = spec.lambda_bound
        K = 2.0 * (3.0 + lam * lam) / (3.0 * (1.0 - lam * lam) * (1.0 - lam) ** 2)
        X2, Y2 = _ball_pairs(rng, 2, spec.sample_count, lam=lam)
        c2, gc2 = metrics.cassinian_values(ball, X2, Y2, **_C_KW)
        v2, gv2 = metrics.visual_angle_values(ball, X2, Y2, **_V_KW)
        rhs2 = K * v2
        slack2 = c2 - rhs2
        bad2 = slack2 > spec.tolerance * np.maximum(1.0, rhs2) + gc2 + K * gv2
        _record(report, X2, Y2, c2, rhs2, slack2, bad2)
        report.worst_slack_ratio = max(report.worst_slack_ratio,
                                       _ratio_max(c2, rhs2))
    report.sharpest_ratio = report.worst_slack_ratio
    return _finish(report, t0)


def check_p_le_sqrt2_delta_c(spec: SuiteSpec) -> SuiteReport:
    """p <= sqrt(2) (min delta) c on any domain; on balls also the bounded-
    domain form p <= (diam / sqrt(2)) c."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(spec.seed)
    if isinstance(spec.domain, Ball):
        X, Y = _ball_pairs(rng, spec.dimension, spec.sample_count)
        Xa, Ya = _adversarial_ball_pairs(spec.dimension)
        X = np.vstack([X, Xa])
        Y = np.vstack([Y, Ya])
    elif isinstance(spec.domain, PuncturedSpace):
        X, Y = _punctured_box_pairs(rng, spec.domain, spec.sample_count)
    else:
        raise DomainError("p_le_sqrt2_delta_c runs on balls and punctured spaces")
    c, gap = metrics.cassinian_values(spec.domain, X, Y, **_C_KW)
    p = metrics.p_values(spec.domain, X, Y)
    dmin = np.minimum(spec.domain.boundary_distances(X),
                      spec.domain.boundary_distances(Y))
    factor = math.sqrt(2.0) * dmin
    rhs = factor * c
    slack = p - rhs
    bad = slack > spec.tolerance * np.maximum(1.0, rhs) + factor * gap
    report = SuiteReport(spec.check_id, domain_to_json(spec.domain), spec.dimension,
                         X.shape[0], spec.seed)
    _record(report, X, Y, p, rhs, slack, bad)
    report.worst_slack_ratio = _ratio_max(p, rhs)
    if isinstance(spec.domain, Ball):
        diam_factor = 2.0 * spec.domain.radius / math.sqrt(2.0)
        rhs2 = diam_factor * c
        slack2 = p - rhs2
        bad2 = slack2 > spec.tolerance * np.maximum(1.0, rhs2) + diam_factor * gap
        _record(report, X, Y, p, rhs2, slack2, bad2)
    report.sharpest_ratio = report.worst_slack_ratio
    return _finish(report, t0)


def check_moebius_distortion(spec: SuiteSpec) -> SuiteReport:
    """Distortion of c under random ball automorphisms stays within the sharp
    bounds; the radial witness family attains the upper bound; the two
    distance identities hold to 1e-10."""
    t0 = time.perf_counter()
    ball = _require_unit_ball(spec)
    n = spec.dimension
    rng = np.random.default_rng(spec.seed)
    count = spec.sample_count
    X = np.empty((count, n))
    Y = np.empty((count, n))
    MX = np.empty((count, n))
    MY = np.empty((count, n))
    lowers = np.empty(count)
    uppers = np.empty(count)
    iso_residual = 0.0
    inv_residual = 0.0
    for i in range(count):
        phi = moebius.random_ball_automorphism(n, rng, a_cap=0.9)
        a = phi.transform(np.zeros(n))
        lowers[i], uppers[i] = moebius.distortion_bounds(a)
        while True:
            x = _uniform_ball(rng, n, 1, 1.0 - 1e-9)[0]
            y = _uniform_ball(rng, n, 1, 1.0 - 1e-9)[0]
            if np.linalg.norm(x - y) > 1e-9:
                break
        X[i], Y[i] = x, y
        MX[i] = phi.transform(x)
        MY[i] = phi.transform(y)
        # sigma o phi is rigid: distances survive the composition
        sigma = moebius.inversion_sending_to_zero(a)
        dx = sigma.transform(MX[i]) - sigma.transform(MY[i])
        iso_residual = max(iso_residual,
                           abs(float(np.linalg.norm(dx)) - float(np.linalg.norm(x - y))))
        inv_residual = max(inv_residual, moebius.check_inversion_identity(sigma, x, y))
    c_pre, gap_pre = metrics.cassinian_values(ball, X, Y, **_C_KW)
    c_post, gap_post = metrics.cassinian_values(ball, MX, MY, **_C_KW)
    ratio = c_post / c_pre
    rel_gap = gap_pre / np.maximum(c_pre, 1e-300) + gap_post / np.maximum(c_post, 1e-300)
    slack = np.maximum(ratio - uppers, lowers - ratio)
    bad = slack > spec.tolerance * np.maximum(1.0, uppers) + ratio * rel_gap
    report = SuiteReport(spec.check_id, domain_to_json(ball), spec.dimension,
                         count, spec.seed)
    _record(report, X, Y, ratio, uppers, slack, bad)
    report.worst_slack_ratio = _ratio_max(ratio, uppers)
    # radial witness family: the upper bound is attained
    fam = []
    for na in (0.1, 0.3, 0.5, 0.7, 0.9):
        a = np.zeros(n)
        a[0] = na
        w = moebius.sharpness_witness(a, -0.5)
        fam.append(w.ratio / ((1.0 + na) / (1.0 - na)))
    report.sharpest_ratio = max(fam)
    report.sharpness = {
        "witness_ratio_over_bound": fam,
        "isometry_residual": iso_residual,
        "inversion_identity_residual": inv_residual,
    }
    if iso_residual > 1e-10:
        report.violations.append({"x": [], "y": [], "lhs": iso_residual,
                                  "rhs": 1e-10, "slack": iso_residual - 1e-10})
    if inv_residual > 1e-10:
        report.violations.append({"x": [], "y": [], "lhs": inv_residual,
                                  "rhs": 1e-10, "slack": inv_residual - 1e-10})
    return _finish(report, t0)


def check_inner_metric(spec: SuiteSpec) -> SuiteReport:
    """Inner-metric structure: solver vs closed forms, domain monotonicity,
    the small-ball upper bound, c <= inner c, and agreement of the two path
    length schemes on solver paths."""
    t0 = time.perf_counter()
    n = spec.dimension
    rng = np.random.default_rng(spec.seed)
    m = min(spec.sample_count, 24)
    rel_tol = spec.tolerance if spec.tolerance > 0 else 0.0
    report = SuiteReport(spec.check_id, domain_to_json(spec.domain), n,
                         0, spec.seed)
    ball = unit_ball(n)
    big = Ball(center=np.zeros(n), radius=2.0)
    punct1 = PuncturedSpace(punctures=np.zeros((1, n)))
    punct2 = PuncturedSpace(punctures=np.vstack([np.zeros(n),
                                                 np.eye(n)[0] * 2.0]))
    solved = []  # (domain, x, y, value, path)

    def solve(dom, x, y, extra=()):
        res = inner.inner_cassinian(dom, x, y,
                                    inner.GeodesicOptions(extra_initial_paths=tuple(extra)))
        solved.append((dom, x, y, res))
        return res

    def add_violation(x, y, lhs, rhs, slack):
        report.violations.append({"x": np.asarray(x).tolist(),
                                  "y": np.asarray(y).tolist(),
                                  "lhs": float(lhs), "rhs": float(rhs),
                                  "slack": float(slack)})

    worst = 0.0
    # (a) closed forms: radial ball pairs and single-puncture pairs
    e1 = np.eye(n)[0]
    for r in (0.1, 0.5, 0.9):
        res = solve(ball, np.zeros(n), r * e1)
        cf = r / (1.0 - r)
        err = abs(res.value - cf)
        if err > rel_tol * cf:
            add_violation(np.zeros(n), r * e1, res.value, cf, err - rel_tol * cf)
        worst = max(worst, res.value / cf)
    for _ in range(m):
        while True:
            x = rng.uniform(-2.0, 2.0, n)
            y = rng.uniform(-2.0, 2.0, n)
            if (np.linalg.norm(x) > 0.05 and np.linalg.norm(y) > 0.05
                    and np.linalg.norm(x - y) > 0.05):
                break
        res = solve(punct1, x, y)
        cf = inner.closed_form_inner(punct1, x, y)
        err = abs(res.value - cf)
        if err > rel_tol * cf:
            add_violation(x, y, res.value, cf, err - rel_tol * cf)
        worst = max(worst, res.value / cf)
    # (b) monotonicity: enlarging the domain cannot increase the inner metric
    for _ in range(m):
        x = _uniform_ball(rng, n, 1, 0.9)[0]
        y = _uniform_ball(rng, n, 1, 0.9)[0]
        if np.linalg.norm(x - y) < 1e-6:
            continue
        res_small = solve(ball, x, y)
        res_big = solve(big, x, y, extra=(res_small.path.vertices,))
        slack = res_big.value - res_small.value
        if slack > 1e-4:
            add_violation(x, y, res_big.value, res_small.value, slack - 1e-4)
    for _ in range(m):
        while True:
            x = rng.uniform(-2.0, 2.0, n)
            y = rng.uniform(-2.0, 2.0, n)
            if (punct2.boundary_distances(x[None])[0] > 0.05
                    and punct2.boundary_distances(y[None])[0] > 0.05
                    and np.linalg.norm(x - y) > 0.05):
                break
        res_more = solve(punct2, x, y)
        res_fewer = solve(punct1, x, y, extra=(res_more.path.vertices,))
        slack = res_fewer.value - res_more.value
        if slack > 1e-4:
            add_violation(x, y, res_fewer.value, res_more.value, slack - 1e-4)
    # (c) the corollary bound on eligible pairs
    for _ in range(m):
        x = _uniform_ball(rng, n, 1, 0.8)[0]
        dx = ball.boundary_distance(x)
        u = rng.standard_normal(n)
        u /= np.linalg.norm(u)
        y = x + rng.uniform(0.05, 0.8) * dx * u
        res = solve(ball, x, y)
        bound = inner.inner_upper_bound(ball, x, y)
        slack = res.value - bound
        if slack > 1e-4 * bound:
            add_violation(x, y, res.value, bound, slack - 1e-4 * bound)
    # (d) c <= inner c, and the two length schemes agree on solver paths
    for dom, x, y, res in solved:
        c_val, c_gap = metrics.cassinian_values(dom, x[None], y[None], **_C_KW)
        if c_val[0] - res.value > 1e-6 + c_gap[0]:
            add_violation(x, y, c_val[0], res.value, c_val[0] - res.value - 1e-6)
        part = inner.path_length_partition(dom, res.path.vertices, rel_tol=1e-5)
        quad = res.path.length_value
        if abs(part - quad) > 1e-4 * max(abs(quad), 1e-300):
            add_violation(x, y, part, quad, abs(part - quad) - 1e-4 * abs(quad))
    report.samples_run = len(solved)
    report.worst_slack_ratio = worst
    report.sharpest_ratio = worst
    return _finish(report, t0)


_CHECKS = {
    "sinh_rho_le_c": check_sinh_rho_le_c,
    "rho_le_2c": check_rho_le_2c,
    "j_le_factor_c": check_j_le_factor_c,
    "c_le_j_lambda": check_c_le_j_lambda,
    "visual_angle": check_visual_angle,
    "p_le_sqrt2_delta_c": check_p_le_sqrt2_delta_c,
    "moebius_distortion": check_moebius_distortion,
    "inner_metric": check_inner_metric,
}


def run_suite(spec: SuiteSpec) -> SuiteReport:
    return _CHECKS[spec.check_id](spec)


def max_workers() -> int:
    """Parallelism cap honoring the CASSINI_THREADS environment variable."""
    try:
        return max(1, int(os.environ.get("CASSINI_THREADS", "1")))
    except ValueError:
        return 1


def run_all(specs: list[SuiteSpec]) -> AggregateReport:
    """Run every suite; aggregation order follows the spec list regardless of
    execution order, so reports are deterministic for a fixed manifest."""
    workers = min(max_workers(), max(len(specs), 1))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(run_suite, specs))
    else:
        reports = [run_suite(s) for s in specs]
    total = sum(len(r.violations) for r in reports)
    return AggregateReport(reports=reports, total_violations=total, ok=total == 0)


def default_manifest(samples: int = 10000, seed: int = 42,
                     dims: tuple = (2, 3)) -> list[SuiteSpec]:
    """The full battery: every check in every requested dimension.

    The Moebius and inner-metric suites are solver-bound, so their counts are
    capped (1000 map-pair samples, 24 geodesic pairs per family) no matter
    how large ``samples`` is; all closed-form-vs-solver inequality suites run
    the full count.
    """
    specs = []
    for n in dims:
        ball = unit_ball(n)
        punct = PuncturedSpace(punctures=np.zeros((1, n)))
        s = seed + 100 * n
        specs += [
            SuiteSpec("sinh_rho_le_c", ball, n, samples, s),
            SuiteSpec("rho_le_2c", ball, n, samples, s + 1),
            SuiteSpec("j_le_factor_c", ball, n, samples, s + 2),
            SuiteSpec("j_le_factor_c", punct, n, samples, s + 3),
            SuiteSpec("c_le_j_lambda", ball, n, samples, s + 4, lambda_bound=0.5),
            SuiteSpec("c_le_j_lambda", ball, n, samples, s + 5, lambda_bound=0.9),
            SuiteSpec("visual_angle", ball, n, samples, s + 6,
                      lambda_bound=0.5 if n == 2 else None),
            SuiteSpec("p_le_sqrt2_delta_c", ball, n, samples, s + 7),
            SuiteSpec("moebius_distortion", ball, n, min(samples, 1000), s + 8,
                      tolerance=1e-8),
            SuiteSpec("inner_metric", ball, n, min(samples, 8), s + 9,
                      tolerance=5e-3),
        ]
    return specs


# -- JSON serialization of manifests ------------------------------------------

def spec_to_json(spec: SuiteSpec) -> dict:
    return {
        "check_id": spec.check_id,
        "domain": domain_to_json(spec.domain),
        "dimension": spec.dimension,
        "sample_count": spec.sample_count,
        "seed": spec.seed,
        "lambda_bound": spec.lambda_bound,
        "tolerance": spec.tolerance,
    }


def spec_from_json(obj: dict) -> SuiteSpec:
    return SuiteSpec(
        check_id=obj["check_id"],
        domain=domain_from_json(obj["domain"]),
        dimension=int(obj["dimension"]),
        sample_count=int(obj["sample_count"]),
        seed=int(obj["seed"]),
        lambda_bound=(None if obj.get("lambda_bound") is None
                      else float(obj["lambda_bound"])),
        tolerance=float(obj.get("tolerance", 1e-10)),
    )


def manifest_to_json(specs: list[SuiteSpec]) -> list:
    return [spec_to_json(s) for s in specs]


def manifest_from_json(obj) -> list[SuiteSpec]:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return [spec_from_json(o) for o in obj]
