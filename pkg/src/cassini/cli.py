"""Command-line front end: compute, geodesic, distort, verify, plot.

Exit codes: 0 success, 1 internal error, 2 usage or parse error, 3 domain
violation, 4 unsupported combination (e.g. SVG output off the plane).
Values are printed with 17 significant digits so reports round-trip.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import harness, inner, metrics, moebius, svgplot
from .geometry import (
    Ball,
    Domain,
    DomainError,
    HalfSpace,
    PuncturedSpace,
    domain_from_json,
    domain_to_json,
    unit_ball,
    upper_halfplane,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_UNSUPPORTED = 4


class UnsupportedCombination(Exception):
    pass


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def parse_point(text: str) -> np.ndarray:
    try:
        return np.array([float(t) for t in text.split(",")], dtype=float)
    except ValueError as e:
        raise ValueError(f"cannot parse point {text!r}: {e}") from None


def parse_domain(text: str, dim_hint: int | None = None) -> Domain:
    """Compact domain syntax:

    unit-ball | ball:<center>:<radius> | halfplane |
    halfspace:<normal>:<offset> | punctured:<p1>[;<p2>...] | inline JSON
    """
    text = text.strip()
    if text.startswith("{"):
        return domain_from_json(json.loads(text))
    if text == "unit-ball":
        if dim_hint is None:
            raise ValueError("unit-ball needs the dimension from the points")
        return unit_ball(dim_hint)
    if text == "halfplane":
        return upper_halfplane()
    if text.startswith("ball:"):
        _, center, radius = text.split(":")
        return Ball(center=parse_point(center), radius=float(radius))
    if text.startswith("halfspace:"):
        _, normal, offset = text.split(":")
        return HalfSpace(unit_normal=parse_point(normal), offset=float(offset))
    if text.startswith("punctured:"):
        body = text.split(":", 1)[1]
        pts = [parse_point(p) for p in body.split(";") if p]
        return PuncturedSpace(punctures=np.array(pts))
    raise ValueError(f"cannot parse domain {text!r}")


def _emit(payload: dict, fmt: str, out_path: str | None) -> None:
    if fmt == "csv":
        flat = _flatten(payload)
        lines = [",".join(flat.keys()), ",".join(flat.values())]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten(obj, prefix="") -> dict:
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}{k}." if prefix else f"{k}."))
    elif isinstance(obj, (list, tuple)):
        out[prefix[:-1]] = '"' + ";".join(
            _fmt(v) if isinstance(v, float) else str(v) for v in obj) + '"'
    elif isinstance(obj, float):
        out[prefix[:-1]] = _fmt(obj)
    else:
        out[prefix[:-1]] = str(obj)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

_METRICS = ("cassinian", "j", "rho_ball", "rho_halfplane", "visual_angle", "p")


def cmd_compute(args) -> int:
    x = parse_point(args.x)
    y = parse_point(args.y)
    if args.metric == "rho_ball":
        mv = metrics.hyperbolic_ball(x, y)
    elif args.metric == "rho_halfplane":
        mv = metrics.hyperbolic_halfplane(x, y)
    else:
        domain = parse_domain(args.domain, dim_hint=x.shape[0])
        fn = {"cassinian": metrics.cassinian, "j": metrics.distance_ratio_j,
              "visual_angle": metrics.visual_angle, "p": metrics.p_quantity}[args.metric]
        mv = fn(domain, x, y)
    payload = {"metric": args.metric, "value": mv.value, "method": mv.method,
               "witness": None}
    if mv.witness is not None:
        payload["witness"] = {
            "point": mv.witness.point.tolist(),
            "value": mv.witness.value,
            "gap_estimate": mv.witness.gap_estimate,
            "evaluations": mv.witness.evaluations,
        }
    _emit(payload, args.format, args.out)
    return EXIT_OK


def cmd_geodesic(args) -> int:
    x = parse_point(args.x)
    y = parse_point(args.y)
    domain = parse_domain(args.domain, dim_hint=x.shape[0])
    if args.svg and domain.dimension != 2:
        raise UnsupportedCombination("SVG output needs a planar domain")
    opts = inner.GeodesicOptions(backend=args.backend,
                                 grid_resolution=args.grid_resolution)
    res = inner.inner_cassinian(domain, x, y, opts)
    verts = [] if np.array_equal(x, y) else np.asarray(res.path.vertices).tolist()
    payload = {
        "value": res.value,
        "backend": res.backend,
        "iterations": res.iterations,
        "refinement_gap": res.refinement_gap,
        "path": verts,
    }
    _emit(payload, args.format, args.out)
    if args.path_json:
        with open(args.path_json, "w", encoding="utf-8") as fh:
            json.dump(inner.path_to_json(res.path), fh, indent=2)
    if args.svg:
        svg = svgplot.render_scene(domain, paths=[res.path.vertices],
                                   points=[x, y])
        svgplot.write_svg(args.svg, svg)
    return EXIT_OK


def cmd_distort(args) -> int:
    a = parse_point(args.a)
    lower, upper = moebius.distortion_bounds(a)
    payload = {"a": a.tolist(), "lower": lower, "upper": upper,
               "witness_ratio": None,
               "isometry_residual": None, "inversion_identity_residual": None}
    if args.t is not None:
        w = moebius.sharpness_witness(a, args.t)
        payload["witness_ratio"] = w.ratio
        payload["witness"] = {
            "x": w.x.tolist(), "y": w.y.tolist(),
            "image_x": w.image_x.tolist(), "image_y": w.image_y.tolist(),
        }
    if float(np.linalg.norm(a)) > 0.0:
        rng = np.random.default_rng(0)
        n = a.shape[0]
        sigma = moebius.inversion_sending_to_zero(a)
        iso = 0.0
        invres = 0.0
        for _ in range(32):
            u1 = moebius.random_orthogonal(n, rng)
            u2 = moebius.random_orthogonal(n, rng)
            phi = moebius.MoebiusMap(factors=(u2, sigma, u1))
            av = phi.transform(np.zeros(n))
            comp = moebius.MoebiusMap(
                factors=phi.factors + (moebius.inversion_sending_to_zero(av),))
            p = rng.uniform(-0.7, 0.7, n)
            q = rng.uniform(-0.7, 0.7, n)
            iso = max(iso, abs(float(np.linalg.norm(comp.transform(p) - comp.transform(q)))
                               - float(np.linalg.norm(p - q))))
            invres = max(invres, moebius.check_inversion_identity(sigma, p, q))
        payload["isometry_residual"] = iso
        payload["inversion_identity_residual"] = invres
    _emit(payload, args.format, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.manifest:
        with open(args.manifest, "r", encoding="utf-8") as fh:
            specs = harness.manifest_from_json(json.load(fh))
    else:
        dims = tuple(int(d) for d in args.dims.split(","))
        specs = harness.default_manifest(samples=args.samples, seed=args.seed,
                                         dims=dims)
        if args.check:
            specs = [s for s in specs if s.check_id == args.check]
            if not specs:
                raise ValueError(f"no suite matches check {args.check!r}")
    agg = harness.run_all(specs)
    os.makedirs(args.out_dir, exist_ok=True)
    for i, rep in enumerate(agg.reports):
        name = f"{rep.check_id}_n{rep.dimension}_{i:02d}.json"
        with open(os.path.join(args.out_dir, name), "w", encoding="utf-8") as fh:
            json.dump(rep.to_json(), fh, indent=2)
    with open(os.path.join(args.out_dir, "summary.json"), "w", encoding="utf-8") as fh:
        json.dump(agg.to_json(), fh, indent=2)
    sys.stdout.write(
        f"{len(agg.reports)} suites, {agg.total_violations} violations; "
        f"reports in {args.out_dir}\n")
    return EXIT_OK if agg.ok else EXIT_INTERNAL


def cmd_plot(args) -> int:
    domain = parse_domain(args.domain)
    if domain.dimension != 2:
        raise UnsupportedCombination("plotting needs a planar domain")
    paths = []
    if args.path_json:
        with open(args.path_json, "r", encoding="utf-8") as fh:
            paths.append(np.asarray(json.load(fh)["vertices"], dtype=float))
    points = [parse_point(p) for p in (args.points.split(";") if args.points else [])]
    svg = svgplot.render_scene(domain, paths=paths, points=points)
    svgplot.write_svg(args.svg, svg)
    sys.stdout.write(f"wrote {args.svg}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cassini",
        description="Cassinian metric toolkit: point-pair metrics on canonical "
                    "domains, Moebius distortion, inner-metric geodesics, and "
                    "an inequality verification harness.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("compute", parents=[common],
                       help="evaluate a point-pair quantity")
    p.add_argument("--metric", choices=_METRICS, required=True)
    p.add_argument("--domain", default="unit-ball")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("geodesic", parents=[common],
                       help="solve for the inner Cassinian metric")
    p.add_argument("--domain", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--backend", default="auto",
                   choices=("auto", "polyline_descent", "grid_dijkstra", "closed_form"))
    p.add_argument("--grid-resolution", type=int, default=257)
    p.add_argument("--path-json", default=None, help="write the path vertices here")
    p.add_argument("--svg", default=None, help="write an SVG plot (2-D only)")
    p.set_defaults(fn=cmd_geodesic)

    p = sub.add_parser("distort", parents=[common],
                       help="Moebius distortion bounds and witnesses")
    p.add_argument("--a", required=True, help="image of the origin, |a| < 1")
    p.add_argument("--t", type=float, default=None,
                   help="witness parameter in (-1, 0)")
    p.set_defaults(fn=cmd_distort)

    p = sub.add_parser("verify", parents=[common],
                       help="run the inequality verification suites")
    p.add_argument("--manifest", default=None, help="JSON manifest of suites")
    p.add_argument("--all", action="store_true", help="run the default manifest")
    p.add_argument("--check", default=None, choices=harness.CHECK_IDS)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--dims", default="2,3")
    p.add_argument("--out-dir", default="reports")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("plot", parents=[common],
                       help="render a domain and optional path to SVG")
    p.add_argument("--domain", required=True)
    p.add_argument("--path-json", default=None)
    p.add_argument("--points", default=None, help="semicolon-separated points")
    p.add_argument("--svg", required=True)
    p.set_defaults(fn=cmd_plot)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except UnsupportedCombination as e:
        sys.stderr.write(f"unsupported: {e}\n")
        return EXIT_UNSUPPORTED
    except DomainError as e:
        sys.stderr.write(f"domain violation: {e}\n")
        return EXIT_DOMAIN
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        sys.stderr.write(f"invalid input: {e}\n")
        return EXIT_USAGE
    except Exception as e:  # pragma: no cover
        sys.stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
