"""Static SVG rendering of planar domains, points, and geodesic polylines.

Fixed 800 x 800 viewport with 5% margins: domain boundary as a stroked
circle or line, punctures as crosses, paths as polylines, query points as
dots.  Output is a plain SVG string; no interactivity.
"""

from __future__ import annotations

import numpy as np

from .geometry import Ball, Domain, HalfSpace, PuncturedSpace

VIEW = 800
MARGIN = 0.05


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _scene_bounds(domain: Domain, paths, points):
    pts = [np.atleast_2d(p) for p in paths if len(p)] + \
          [np.atleast_2d(p) for p in points]
    if isinstance(domain, Ball):
        c, r = domain.center, domain.radius
        pts.append(np.array([c - r, c + r]))
    elif isinstance(domain, PuncturedSpace):
        pts.append(domain.punctures)
    if not pts:
        pts = [np.array([[-1.0, -1.0], [1.0, 1.0]])]
    allp = np.vstack(pts)
    lo = allp.min(axis=0)
    hi = allp.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    pad = MARGIN * float(np.max(span)) + 1e-9
    return lo - pad, hi + pad


class _Mapper:
    def __init__(self, lo, hi):
        self.lo = lo
        self.scale = (1.0 - 2.0 * MARGIN) * VIEW / float(np.max(hi - lo))
        self.off = MARGIN * VIEW

    def __call__(self, p):
        x = self.off + (p[0] - self.lo[0]) * self.scale
        y = VIEW - (self.off + (p[1] - self.lo[1]) * self.scale)
        return x, y


def render_scene(domain: Domain, paths=(), points=(), labels=()) -> str:
    """Render a 2-D scene to an SVG document string."""
    if domain.dimension != 2:
        raise ValueError("SVG rendering is planar")
    lo, hi = _scene_bounds(domain, paths, points)
    m = _Mapper(lo, hi)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEW}" height="{VIEW}" '
        f'viewBox="0 0 {VIEW} {VIEW}">',
        f'<rect width="{VIEW}" height="{VIEW}" fill="white"/>',
    ]
    if isinstance(domain, Ball):
        cx, cy = m(domain.center)
        parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                     f'r="{_fmt(domain.radius * m.scale)}" fill="none" '
                     f'stroke="black" stroke-width="1.5"/>')
    elif isinstance(domain, HalfSpace):
        # boundary line across the viewport
        nrm = domain.unit_normal
        origin = domain.offset * nrm
        tang = np.array([-nrm[1], nrm[0]])
        span = float(np.max(hi - lo)) * 2.0
        a = m(origin - span * tang)
        b = m(origin + span * tang)
        parts.append(f'<line x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
                     f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" '
                     f'stroke="black" stroke-width="1.5"/>')
    elif isinstance(domain, PuncturedSpace):
        s = 6.0
        for q in domain.punctures:
            x, y = m(q)
            parts.append(f'<path d="M {_fmt(x - s)} {_fmt(y - s)} L {_fmt(x + s)} '
                         f'{_fmt(y + s)} M {_fmt(x - s)} {_fmt(y + s)} '
                         f'L {_fmt(x + s)} {_fmt(y - s)}" stroke="crimson" '
                         f'stroke-width="2" fill="none"/>')
    for path in paths:
        path = np.atleast_2d(path)
        if path.shape[0] < 2:
            continue
        coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (m(p) for p in path))
        parts.append(f'<polyline points="{coords}" fill="none" stroke="royalblue" '
                     f'stroke-width="2"/>')
    for p in points:
        x, y = m(np.asarray(p, dtype=float))
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="black"/>')
    for (p, text) in labels:
        x, y = m(np.asarray(p, dtype=float))
        parts.append(f'<text x="{_fmt(x + 8)}" y="{_fmt(y - 8)}" '
                     f'font-size="16">{text}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def write_svg(path: str, svg: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
