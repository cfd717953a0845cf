"""Independent brute-force oracles used to validate the optimized solvers.

These deliberately avoid the library's solver code paths: plane bases are
rebuilt from scratch, objectives are evaluated on dense scans, and suprema
are taken over the sampled values only (no refinement), so any agreement
with the optimized values is evidence, not circularity.
"""

import numpy as np


def plane_circle_points(center, radius, x, y, m):
    """m points on the great circle of the sphere through the plane spanned
    by (x - center, y - center); falls back to a coordinate axis for
    collinear data."""
    center = np.asarray(center, dtype=float)
    vx = np.asarray(x, dtype=float) - center
    vy = np.asarray(y, dtype=float) - center
    n = center.shape[0]
    if np.linalg.norm(vx) > 1e-14:
        u1 = vx / np.linalg.norm(vx)
    elif np.linalg.norm(vy) > 1e-14:
        u1 = vy / np.linalg.norm(vy)
    else:
        u1 = np.eye(n)[0]
    w = vy - (vy @ u1) * u1
    if np.linalg.norm(w) < 1e-12:
        for j in range(n):
            e = np.eye(n)[j]
            w = e - (e @ u1) * u1
            if np.linalg.norm(w) > 1e-9:
                break
    u2 = w / np.linalg.norm(w)
    t = np.linspace(0.0, 2.0 * np.pi, m, endpoint=False)
    return center + radius * (np.outer(np.cos(t), u1) + np.outer(np.sin(t), u2))


def fibonacci_sphere_points(center, radius, m):
    i = np.arange(m)
    phi = np.arccos(1.0 - 2.0 * (i + 0.5) / m)
    theta = np.pi * (1.0 + 5.0 ** 0.5) * i
    pts = np.stack([np.sin(phi) * np.cos(theta),
                    np.sin(phi) * np.sin(theta),
                    np.cos(phi)], axis=1)
    return np.asarray(center, dtype=float) + radius * pts


def scan_cassinian(points, x, y):
    """sup over the scanned boundary points of |x-y| / (|x-p||p-y|)."""
    f = np.linalg.norm(x - points, axis=1) * np.linalg.norm(points - y, axis=1)
    return float(np.linalg.norm(np.asarray(x) - np.asarray(y)) / f.min())


def scan_visual_angle(points, x, y):
    """sup over the scanned boundary points of the subtended angle, using the
    stable half-angle form."""
    vx = np.asarray(x) - points
    vy = np.asarray(y) - points
    u = vx / np.linalg.norm(vx, axis=1, keepdims=True)
    w = vy / np.linalg.norm(vy, axis=1, keepdims=True)
    ang = 2.0 * np.arctan2(np.linalg.norm(u - w, axis=1),
                           np.linalg.norm(u + w, axis=1))
    return float(ang.max())
