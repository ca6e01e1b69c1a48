"""Planar projections of a tropical curve, rendered with matplotlib."""

from __future__ import annotations

import random

import numpy as np

from .traversal import TropicalCurve

RAY_STUB = 0.08  # ray stub length as a fraction of the bounding box diagonal


class ProjectionError(ValueError):
    kind = "ProjectionError"


def parse_projection(spec: str | None):
    """``None`` | ``"pca"`` | ``"random"`` | ``"i,j"`` (1-based coordinates)."""
    if spec is None or spec in ("pca", "random", "variance"):
        return spec or "variance"
    try:
        i, j = (int(t) for t in spec.split(","))
    except ValueError:
        raise ProjectionError(f"bad projection {spec!r}; use i,j or pca or random") from None
    if i < 1 or j < 1 or i == j:
        raise ProjectionError("projection coordinates must be distinct and 1-based")
    return (i, j)


def projection_matrix(curve: TropicalCurve, spec, seed: int = 0) -> np.ndarray:
    """A 2 x n matrix mapping curve coordinates to the plane."""
    pts = np.array([[float(x) for x in p] for p in curve.vertices], dtype=float)
    n = pts.shape[1] if pts.size else len(curve.anchor or ())
    if isinstance(spec, tuple):
        i, j = spec
        if max(i, j) > n:
            raise ProjectionError(f"projection coordinate out of range 1..{n}")
        m = np.zeros((2, n))
        m[0, i - 1] = m[1, j - 1] = 1.0
        return m
    if spec == "random":
        rng = random.Random(seed)
        m = np.array([[rng.gauss(0, 1) for _ in range(n)] for _ in range(2)])
        q, _ = np.linalg.qr(m.T)
        return q.T[:2]
    if spec == "pca" and len(pts) >= 2:
        _, _, vt = np.linalg.svd(pts - pts.mean(axis=0), full_matrices=False)
        m = np.zeros((2, n))
        m[: min(2, len(vt))] = vt[:2]
        return m
    # default: the two coordinates of largest variance, ties to the lower index
    var = pts.var(axis=0) if len(pts) else np.zeros(n)
    order = sorted(range(n), key=lambda t: (-var[t], t))[:2]
    m = np.zeros((2, n))
    for row, t in enumerate(order):
        m[row, t] = 1.0
    return m


def render_svg(curve: TropicalCurve, path, spec="variance", seed: int = 0, title: str | None = None):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    m = projection_matrix(curve, spec, seed)
    verts = np.array([[float(x) for x in p] for p in curve.vertices]).reshape(-1, m.shape[1])
    xy = verts @ m.T
    fig, ax = plt.subplots(figsize=(6, 6))
    for e in curve.bounded_edges:
        a, b = xy[e.a], xy[e.b]
        ax.plot([a[0], b[0]], [a[1], b[1]], color="black", linewidth=0.8)
    if len(xy):
        span = np.ptp(xy, axis=0)
        diag = float(np.hypot(*span)) or 1.0
        for r in curve.rays:
            d = m @ np.array(r.direction, dtype=float)
            norm = np.hypot(*d)
            if norm == 0:
                continue
            a = xy[r.vertex]
            b = a + d / norm * RAY_STUB * diag
            ax.plot([a[0], b[0]], [a[1], b[1]], color="tab:blue", linewidth=0.6, linestyle="--")
        ax.scatter(xy[:, 0], xy[:, 1], s=4, color="tab:red", zorder=3)
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return m
