"""Static SVG cross-sections of A(K), K and the coconvex part between them."""
from __future__ import annotations

import numpy as np

from .asymptotic import asymptotic_set
from .config import DEFAULT_TOL
from .covolume import settle_height
from .geometry import enumerate_vertices, truncate
from .sets import ConvexSetSpec

VIEWBOX = (0, 0, 400, 400)
PAD = 20


def _ordered(V: np.ndarray) -> np.ndarray:
    c = V.mean(axis=0)
    return V[np.argsort(np.arctan2(V[:, 1] - c[1], V[:, 0] - c[0]))]


def section(s: ConvexSetSpec, t: float) -> np.ndarray:
    """Ordered polygon: the truncation at height t (d=2) or the slice x_3 = t (d=3)."""
    A, b = s.halfspace_arrays()
    if s.dimension == 2:
        return _ordered(truncate(A, b, t).vertices)
    if s.dimension != 3:
        raise ValueError("plots support d = 2 and d = 3")
    keep = np.abs(A[:, :2]).max(axis=1) > 0
    A2, b2 = A[keep, :2], b[keep] - A[keep, 2] * t
    V = enumerate_vertices(A2, b2, DEFAULT_TOL.tol_geom)
    return _ordered(V) if len(V) >= 3 else np.empty((0, 2))


def default_height(s: ConvexSetSpec) -> float:
    """Above the cuts in 2-D; halfway up the cut region for 3-D slices."""
    t = settle_height(s)
    if t <= 0:
        return 1.0
    return 1.5 * t if s.dimension == 2 else 0.5 * t


def render_svg(s: ConvexSetSpec, t: float | None = None) -> str:
    t = default_height(s) if t is None else t
    outer = section(asymptotic_set(s), t)
    inner = section(s, t)
    pts = outer if len(outer) else inner
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = max(float((hi - lo).max()), 1e-12)
    w = VIEWBOX[2] - 2 * PAD

    def tr(P):
        q = (P - lo) / span * w + PAD
        return " ".join(f"{x:.3f},{VIEWBOX[3] - y:.3f}" for x, y in q)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{" ".join(map(str, VIEWBOX))}" '
        f'width="{VIEWBOX[2]}" height="{VIEWBOX[3]}">',
        f"<title>{s.name or 'instance'} (d={s.dimension}, t={t:.6g})</title>",
        '<rect x="0" y="0" width="400" height="400" fill="white"/>',
    ]
    if len(outer):
        parts.append(f'<polygon class="asymptotic" points="{tr(outer)}" fill="#f4a582" stroke="#b2182b" stroke-width="1.5"/>')
    if len(inner):
        parts.append(f'<polygon class="set" points="{tr(inner)}" fill="#ffffff" stroke="#2166ac" stroke-width="1.5"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
