"""The half-space description of a set K together with its asymptotic data."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .geometry import HalfSpace, enumerate_vertices, floor_normal, unit


def _as_items(items, d):
    out = []
    for h in items:
        if not isinstance(h, HalfSpace):
            normal, offset = h
            h = HalfSpace(tuple(normal), offset)
        if h.dim != d:
            raise ValueError(f"half-space of dimension {h.dim} in a {d}-dimensional spec")
        out.append(h)
    return tuple(out)


@dataclass(frozen=True)
class ConvexSetSpec:
    """K = {x_d >= 0} ∩ boundary half-spaces ∩ interior half-spaces.

    ``boundary`` carries the asymptotic data (normals on the rim of the
    normal domain D); ``interior`` carries the cuts whose normals lie inside
    D. The floor ``x_d >= 0`` is implicit.
    """

    dimension: int
    boundary: tuple = ()
    interior: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError("dimension must be at least 2")
        object.__setattr__(self, "boundary", _as_items(self.boundary, self.dimension))
        object.__setattr__(self, "interior", _as_items(self.interior, self.dimension))

    @property
    def items(self) -> tuple:
        return self.boundary + self.interior

    def halfspace_arrays(self, include_floor: bool = True):
        """Rows ordered boundary, interior, then the floor (last)."""
        d = self.dimension
        rows = [h.normal for h in self.items]
        offs = [h.offset for h in self.items]
        if include_floor:
            rows.append(tuple(floor_normal(d)))
            offs.append(0.0)
        return np.array(rows, dtype=float).reshape(-1, d), np.array(offs, dtype=float)

    def all_normals(self) -> np.ndarray:
        return self.halfspace_arrays()[0]

    def boundary_only(self) -> "ConvexSetSpec":
        return replace(self, interior=())

    def with_interior(self, items) -> "ConvexSetSpec":
        return replace(self, interior=tuple(items))

    def renamed(self, name: str) -> "ConvexSetSpec":
        return replace(self, name=name)

    def scaled(self, a: float) -> "ConvexSetSpec":
        return replace(self, boundary=tuple(h.scaled(a) for h in self.boundary),
                       interior=tuple(h.scaled(a) for h in self.interior))

    def interior_normals(self) -> np.ndarray:
        return np.array([h.normal for h in self.interior], dtype=float).reshape(-1, self.dimension)

    def interior_offsets(self) -> np.ndarray:
        return np.array([h.offset for h in self.interior], dtype=float)

    def is_cone(self, tol: float = DEFAULT_TOL.tol_geom) -> bool:
        return all(abs(h.offset) <= tol for h in self.boundary)


def recession_rays(normals: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Unit extreme rays of ``{y : normals @ y <= 0}``.

    Assumes the cone is pointed with every nonzero member having y_d > 0
    (true for sets with a compact floor slice), so its slice at y_d = 1 is a
    bounded polytope whose vertices are the rays.
    """
    N = np.asarray(normals, dtype=float)
    d = N.shape[1]
    A = N[:, :-1]
    b = -N[:, -1]
    keep = np.abs(A).max(axis=1) > 0
    A, b = A[keep], b[keep]
    if d == 2:
        # the y_d = 1 slice is an interval; avoid the generic path for speed
        lo, hi = -np.inf, np.inf
        for a, c in zip(A[:, 0], b):
            if a > 0:
                hi = min(hi, c / a)
            elif a < 0:
                lo = max(lo, c / a)
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ValueError("recession cone is not pointed above the floor")
        Z = np.array([[lo], [hi]]) if hi - lo > tol.tol_geom else np.array([[lo]])
    else:
        nrm = np.linalg.norm(A, axis=1)
        Z = enumerate_vertices(A / nrm[:, None], b / nrm, tol.tol_geom)
    Y = np.hstack([Z, np.ones((len(Z), 1))])
    return Y / np.linalg.norm(Y, axis=1)[:, None]


def domain_margin(u, rays: np.ndarray) -> float:
    """Sine of the angular distance from ``u`` to the rim of D (negative outside)."""
    u = unit(u)
    return float(-(rays @ u).max())
