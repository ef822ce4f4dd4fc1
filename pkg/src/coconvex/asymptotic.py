"""Asymptotic boundary sets, Wulff shapes, irreducibility and class membership."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import (
    DimensionMismatch,
    HeightNonpositive,
    InvalidLambda,
    MissingFloor,
    NegativeValue,
    UnsharedNormals,
)
from .geometry import (
    HalfSpace,
    Polytope,
    floor_normal,
    intersect_halfspaces,
    lp_max,
    polyhedron_vertices,
    truncate,
    unit,
)
from .sets import ConvexSetSpec, domain_margin, recession_rays


@dataclass
class ValidationReport:
    c0: bool = False
    cc: bool = False
    cb: bool = False
    cone: bool = False
    covolume: float | None = None
    redundant: list = field(default_factory=list)
    issues: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return (self.c0 or self.cone) and self.cc and self.cb and not self.issues

    def as_dict(self) -> dict:
        return {
            "C_0": self.c0,
            "C_c": self.cc,
            "C_b": self.cb,
            "cone": self.cone,
            "covolume": self.covolume,
            "redundant": [f"{kind}[{i}]" for kind, i in self.redundant],
            "issues": list(self.issues),
            "valid": self.valid,
        }


def _item_labels(s: ConvexSetSpec):
    return [("boundary", i) for i in range(len(s.boundary))] + \
           [("interior", i) for i in range(len(s.interior))]


def floor_slice_bounded(s: ConvexSetSpec) -> bool:
    """Whether the declared asymptotic set meets {x_d = 0} in a compact set."""
    A, b = s.boundary_only().halfspace_arrays()
    d = s.dimension
    A_eq = np.zeros((1, d))
    A_eq[0, -1] = 1.0
    for i in range(d - 1):
        for sgn in (1.0, -1.0):
            c = np.zeros(d)
            c[i] = sgn
            status, _, _ = lp_max(c, A, b, A_eq, [0.0])
            if status != "optimal":
                return False
    return True


def domain_rays(s: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    return recession_rays(s.boundary_only().all_normals(), tol)


def redundant_items(s: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL) -> list:
    """Items whose removal does not change the realized set."""
    A, b = s.halfspace_arrays()
    out = []
    for k, label in enumerate(_item_labels(s)):
        mask = np.ones(len(A), dtype=bool)
        mask[k] = False
        status, val, _ = lp_max(A[k], A[mask], b[mask])
        if status == "optimal" and val <= b[k] + 1e-7 * (1.0 + abs(b[k])):
            out.append(label)
        elif status == "infeasible":
            out.append(label)
    return out


def _chebyshev_radius(A, b) -> float:
    from scipy.optimize import linprog

    n, d = A.shape
    c = np.zeros(d + 1)
    c[-1] = -1.0
    A_ub = np.hstack([A, np.linalg.norm(A, axis=1)[:, None]])
    res = linprog(c, A_ub=A_ub, b_ub=b, bounds=[(None, None)] * d + [(0, 1)], method="highs")
    return float(res.x[-1]) if res.status == 0 else 0.0


def validate_spec(s: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL) -> ValidationReport:
    from .covolume import covolume

    rep = ValidationReport()
    A, b = s.halfspace_arrays()
    for kind, i in _item_labels(s):
        h = getattr(s, kind)[i]
        if h.normal[-1] > tol.tol_geom:
            rep.issues.append(f"{kind}[{i}]: normal not in the lower hemisphere")
    interior_ok = _chebyshev_radius(A, b) > tol.tol_geom
    if not interior_ok:
        rep.issues.append("realized set has empty interior")
    origin_in = bool(np.all(b >= -tol.tol_geom))
    on_boundary = origin_in and bool(np.any(np.abs(b) <= tol.tol_geom))
    rep.c0 = interior_ok and on_boundary
    rep.cc = bool(s.boundary) and floor_slice_bounded(s)
    if not rep.cc:
        rep.issues.append("asymptotic set meets the floor in an unbounded slice")
        return rep
    neg_boundary = [i for i, h in enumerate(s.boundary) if h.offset < -tol.tol_geom]
    for i in neg_boundary:
        rep.issues.append(f"boundary[{i}]: negative offset")
    rep.cone = interior_ok and s.is_cone(tol.tol_geom)
    if not rep.c0 and not rep.cone:
        rep.issues.append("origin is not on the boundary of the realized set")
    rays = domain_rays(s, tol)
    bounded = True
    for i, h in enumerate(s.interior):
        m = domain_margin(h.normal, rays)
        if m < -tol.tol_geom:
            rep.issues.append(f"interior[{i}]: support of the asymptotic set is +inf (normal outside D)")
            bounded = False
        elif m <= tol.tol_geom:
            rep.issues.append(f"interior[{i}]: normal on the rim of D")
            bounded = False
    rep.redundant = redundant_items(s, tol)
    if bounded and interior_ok:
        rep.covolume = covolume(s, tol)
        rep.cb = bool(np.isfinite(rep.covolume))
    return rep


def wulff_shape(f, domain_items, *, dimension: int | None = None,
                tol: ToleranceConfig = DEFAULT_TOL) -> ConvexSetSpec:
    """Wulff shape of support data ``f = [(u, value), ...]`` inside the
    asymptotic set described by ``domain_items``."""
    items = []
    domain_items = list(domain_items)
    d = dimension or (domain_items[0].dim if domain_items else len(f[0][0]))
    e = floor_normal(d)
    for u, val in f:
        u = unit(u)
        if np.abs(u - e).max() <= tol.tol_geom:
            if abs(val) > tol.tol_geom:
                raise MissingFloor("value at the floor direction must be 0")
            continue
        if val < 0:
            raise NegativeValue(f"negative support value {val}")
        items.append(HalfSpace(tuple(u), float(val)))
    return ConvexSetSpec(d, tuple(domain_items), tuple(items))


def asymptotic_slice(s: ConvexSetSpec, t: float, tol: ToleranceConfig = DEFAULT_TOL) -> Polytope:
    """The t-asymptotic boundary set: slab ∩ half-spaces of facets meeting {x_d = t}."""
    if t <= 0:
        raise HeightNonpositive(f"t={t}")
    A, b = s.halfspace_arrays()
    V = polyhedron_vertices(s, tol)
    T = max(t, float(V[:, -1].max())) + 1.0
    P = truncate(A, b, T, tol=tol)
    H = P.heights()
    eps = tol.tol_geom * (1.0 + T)
    keep = []
    for f in P.facets:
        if f.artificial or f.source < 0 or f.source == len(A) - 1:
            continue
        hv = H[list(f.vertices)]
        if hv.min() <= t + eps and hv.max() >= t - eps:
            keep.append(HalfSpace(tuple(f.normal), f.offset))
    return intersect_halfspaces(keep or [HalfSpace(tuple(floor_normal(s.dimension)), 0.0)], t, tol=tol)


@lru_cache(maxsize=4096)
def _asymptotic_items(s: ConvexSetSpec) -> tuple:
    A, b = s.halfspace_arrays()
    d = s.dimension
    e = np.zeros(d)
    e[-1] = 1.0
    out = []
    for k, h in enumerate(s.items):
        mask = np.ones(len(A), dtype=bool)
        mask[k] = False
        status, val, _ = lp_max(A[k], A[mask], b[mask])
        if status == "infeasible":
            continue
        if status == "optimal" and val <= b[k] + 1e-7 * (1.0 + abs(b[k])):
            continue
        status, _, _ = lp_max(e, A, b, A[k:k + 1], b[k:k + 1])
        if status == "unbounded":
            out.append(h)
    return tuple(out)


def asymptotic_set(s: ConvexSetSpec) -> ConvexSetSpec:
    """A(K) from first principles: floor ∩ half-spaces of facets unbounded in e_d."""
    return ConvexSetSpec(s.dimension, _asymptotic_items(s), (), name=s.name)


def _same_halfspace(h: HalfSpace, g: HalfSpace, tol: float) -> bool:
    return np.abs(h.n - g.n).max() <= tol and abs(h.offset - g.offset) <= tol * (1 + abs(h.offset))


def check_irreducible(s: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL):
    """``(ok, witnesses)``: every declared boundary item must be a facet at infinity."""
    realized = asymptotic_set(s).boundary
    missing = [h for h in s.boundary
               if not any(_same_halfspace(h, g, tol.tol_geom) for g in realized)]
    return not missing, missing


def match_normals(a: tuple, b: tuple, tol: float):
    """Permutation ``perm`` with ``b[perm[i]]`` parallel to ``a[i]``, or None."""
    if len(a) != len(b):
        return None
    perm = []
    for h in a:
        hits = [j for j, g in enumerate(b) if np.abs(h.n - g.n).max() <= tol]
        if len(hits) != 1:
            return None
        perm.append(hits[0])
    return perm if len(set(perm)) == len(perm) else None


def asymptotic_of_sum(s0: ConvexSetSpec, s1: ConvexSetSpec, lam: float,
                      tol: ToleranceConfig = DEFAULT_TOL) -> ConvexSetSpec:
    """``(1-lam) A(K_0) + lam A(K_1)`` for asymptotic sets sharing their normals."""
    if s0.dimension != s1.dimension:
        raise DimensionMismatch(f"{s0.dimension} != {s1.dimension}")
    if not 0.0 <= lam <= 1.0:
        raise InvalidLambda(f"lam={lam}")
    a0, a1 = asymptotic_set(s0).boundary, asymptotic_set(s1).boundary
    perm = match_normals(a0, a1, tol.tol_geom)
    if perm is None:
        raise UnsharedNormals("asymptotic sets have different normal directions")
    items = [HalfSpace(h.normal, (1 - lam) * h.offset + lam * a1[j].offset) for h, j in zip(a0, perm)]
    return ConvexSetSpec(s0.dimension, tuple(items), ())
