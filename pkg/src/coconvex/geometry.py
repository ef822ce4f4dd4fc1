"""Exact polyhedral primitives in low dimension (d = 2, 3; d = 4 best effort).

Everything here works on H-descriptions ``{x : A x <= b}`` with unit-norm rows.
Vertices are enumerated by brute force over all d-subsets of constraints,
which is exact up to floating point for the instance sizes we care about and
has no failure modes on degenerate (non-simple) vertices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Sequence

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import DimensionMismatch, EmptyInterior, InvalidLambda, Unbounded

_DET_MIN = 1e-12
_ROUNDOFF = 1e-13
_EPS = float(np.finfo(float).eps)


def unit(v, tol: float = DEFAULT_TOL.tol_unit) -> np.ndarray:
    """Return ``v`` as a float array of norm one.

    Vectors already within ``tol`` of unit length are returned unchanged so
    that repeated normalization is bit-stable.
    """
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise ValueError("zero vector has no direction")
    if abs(n - 1.0) <= tol:
        return v.copy()
    return v / n


def floor_normal(d: int) -> np.ndarray:
    e = np.zeros(d)
    e[-1] = -1.0
    return e


@dataclass(frozen=True)
class HalfSpace:
    """The closed half-space ``{x : <x, normal> <= offset}``."""

    normal: tuple
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        norm = float(np.linalg.norm(n))
        if norm == 0.0:
            raise ValueError("half-space normal must be nonzero")
        off = float(self.offset)
        if abs(norm - 1.0) > DEFAULT_TOL.tol_unit:
            n = n / norm
            off = off / norm
        object.__setattr__(self, "normal", tuple(float(x) for x in n))
        object.__setattr__(self, "offset", off)

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def n(self) -> np.ndarray:
        return np.array(self.normal)

    def scaled(self, a: float) -> "HalfSpace":
        return HalfSpace(self.normal, self.offset * a)


@dataclass(frozen=True, eq=False)
class Facet:
    normal: np.ndarray
    offset: float
    vertices: tuple
    measure: float
    artificial: bool = False
    source: int = -1


@dataclass(frozen=True, eq=False)
class Polytope:
    vertices: np.ndarray
    facets: tuple
    volume: float

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def heights(self) -> np.ndarray:
        return self.vertices[:, -1]

    def facet_for_source(self, source: int):
        for f in self.facets:
            if f.source == source:
                return f
        return None

    def contains(self, pts, tol: float = DEFAULT_TOL.tol_geom) -> np.ndarray:
        pts = np.atleast_2d(pts)
        A = np.array([f.normal for f in self.facets])
        b = np.array([f.offset for f in self.facets])
        return np.all(pts @ A.T <= b + tol * (1.0 + np.abs(b)), axis=1)


# ---------------------------------------------------------------------------
# low level array routines


@lru_cache(maxsize=256)
@lru_cache(maxsize=64)
def _combos(n: int, d: int) -> np.ndarray:
    out = np.array(list(itertools.combinations(range(n), d)), dtype=int).reshape(-1, d)
    out.flags.writeable = False
    return out


def unique_rows(x: np.ndarray, tol: float) -> np.ndarray:
    kept: list = []
    for p in x:
        if kept:
            dist = np.abs(np.asarray(kept) - p).max(axis=1)
            if dist.min() <= tol:
                continue
        kept.append(p)
    if not kept:
        return np.empty((0, x.shape[1]))
    return np.asarray(kept)


def enumerate_vertices(A: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL.tol_geom,
                       *, with_incidence: bool = False):
    """All vertices of the polyhedron ``{A x <= b}`` (brute force).

    Feasibility is tested at a roundoff-scaled threshold (error of the d x d
    solve, about eps * cond * scale) capped at ``tol``; a looser fixed
    threshold would admit spurious vertices next to sliver facets.  With
    ``with_incidence`` a boolean vertex-by-row incidence matrix is returned
    too: row k is incident when it belongs to some row subset producing the
    vertex.
    """
    n, d = A.shape
    empty = np.empty((0, d))
    if n < d:
        return (empty, np.zeros((0, n), dtype=bool)) if with_incidence else empty
    idx = _combos(n, d)
    M = A[idx]
    det = np.linalg.det(M)
    keep = np.abs(det) > _DET_MIN
    idx, M, det = idx[keep], M[keep], det[keep]
    if len(idx) == 0:
        return (empty, np.zeros((0, n), dtype=bool)) if with_incidence else empty
    x = np.linalg.solve(M, b[idx][..., None])[..., 0]
    scale = 1.0 + np.abs(x).max(axis=1)
    viol = (x @ A.T - b).max(axis=1)
    pre = viol <= tol * scale  # the threshold below never exceeds this cap
    x, idx, M, scale, viol = x[pre], idx[pre], M[pre], scale[pre], viol[pre]
    vt = np.minimum(16 * _EPS * np.linalg.cond(M), tol) * scale if len(x) else scale
    ok = viol <= vt
    x, vt, idx = x[ok], vt[ok], idx[ok]
    if len(x) == 0:
        return (empty, np.zeros((0, n), dtype=bool)) if with_incidence else empty
    kept: list = []
    inc: list = []
    for i in range(len(x)):
        if kept:
            dist = np.abs(x[kept] - x[i]).max(axis=1)
            j = int(dist.argmin())
            if dist[j] <= 10 * max(vt[i], vt[kept[j]]):
                inc[j][idx[i]] = True
                continue
        kept.append(i)
        row = np.zeros(n, dtype=bool)
        row[idx[i]] = True
        inc.append(row)
    V = x[kept]
    if not with_incidence:
        return V
    # rows through a vertex only in singular subsets are caught by the slack
    slack = np.abs(b[None, :] - V @ A.T)
    thr = 100 * _ROUNDOFF * (1.0 + np.abs(V).max(axis=1))
    return V, np.array(inc) | (slack <= thr[:, None])


def merge_duplicates(A: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL.tol_geom):
    """Collapse rows with equal normals, keeping the tightest offset.

    Returns ``(A, b, owner)`` where ``owner[k]`` is the input row that the
    k-th output row came from.
    """
    close = np.abs(A[:, None, :] - A[None, :, :]).max(axis=2) <= tol
    order: list = []
    for i in range(len(A)):
        for j, k in enumerate(order):
            if close[i, k]:
                if b[i] < b[k]:
                    order[j] = i
                break
        else:
            order.append(i)
    owner = np.array(order, dtype=int)
    return A[owner], b[owner], owner


def _hyperplane_basis(normal: np.ndarray) -> np.ndarray:
    d = len(normal)
    if d == 2:
        return np.array([[-normal[1], normal[0]]])
    if d == 3:
        x, y, z = (float(t) for t in normal)
        # a = normal x e_k for the smallest |component| k, b = normal x a
        if abs(x) <= abs(y) and abs(x) <= abs(z):
            a = (0.0, z, -y)
        elif abs(y) <= abs(z):
            a = (-z, 0.0, x)
        else:
            a = (y, -x, 0.0)
        r = (a[0] ** 2 + a[1] ** 2 + a[2] ** 2) ** 0.5
        a = (a[0] / r, a[1] / r, a[2] / r)
        b = (y * a[2] - z * a[1], z * a[0] - x * a[2], x * a[1] - y * a[0])
        return np.array([a, b])
    _, _, vt = np.linalg.svd(normal[None, :])
    return vt[1:]


def _polygon_area(q: np.ndarray) -> float:
    """Area of a planar polygon given its vertices in convex position (any order)."""
    if len(q) < 3:
        return 0.0
    c = q.mean(axis=0)
    order = np.argsort(np.arctan2(q[:, 1] - c[1], q[:, 0] - c[0]))
    x, y = q[order, 0], q[order, 1]
    return 0.5 * abs(float(x[:-1] @ y[1:] - y[:-1] @ x[1:] + x[-1] * y[0] - y[-1] * x[0]))


def _flat_measure(pts: np.ndarray, normal: np.ndarray) -> float:
    """(d-1)-measure of the convex hull of ``pts`` lying in a hyperplane."""
    d = pts.shape[1]
    if len(pts) < d:
        return 0.0
    q = (pts - pts.mean(axis=0)) @ _hyperplane_basis(normal).T
    if d == 2:
        return float(q[:, 0].max() - q[:, 0].min())
    if d == 3:
        return _polygon_area(q)
    try:
        return float(ConvexHull(q).volume)
    except (QhullError, ValueError):
        return 0.0


def _build(A, b, sources, artificial, tol: ToleranceConfig, validate: bool) -> Polytope:
    d = A.shape[1]
    V, inc = enumerate_vertices(A, b, tol.tol_geom, with_incidence=True)
    if len(V) <= d:
        raise EmptyInterior("half-space intersection has no interior")
    facets = []
    floor_meas = tol.tol_geom ** (d - 1)
    for k in range(len(A)):
        on = np.flatnonzero(inc[:, k])
        if len(on) < d:
            continue
        m = _flat_measure(V[on], A[k])
        if m <= floor_meas:
            continue
        facets.append(Facet(A[k].copy(), float(b[k]), tuple(int(i) for i in on), m,
                            bool(artificial[k]), int(sources[k])))
    c = V.mean(axis=0)
    vol = sum(f.measure * (f.offset - float(f.normal @ c)) for f in facets) / d
    if validate and vol <= tol.tol_geom ** d:
        raise EmptyInterior("half-space intersection has no interior")
    return Polytope(V, tuple(facets), max(vol, 0.0))


def polytope_from_arrays(A, b, sources=None, artificial=None, *, tol: ToleranceConfig = DEFAULT_TOL,
                         validate: bool = False) -> Polytope:
    """Bounded polytope from an H-description (rows are merged if duplicated)."""
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    nrm = np.linalg.norm(A, axis=1)
    if np.abs(nrm - 1.0).max(initial=0.0) > 1e-15:
        A, b = A / nrm[:, None], b / nrm
    if sources is None:
        sources = np.arange(len(A))
    if artificial is None:
        artificial = np.zeros(len(A), dtype=bool)
    A, b, owner = merge_duplicates(A, b, tol.tol_geom)
    return _build(A, b, np.asarray(sources)[owner], np.asarray(artificial)[owner], tol, validate)


def _check_bounded(A: np.ndarray) -> None:
    d = A.shape[1]
    # recession directions of {A x <= b, 0 <= x_d <= cap} live in {y_d = 0}
    A_eq = np.zeros((1, d))
    A_eq[0, -1] = 1.0
    for i in range(d - 1):
        for sgn in (1.0, -1.0):
            c = np.zeros(d)
            c[i] = -sgn
            res = linprog(c, A_ub=A, b_ub=np.zeros(len(A)), A_eq=A_eq, b_eq=[0.0],
                          bounds=[(-1, 1)] * d, method="highs")
            if res.status == 0 and -res.fun > 1e-9:
                raise Unbounded("intersection is unbounded inside the slab")


def slab_arrays(A, b, cap_height: float):
    d = A.shape[1]
    up = np.zeros(d)
    up[-1] = 1.0
    A2 = np.vstack([A, floor_normal(d), up])
    b2 = np.concatenate([b, [0.0, cap_height]])
    n = len(A)
    sources = np.concatenate([np.arange(n), [-1, -2]])
    artificial = np.zeros(n + 2, dtype=bool)
    artificial[-1] = True
    return A2, b2, sources, artificial


def intersect_halfspaces(hs: Sequence[HalfSpace], cap_height: float, *,
                         tol: ToleranceConfig = DEFAULT_TOL) -> Polytope:
    """Intersect half-spaces with the slab ``0 <= x_d <= cap_height``.

    Facets coming only from the cap are flagged ``artificial``; the floor
    facet gets ``source == -1`` unless an input half-space coincides with it.
    """
    if not hs:
        raise ValueError("need at least one half-space")
    A = np.array([h.normal for h in hs])
    b = np.array([h.offset for h in hs])
    A2, b2, src, art = slab_arrays(A, b, cap_height)
    _check_bounded(A2[:-1])
    return polytope_from_arrays(A2, b2, src, art, tol=tol, validate=True)


def truncate(A, b, cap_height: float, *, tol: ToleranceConfig = DEFAULT_TOL) -> Polytope:
    """Fast path of :func:`intersect_halfspaces` for trusted array input."""
    A2, b2, src, art = slab_arrays(np.asarray(A, float), np.asarray(b, float), cap_height)
    return polytope_from_arrays(A2, b2, src, art, tol=tol)


def polytope_volume(p: Polytope) -> float:
    """Volume by explicit simplicial decomposition of the vertex hull."""
    V = p.vertices
    d = V.shape[1]
    if len(V) <= d:
        return 0.0
    try:
        hull = ConvexHull(V)
    except (QhullError, ValueError):
        return 0.0
    c = V[hull.vertices].mean(axis=0)
    total = 0.0
    for simplex in hull.simplices:
        total += abs(np.linalg.det(V[simplex] - c))
    return total / factorial(d)


def facet_measure(p: Polytope, normal, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    n = unit(normal)
    return sum(f.measure for f in p.facets if np.abs(f.normal - n).max() <= tol.tol_geom)


def polyhedron_vertices(spec, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Vertices of the (unbounded) realized set of a spec."""
    A, b = spec.halfspace_arrays()
    A, b, _ = merge_duplicates(A, b, tol.tol_geom)
    return enumerate_vertices(A, b, tol.tol_geom)


def lp_max(c, A_ub, b_ub, A_eq=None, b_eq=None):
    """Maximize ``<c, x>``; returns ``(status, value, x)`` with status one of
    ``"optimal"``, ``"unbounded"``, ``"infeasible"``."""
    c = -np.asarray(c, float)
    res = None
    # HiGHS occasionally ends with an unknown model status on degenerate
    # unbounded problems; the simplex variants settle those.
    for method in ("highs", "highs-ds", "highs-ipm"):
        res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                      bounds=[(None, None)] * len(c), method=method)
        if res.status == 3:
            return "unbounded", np.inf, None
        if res.status == 2:
            return "infeasible", -np.inf, None
        if res.status == 0:
            return "optimal", float(-res.fun), res.x
    # last resort: a large box turns unboundedness into a box-touching optimum
    box = 1e8
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=[(-box, box)] * len(c), method="highs-ds")
    if res.status == 2:
        return "infeasible", -np.inf, None
    if res.status != 0:
        raise RuntimeError(f"LP failed: {res.message}")
    if np.abs(res.x).max() >= 0.5 * box:
        return "unbounded", np.inf, None
    return "optimal", float(-res.fun), res.x


def support_value(obj, u, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Support function value ``max <x, u>``; ``inf`` when unbounded."""
    u = unit(u)
    if isinstance(obj, Polytope):
        return float((obj.vertices @ u).max())
    A, b = obj.halfspace_arrays()
    status, val, _ = lp_max(u, A, b)
    if status == "unbounded":
        return np.inf
    V = polyhedron_vertices(obj, tol)
    if len(V) == 0:
        return val
    return float((V @ u).max())


def _rays(spec, tol: ToleranceConfig) -> np.ndarray:
    from .sets import recession_rays

    return recession_rays(spec.all_normals(), tol)


def minkowski_sum_truncated(p, q, lam: float, target_height: float, *,
                            tol: ToleranceConfig = DEFAULT_TOL) -> Polytope:
    """``((1-lam) K_p + lam K_q) ∩ {0 <= x_d <= target_height}``, exactly.

    Operands are truncated at heights chosen so that every point of the sum
    below ``target_height`` splits into operand points inside the truncations.
    """
    if not 0.0 <= lam <= 1.0:
        raise InvalidLambda(f"lam={lam} outside [0, 1]")
    if p.dimension != q.dimension:
        raise DimensionMismatch(f"{p.dimension} != {q.dimension}")
    d = p.dimension
    Vp, Vq = polyhedron_vertices(p, tol), polyhedron_vertices(q, tol)
    hp, hq = float(Vp[:, -1].max()), float(Vq[:, -1].max())
    rp, rq = _rays(p, tol), _rays(q, tol)
    same_cone = rp.shape == rq.shape and np.abs(
        np.sort(rp, axis=0) - np.sort(rq, axis=0)).max(initial=0.0) <= 1e-9
    if same_cone:
        Tp, Tq = hp + target_height, hq + target_height
    else:
        Tp = hp + (target_height / (1 - lam) if lam < 1 else 0.0)
        Tq = hq + (target_height / lam if lam > 0 else 0.0)
    pts = []
    if lam < 1:
        Pp = truncate(*p.halfspace_arrays(), max(Tp, 1e-9) + 1.0, tol=tol).vertices
    if lam > 0:
        Pq = truncate(*q.halfspace_arrays(), max(Tq, 1e-9) + 1.0, tol=tol).vertices
    if lam == 0:
        pts = Pp
    elif lam == 1:
        pts = Pq
    else:
        pts = ((1 - lam) * Pp[:, None, :] + lam * Pq[None, :, :]).reshape(-1, d)
    hull = ConvexHull(pts)
    A = hull.equations[:, :-1]
    b = -hull.equations[:, -1]
    nrm = np.linalg.norm(A, axis=1)
    A, b = A / nrm[:, None], b / nrm
    A, b, _ = merge_duplicates(A, b, 1e-9)
    up = np.zeros(d)
    up[-1] = 1.0
    A2 = np.vstack([A, up])
    b2 = np.concatenate([b, [target_height]])
    art = np.zeros(len(A2), dtype=bool)
    art[-1] = True
    return polytope_from_arrays(A2, b2, np.arange(len(A2)), art, tol=tol)


def _edges(P: Polytope) -> list:
    """Vertex pairs sharing at least d-1 facets."""
    d = P.dim
    inc: dict = {}
    for k, f in enumerate(P.facets):
        for v in f.vertices:
            inc.setdefault(v, set()).add(k)
    n = len(P.vertices)
    return [(i, j) for i in range(n) for j in range(i + 1, n)
            if len(inc.get(i, set()) & inc.get(j, set())) >= d - 1]


def point_polytope_distance(x: np.ndarray, P: Polytope, edges=None, tol: float = 1e-12) -> float:
    """Euclidean distance from ``x`` to ``P``.

    The nearest point lies in the relative interior of a vertex, an edge or a
    facet, so for d <= 3 taking the best feasible candidate is exact.
    """
    x = np.asarray(x, dtype=float)
    A = np.array([f.normal for f in P.facets])
    b = np.array([f.offset for f in P.facets])
    slack = tol * (1.0 + np.abs(b).max())
    if np.all(A @ x <= b + slack):
        return 0.0
    V = P.vertices
    best = float(np.linalg.norm(V - x, axis=1).min())
    for i, j in (edges if edges is not None else _edges(P)):
        e = V[j] - V[i]
        t = float(np.clip((x - V[i]) @ e / (e @ e), 0.0, 1.0))
        best = min(best, float(np.linalg.norm(V[i] + t * e - x)))
    for a, c in zip(A, b):
        y = x - (a @ x - c) * a
        if np.all(A @ y <= b + slack):
            best = min(best, float(np.linalg.norm(y - x)))
    return best


def hausdorff_distance(P: Polytope, Q: Polytope) -> float:
    """Hausdorff distance of two polytopes (attained at vertices)."""
    eq, ep = _edges(Q), _edges(P)
    a = max(point_polytope_distance(v, Q, eq) for v in P.vertices)
    b = max(point_polytope_distance(v, P, ep) for v in Q.vertices)
    return max(a, b)
