"""Covolume, surface area measure, co-sum and scaling of coconvex sets K^c = A(K) minus K."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .asymptotic import _same_halfspace, asymptotic_set, domain_rays, match_normals
from .config import DEFAULT_TOL, ToleranceConfig
from .errors import (
    AsymptoticMismatch,
    InvalidLambda,
    NonpositiveScale,
    OmegaTouchesBoundary,
    UnboundedInteriorFacet,
)
from .geometry import (
    HalfSpace,
    Polytope,
    floor_normal,
    minkowski_sum_truncated,
    polyhedron_vertices,
    truncate,
    unit,
)
from .sets import ConvexSetSpec, domain_margin


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely many atoms ``(direction, mass)`` on the lower hemisphere."""

    directions: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        U = np.atleast_2d(np.asarray(self.directions, dtype=float))
        U = np.array([unit(u) for u in U]) if len(U) else U
        m = np.asarray(self.masses, dtype=float).reshape(-1)
        if len(U) != len(m):
            raise ValueError("directions and masses differ in length")
        if np.any(m <= 0):
            raise ValueError("atom masses must be positive")
        for i in range(len(U)):
            for j in range(i):
                if np.abs(U[i] - U[j]).max() <= DEFAULT_TOL.tol_geom:
                    raise ValueError("atom directions must be distinct")
        object.__setattr__(self, "directions", U)
        object.__setattr__(self, "masses", m)

    def __len__(self) -> int:
        return len(self.masses)

    @property
    def total(self) -> float:
        return float(self.masses.sum())

    def atoms(self):
        return list(zip(self.directions, self.masses))

    def scaled(self, a: float) -> "DiscreteMeasure":
        return DiscreteMeasure(self.directions, self.masses * a)

    def mass_at(self, u, tol: float = DEFAULT_TOL.tol_geom) -> float:
        u = unit(u)
        for v, m in zip(self.directions, self.masses):
            if np.abs(v - u).max() <= tol:
                return float(m)
        return 0.0

    @classmethod
    def empty(cls, d: int) -> "DiscreteMeasure":
        return cls(np.empty((0, d)), np.empty(0))


@dataclass(frozen=True)
class DirectionSet:
    directions: tuple

    def contains(self, u, tol: float = DEFAULT_TOL.tol_geom) -> bool:
        return any(np.abs(unit(v) - u).max() <= tol for v in self.directions)

    def check_inside(self, rays, tol: float) -> None:
        for v in self.directions:
            if domain_margin(v, rays) <= tol:
                raise OmegaTouchesBoundary(f"direction {tuple(v)} is not inside D")


@dataclass(frozen=True)
class SphericalCap:
    center: tuple
    radius: float

    def contains(self, u, tol: float = DEFAULT_TOL.tol_geom) -> bool:
        c = unit(self.center)
        return float(np.arccos(np.clip(c @ u, -1, 1))) <= self.radius + tol

    def check_inside(self, rays, tol: float) -> None:
        m = domain_margin(self.center, rays)
        if m <= 0 or np.arcsin(min(m, 1.0)) <= self.radius + tol:
            raise OmegaTouchesBoundary("cap closure reaches the rim of D")


# ---------------------------------------------------------------------------


def _asym_sources(s: ConvexSetSpec, tol: ToleranceConfig) -> set:
    realized = asymptotic_set(s).boundary
    return {k for k, h in enumerate(s.items)
            if any(_same_halfspace(h, g, tol.tol_geom) for g in realized)}


def full_truncation_height(s: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """A height strictly above every vertex of K and of A(K)."""
    V = polyhedron_vertices(s, tol)
    W = polyhedron_vertices(asymptotic_set(s), tol)
    return 1.0 + max(float(V[:, -1].max()), float(W[:, -1].max()) if len(W) else 0.0)


def _interior_facets(s: ConvexSetSpec, P: Polytope, tol: ToleranceConfig):
    asym = _asym_sources(s, tol)
    nb = len(s.boundary)
    floor = len(s.items)
    for k in asym:
        if k >= nb:
            raise UnboundedInteriorFacet(f"interior[{k - nb}] has an unbounded facet")
    return [f for f in P.facets
            if not f.artificial and f.source >= 0 and f.source != floor and f.source not in asym]


def settle_height(s: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Height above which K and A(K) coincide."""
    T = full_truncation_height(s, tol)
    P = truncate(*s.halfspace_arrays(), T, tol=tol)
    facets = _interior_facets(s, P, tol)
    if not facets:
        return 0.0
    H = P.heights()
    return float(max(H[list(f.vertices)].max() for f in facets))


def covolume_at(s: ConvexSetSpec, t: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """vol(A(K) ∩ slab(0, t)) - vol(K ∩ slab(0, t))."""
    a = asymptotic_set(s)
    VA = truncate(*a.halfspace_arrays(), t, tol=tol).volume
    VK = truncate(*s.halfspace_arrays(), t, tol=tol).volume
    return VA - VK


def covolume(s: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Exact volume of the coconvex set A(K) minus K."""
    settle_height(s, tol)  # raises on unbounded interior facets
    T = full_truncation_height(s, tol)
    v = covolume_at(s, T, tol)
    return max(v, 0.0)


def covolume_mc(s: ConvexSetSpec, samples: int = 1_000_000, seed: int = 0,
                tol: ToleranceConfig = DEFAULT_TOL):
    """Rejection-sampling estimate ``(estimate, stderr)`` of the covolume."""
    t_star = settle_height(s, tol)
    if t_star <= 0:
        return 0.0, 0.0
    a = asymptotic_set(s)
    box = truncate(*a.halfspace_arrays(), t_star, tol=tol).vertices
    lo, hi = box.min(axis=0), box.max(axis=0)
    rng = np.random.default_rng(seed)
    AA, bA = a.halfspace_arrays()
    AK, bK = s.halfspace_arrays()
    hits = 0
    chunk = 200_000
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        x = rng.uniform(lo, hi, size=(n, len(lo)))
        in_a = np.all(x @ AA.T <= bA, axis=1)
        in_k = np.all(x @ AK.T <= bK, axis=1)
        hits += int(np.count_nonzero(in_a & ~in_k))
        done += n
    vol = float(np.prod(hi - lo))
    p = hits / samples
    return vol * p, vol * np.sqrt(p * (1 - p) / samples)


def surface_measure(s: ConvexSetSpec, omega=None, tol: ToleranceConfig = DEFAULT_TOL) -> DiscreteMeasure:
    """Atoms of S(K, .) at the bounded (interior) facets whose normal is in ``omega``.

    ``omega=None`` selects every interior normal.
    """
    rays = domain_rays(s, tol)
    if omega is not None:
        omega.check_inside(rays, tol.tol_geom)
    t_star = settle_height(s, tol)
    T = max(full_truncation_height(s, tol), 2 * t_star + 1)
    P = truncate(*s.halfspace_arrays(), T, tol=tol)
    dirs, masses = [], []
    for f in _interior_facets(s, P, tol):
        if omega is not None and not omega.contains(f.normal, tol.tol_geom):
            continue
        if omega is None and domain_margin(f.normal, rays) <= tol.tol_geom:
            raise OmegaTouchesBoundary("interior facet normal on the rim of D")
        dirs.append(f.normal)
        masses.append(f.measure)
    if not dirs:
        return DiscreteMeasure.empty(s.dimension)
    return DiscreteMeasure(np.array(dirs), np.array(masses))


def support_values(s: ConvexSetSpec, U, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Support values at directions inside the closed normal domain."""
    V = polyhedron_vertices(s, tol)
    return (V @ np.atleast_2d(U).T).max(axis=0)


def same_set(s: ConvexSetSpec, t: ConvexSetSpec, tol: float = 1e-9) -> bool:
    """Equality of realized sets via support values on the union of normals."""
    if s.dimension != t.dimension:
        return False
    U = np.vstack([s.all_normals(), t.all_normals()])
    hs, ht = support_values(s, U), support_values(t, U)
    scale = 1.0 + max(np.abs(hs).max(), np.abs(ht).max())
    return bool(np.abs(hs - ht).max() <= tol * scale)


def homothety_ratio(s0: ConvexSetSpec, s1: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL):
    """``(a, perm)`` with A(K_0) = a A(K_1), or raise AsymptoticMismatch."""
    a0, a1 = asymptotic_set(s0).boundary, asymptotic_set(s1).boundary
    perm = match_normals(a0, a1, tol.tol_geom)
    if perm is None:
        raise AsymptoticMismatch("asymptotic sets have different normal fans")
    c0 = np.array([h.offset for h in a0])
    c1 = np.array([a1[j].offset for j in perm])
    if np.all(np.abs(c1) <= tol.tol_geom):
        if np.all(np.abs(c0) <= tol.tol_geom):
            return 1.0, perm
        raise AsymptoticMismatch("asymptotic sets are not homothetic")
    if np.any(np.abs(c1) <= tol.tol_geom):
        raise AsymptoticMismatch("asymptotic sets are not homothetic")
    ratios = c0 / c1
    if ratios.min() <= 0 or ratios.max() - ratios.min() > 1e-9 * ratios.max():
        raise AsymptoticMismatch("asymptotic sets are not homothetic")
    return float(ratios.mean()), perm


def cosum(s0: ConvexSetSpec, s1: ConvexSetSpec, lam: float,
          tol: ToleranceConfig = DEFAULT_TOL) -> ConvexSetSpec:
    """Spec of ``(1-lam) K_0 + lam K_1``; its coconvex set is the co-sum."""
    if not 0.0 <= lam <= 1.0:
        raise InvalidLambda(f"lam={lam}")
    _, perm = homothety_ratio(s0, s1, tol)
    if lam == 0.0:
        return s0
    if lam == 1.0:
        return s1
    a0, a1 = asymptotic_set(s0).boundary, asymptotic_set(s1).boundary
    bnd = [HalfSpace(h.normal, (1 - lam) * h.offset + lam * a1[j].offset) for h, j in zip(a0, perm)]
    V0, V1 = polyhedron_vertices(s0, tol), polyhedron_vertices(s1, tol)
    target = 1.0 + (1 - lam) * float(V0[:, -1].max()) + lam * float(V1[:, -1].max())
    P = minkowski_sum_truncated(s0, s1, lam, target, tol=tol)
    e = floor_normal(s0.dimension)
    interior = []
    for f in P.facets:
        if f.artificial or np.abs(f.normal - e).max() <= 1e-9:
            continue
        if any(np.abs(f.normal - h.n).max() <= 1e-9 for h in bnd):
            continue
        interior.append(HalfSpace(tuple(f.normal), f.offset))
    return ConvexSetSpec(s0.dimension, tuple(bnd), tuple(interior))


def scale(s: ConvexSetSpec, a: float) -> ConvexSetSpec:
    if not a > 0:
        raise NonpositiveScale(f"a={a}")
    return s.scaled(a)
