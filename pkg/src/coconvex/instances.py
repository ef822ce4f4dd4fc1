"""Canonical fixtures and seeded random generators of valid instances."""
from __future__ import annotations

import numpy as np

from .asymptotic import check_irreducible, redundant_items
from .covolume import DiscreteMeasure, support_values
from .geometry import HalfSpace, unit
from .sets import ConvexSetSpec, domain_margin, recession_rays

MARGIN = 0.05


def shifted_cone_2d() -> ConvexSetSpec:
    """A = {y >= |x| - 1, y >= 0} cut by x - 2y <= 0; covolume 1/2."""
    return ConvexSetSpec(2, [((1, -1), 1.0), ((-1, -1), 1.0)], [((1, -2), 0.0)], name="shifted-cone-2d")


def cone_2d(atom_mass: float = 1.0):
    """Cone y >= |x| with one atom at -e_2."""
    C = ConvexSetSpec(2, [((1, -1), 0.0), ((-1, -1), 0.0)], (), name="cone-2d")
    return C, DiscreteMeasure(np.array([[0.0, -1.0]]), np.array([atom_mass]))


def non_irreducible_2d() -> ConvexSetSpec:
    """A declared boundary item that never becomes a facet at infinity."""
    return ConvexSetSpec(2, [((1, -1), 1.0), ((-1, -1), 1.0), ((1, -3), 0.2)], (), name="non-irreducible-2d")


def _boundary_normals(rng, d: int):
    if d == 2:
        a, b = rng.uniform(np.radians(30), np.radians(70), size=2)
        return [np.array([np.sin(a), -np.cos(a)]), np.array([-np.sin(b), -np.cos(b)])]
    k = int(rng.integers(3, 6))
    az = 2 * np.pi * np.arange(k) / k + rng.uniform(-0.3, 0.3, size=k) * np.pi / k
    az += rng.uniform(0, 2 * np.pi)
    pol = rng.uniform(np.radians(35), np.radians(60), size=k)
    return [np.array([np.sin(p) * np.cos(t), np.sin(p) * np.sin(t), -np.cos(p)]) for p, t in zip(pol, az)]


def random_boundary(rng, d: int, cone: bool = False) -> ConvexSetSpec:
    """Irreducible asymptotic data with normals around -e_d."""
    while True:
        N = _boundary_normals(rng, d)
        offs = np.zeros(len(N)) if cone else rng.uniform(0.5, 2.0, size=len(N))
        s = ConvexSetSpec(d, [HalfSpace(tuple(n), float(c)) for n, c in zip(N, offs)])
        try:
            rays = recession_rays(s.all_normals()[:-1])
        except ValueError:
            continue
        if len(rays) < d and d > 2:
            continue
        if check_irreducible(s)[0]:
            return s


def random_directions(rng, boundary: ConvexSetSpec, n: int, margin: float = MARGIN) -> np.ndarray:
    """``n`` distinct unit normals with domain margin above ``margin``."""
    N = np.array([h.n for h in boundary.boundary])
    rays = recession_rays(N)
    out: list = []
    while len(out) < n:
        w = rng.dirichlet(np.full(len(N), 0.7))
        u = unit(w @ N)
        if domain_margin(u, rays) <= margin:
            continue
        if any(np.abs(u - v).max() < 1e-3 for v in out):
            continue
        out.append(u)
    return np.array(out)


def random_cuts(rng, boundary: ConvexSetSpec, n_cuts: int, lo: float = 0.2, hi: float = 0.8,
                cone: bool = False) -> ConvexSetSpec:
    """Cut ``boundary`` by irredundant interior half-spaces.

    Offsets are a random fraction of the asymptotic support value; for cone
    data (support value 0) the cut offsets are negative instead.
    """
    while True:
        U = random_directions(rng, boundary, n_cuts)
        if cone:
            offs = -rng.uniform(0.3, 1.5, size=n_cuts)
        else:
            offs = rng.uniform(lo, hi, size=n_cuts) * support_values(boundary, U)
        s = boundary.with_interior([HalfSpace(tuple(u), float(c)) for u, c in zip(U, offs)])
        red = {i for kind, i in redundant_items(s) if kind == "interior"}
        keep = [h for i, h in enumerate(s.interior) if i not in red]
        if keep:
            return s.with_interior(keep)


def random_instance(rng, d: int, *, cone: bool = False, max_cuts: int | None = None) -> ConvexSetSpec:
    max_cuts = max_cuts or (4 if d == 2 else 6)
    b = random_boundary(rng, d, cone)
    return random_cuts(rng, b, int(rng.integers(1, max_cuts + 1)), cone=cone)


def random_measure(rng, boundary: ConvexSetSpec, n_atoms: int) -> DiscreteMeasure:
    U = random_directions(rng, boundary, n_atoms, margin=0.1)
    return DiscreteMeasure(U, rng.uniform(0.2, 2.0, size=n_atoms))


def perturb_offset(s: ConvexSetSpec, index: int, delta: float) -> ConvexSetSpec:
    items = list(s.interior)
    h = items[index]
    items[index] = HalfSpace(h.normal, h.offset + delta)
    return s.with_interior(items)


def instance_with_cuts(rng, d: int, n_cuts: int, *, cone: bool = False, lo: float = 0.2, hi: float = 0.8,
                       max_tries: int = 60, max_restarts: int = 200) -> ConvexSetSpec:
    """Random instance with exactly ``n_cuts`` irredundant interior items.

    Cuts are added greedily; a candidate is kept when every interior item
    stays irredundant. A stalled build restarts on fresh boundary data.
    """
    for _ in range(max_restarts):
        b = random_boundary(rng, d, cone)
        s = b
        fails = 0
        while len(s.interior) < n_cuts and fails < max_tries:
            u = random_directions(rng, b, 1)[0]
            if any(np.abs(u - h.n).max() < 1e-2 for h in s.interior):
                fails += 1
                continue
            if cone:
                off = -rng.uniform(0.3, 1.5) * (1 + 0.2 * len(s.interior))
            else:
                off = rng.uniform(lo, hi) * float(support_values(s, u[None, :])[0])
            t = s.with_interior(s.interior + (HalfSpace(tuple(u), off),))
            if [i for kind, i in redundant_items(t) if kind == "interior"]:
                fails += 1
                continue
            s, fails = t, 0
        if len(s.interior) == n_cuts:
            return s
    raise RuntimeError(f"could not place {n_cuts} irredundant cuts")


def sigma_schedule(rng, d: int, n_stages: int = 9, base: int = 3, decay: float = 6.0):
    """Cone data plus nested finite measures approaching the rim of the normal domain.

    Stage 0 has ``base`` well-interior atoms; stage j adds one atom of mass
    0.5 decay^-j whose direction moves geometrically toward a boundary normal.
    """
    C = random_boundary(rng, d, cone=True)
    N = np.array([h.n for h in C.boundary])
    U = list(random_directions(rng, C, base, margin=0.2))
    m = list(rng.uniform(0.5, 1.5, size=base))
    target = unit(N[0] + 0.3 * N[1]) if d == 3 else N[0]
    centre = unit(N.sum(axis=0))
    edge = 0.97 * target + 0.03 * centre
    stages = [DiscreteMeasure(np.array(U), np.array(m))]
    for j in range(1, n_stages):
        s = 1 - 0.6 ** j
        U.append(unit((1 - s) * centre + s * edge))
        m.append(0.5 * decay ** (-j))
        stages.append(DiscreteMeasure(np.array(U), np.array(m)))
    return C, stages
