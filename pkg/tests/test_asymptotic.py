import math

import numpy as np
import pytest

from coconvex.asymptotic import (
    asymptotic_of_sum,
    asymptotic_set,
    asymptotic_slice,
    check_irreducible,
    validate_spec,
    wulff_shape,
)
from coconvex.covolume import same_set, support_values
from coconvex.errors import HeightNonpositive, UnsharedNormals
from coconvex.geometry import HalfSpace, minkowski_sum_truncated, truncate
from coconvex.instances import non_irreducible_2d, random_boundary, random_cuts
from coconvex.sets import ConvexSetSpec


def offsets_match(a: ConvexSetSpec, b: ConvexSetSpec, tol=1e-9) -> bool:
    if len(a.boundary) != len(b.boundary):
        return False
    for h in a.boundary:
        if not any(np.abs(h.n - g.n).max() <= tol and abs(h.offset - g.offset) <= tol for g in b.boundary):
            return False
    return True


def test_canonical_is_valid(K):
    rep = validate_spec(K)
    assert rep.c0 and rep.cc and rep.cb and rep.valid
    assert rep.covolume == pytest.approx(0.5, abs=1e-12)


def test_normal_outside_domain_rejected(K):
    bad = K.with_interior([HalfSpace((2, -1), 0.0)])
    rep = validate_spec(bad)
    assert not rep.valid
    assert any("interior[0]" in msg for msg in rep.issues)
    # oracle: <(t, t-1), u> grows without bound along the boundary ray
    u = np.array([2, -1]) / math.sqrt(5)
    vals = [np.array([t, t - 1]) @ u for t in (1e2, 1e4, 1e6)]
    assert vals[0] < vals[1] < vals[2]


def test_floor_only_fails_cc():
    rep = validate_spec(ConvexSetSpec(2, [((0, -1), 0.0)], ()))
    assert not rep.cc and not rep.valid


def test_wulff_fixed_point_and_canonical(K):
    A = K.boundary_only()
    u = K.interior[0].normal
    W = wulff_shape([(u, 0.0)], A.boundary)
    assert same_set(W, K)
    U = K.interior_normals()
    again = wulff_shape(list(zip(U, support_values(K, U))), A.boundary)
    assert same_set(again, K)


def test_asymptotic_set_of_canonical(K):
    a = asymptotic_set(K)
    assert a.interior == ()
    assert offsets_match(a, K.boundary_only())
    assert asymptotic_set(K.boundary_only()) == K.boundary_only()


def test_slice_drops_settled_facet(K):
    P = asymptotic_slice(K, 10.0)
    ref = truncate(*K.boundary_only().halfspace_arrays(), 10.0)
    assert P.volume == pytest.approx(ref.volume, rel=1e-12)
    with pytest.raises(HeightNonpositive):
        asymptotic_slice(K, 0.0)


def test_slice_monotone(K):
    small, big = asymptotic_slice(K, 2.0), asymptotic_slice(K, 5.0)
    assert np.all(big.contains(small.vertices))


def test_irreducible_flags(K):
    assert check_irreducible(K)[0]
    far = K.boundary + (HalfSpace((0.6, -0.8), 1e3),)
    s = ConvexSetSpec(2, far, K.interior)
    ok, witnesses = check_irreducible(s)
    assert not ok and witnesses == [HalfSpace((0.6, -0.8), 1e3)]
    ok, witnesses = check_irreducible(non_irreducible_2d())
    assert not ok and len(witnesses) == 1
    cone = ConvexSetSpec(2, [((1, -1), 0.0), ((-1, -1), 0.0)], [((0, -1), -0.5)])
    assert check_irreducible(cone)[0]


def test_sum_offsets(K):
    s = asymptotic_of_sum(K, K.scaled(2.0), 0.5)
    assert sorted(h.offset for h in s.boundary) == pytest.approx([1.5 / math.sqrt(2)] * 2, abs=1e-15)
    assert offsets_match(asymptotic_of_sum(K, K.scaled(2.0), 0.0), asymptotic_set(K))
    assert offsets_match(asymptotic_of_sum(K, K, 0.3), asymptotic_set(K))


def test_sum_needs_shared_fan(K):
    other = ConvexSetSpec(2, [((1, -2), 1.0), ((-1, -1), 1.0)], ())
    with pytest.raises(UnsharedNormals):
        asymptotic_of_sum(K, other, 0.5)


def cap_facets(P, t):
    # facets of the truncated sum that reach the top: the sum's facets at infinity
    H = P.heights()
    out = []
    for f in P.facets:
        if f.artificial or abs(f.normal[-1] + 1.0) <= 1e-12:
            continue
        if H[list(f.vertices)].max() >= t - 1e-9:
            out.append(HalfSpace(tuple(f.normal), f.offset))
    return ConvexSetSpec(P.dim, out, ())


@pytest.mark.parametrize("d", [2, 3])
def test_additivity_against_exact_sum(d):
    rng = np.random.default_rng(7 + d)
    for _ in range(5):
        B = random_boundary(rng, d)
        B1 = ConvexSetSpec(d, [HalfSpace(h.normal, h.offset * rng.uniform(0.5, 2.0)) if d == 2
                               else HalfSpace(h.normal, 1.7 * h.offset) for h in B.boundary], ())
        K0, K1 = random_cuts(rng, B, 2), random_cuts(rng, B1, 2)
        lam = float(rng.uniform(0.1, 0.9))
        t = 50.0
        P = minkowski_sum_truncated(K0, K1, lam, t)
        assert offsets_match(cap_facets(P, t), asymptotic_of_sum(K0, K1, lam), tol=1e-8)
