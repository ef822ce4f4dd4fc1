import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coconvex.errors import InvalidLambda, Unbounded
from coconvex.geometry import (
    HalfSpace,
    facet_measure,
    hausdorff_distance,
    intersect_halfspaces,
    minkowski_sum_truncated,
    point_polytope_distance,
    polytope_from_arrays,
    polytope_volume,
    support_value,
    truncate,
)
from coconvex.covolume import settle_height


def square():
    A = np.array([[1.0, 0], [-1, 0], [0, 1], [0, -1]])
    return polytope_from_arrays(A, np.array([1.0, 0, 1, 0]))


def test_trapezoid_volume():
    hs = [HalfSpace((0, -1), 0), HalfSpace((1, -1), 1), HalfSpace((-1, -1), 1)]
    P = intersect_halfspaces(hs, 2.0)
    V = np.array([(-1, 0), (1, 0), (3, 2), (-3, 2)], dtype=float)
    assert sorted(map(tuple, np.round(P.vertices, 12))) == sorted(map(tuple, V))
    shoelace = 0.5 * abs(sum(V[i, 0] * V[i - 3, 1] - V[i - 3, 0] * V[i, 1] for i in range(4)))
    assert P.volume == pytest.approx(shoelace, abs=1e-12)


def test_unit_square_from_slab():
    hs = [HalfSpace((0, -1), 0), HalfSpace((1, 0), 1), HalfSpace((-1, 0), 0)]
    assert intersect_halfspaces(hs, 1.0).volume == pytest.approx(1.0, abs=1e-12)


def test_pyramid_against_monte_carlo():
    hs = [HalfSpace(n, 0) for n in [(0, 0, -1), (1, 0, -1), (-1, 0, -1), (0, 1, -1), (0, -1, -1)]]
    P = intersect_halfspaces(hs, 1.0)
    rng = np.random.default_rng(0)
    x = rng.uniform([-1, -1, 0], [1, 1, 1], size=(400_000, 3))
    inside = x[:, 2] >= np.maximum(np.abs(x[:, 0]), np.abs(x[:, 1]))
    est = 4.0 * inside.mean()
    err = 4.0 * inside.std() / math.sqrt(len(x))
    assert abs(P.volume - est) <= 4 * err
    assert polytope_volume(P) == pytest.approx(P.volume, rel=1e-12)


def test_unbounded_slab_rejected():
    with pytest.raises(Unbounded):
        intersect_halfspaces([HalfSpace((0, -1), 0)], 1.0)


def test_triangle_volume():
    A = np.array([[0.0, -1], [-1, 2], [1, -1]])
    P = polytope_from_arrays(A, np.array([0.0, 0, 1]))
    assert P.volume == pytest.approx(0.5, abs=1e-12)
    assert polytope_volume(P) == pytest.approx(0.5, abs=1e-12)


def test_facet_measures(K):
    assert facet_measure(square(), (0, -1)) == pytest.approx(1.0)
    A, b = K.halfspace_arrays()
    P = truncate(A, b, 3.0)
    assert facet_measure(P, (1, -2)) == pytest.approx(math.sqrt(5), abs=1e-12)
    assert facet_measure(P, (1, 1)) == 0.0


def test_support_values(K):
    assert support_value(square(), (1, 0)) == pytest.approx(1.0)
    A = K.boundary_only()
    assert support_value(A, (0, -1)) == pytest.approx(0.0, abs=1e-12)
    assert support_value(A, (0, 1)) == math.inf


def test_minkowski_sum_identities(K):
    t = 3.0
    A, b = K.halfspace_arrays()
    ref = truncate(A, b, t)
    for lam in (0.0, 0.5, 1.0):
        S = minkowski_sum_truncated(K, K, lam, t)
        assert S.volume == pytest.approx(ref.volume, abs=1e-10)
        assert hausdorff_distance(S, ref) <= 1e-9
    with pytest.raises(InvalidLambda):
        minkowski_sum_truncated(K, K, 1.5, t)


def test_point_distance_exact():
    P = square()
    assert point_polytope_distance(np.array([0.5, 0.5]), P) == 0.0
    assert point_polytope_distance(np.array([2.0, 0.5]), P) == pytest.approx(1.0)
    assert point_polytope_distance(np.array([2.0, 2.0]), P) == pytest.approx(math.sqrt(2))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(0.1, 5.0), st.floats(0.2, 4.0))
def test_volume_is_monotone_in_cap(a, b, t):
    # y >= a|x| style wedge over the floor; volume grows with the cap
    hs = [HalfSpace((a, -1), 0.5), HalfSpace((-b, -1), 0.5), HalfSpace((0, -1), 0)]
    v1 = intersect_halfspaces(hs, t).volume
    v2 = intersect_halfspaces(hs, 2 * t).volume
    assert v2 > v1 > 0
    P = intersect_halfspaces(hs, t)
    assert polytope_volume(P) == pytest.approx(v1, rel=1e-9)


def test_settle_height(K):
    assert settle_height(K) == pytest.approx(1.0)
    assert settle_height(K.boundary_only()) == 0.0
    assert settle_height(K.scaled(3.0)) == pytest.approx(3.0)


def test_nearly_parallel_facets_volume_matches_qhull():
    # sliver facets from cuts whose normals differ by ~1e-5
    from scipy.spatial import ConvexHull, HalfspaceIntersection

    rng = np.random.default_rng(3)
    box = np.vstack([np.eye(3), -np.eye(3)])
    base = np.array([1.0, 0.3, 0.2])
    cuts = np.array([base + 1e-5 * rng.standard_normal(3) for _ in range(6)])
    cuts /= np.linalg.norm(cuts, axis=1)[:, None]
    A = np.vstack([box, cuts])
    b = np.concatenate([np.ones(6), 0.9 + 1e-6 * rng.standard_normal(6)])
    ref = ConvexHull(HalfspaceIntersection(np.c_[A, -b], np.zeros(3)).intersections).volume
    assert polytope_from_arrays(A, b).volume == pytest.approx(ref, rel=1e-12)
