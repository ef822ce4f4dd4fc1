import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coconvex.covolume import (
    DirectionSet,
    DiscreteMeasure,
    SphericalCap,
    cosum,
    covolume,
    covolume_mc,
    same_set,
    scale,
    surface_measure,
)
from coconvex.errors import InvalidLambda, NonpositiveScale, OmegaTouchesBoundary
from coconvex.instances import random_instance
from coconvex.geometry import HalfSpace

U = (1 / math.sqrt(5), -2 / math.sqrt(5))


def test_canonical_covolume(K):
    # K^c is the triangle (0,0),(1,0),(2,1)
    tri = np.array([[0, 0], [1, 0], [2, 1]], dtype=float)
    x, y = tri[:, 0], tri[:, 1]
    shoelace = 0.5 * abs(x @ np.roll(y, -1) - y @ np.roll(x, -1))
    assert covolume(K) == pytest.approx(shoelace, abs=1e-12)
    assert covolume(K.boundary_only()) == 0.0


@pytest.mark.parametrize("a", [0.5, 2.0, 3.0])
def test_homogeneity(K, a):
    assert covolume(scale(K, a)) == pytest.approx(a ** 2 * 0.5, rel=1e-12)
    assert surface_measure(scale(K, a)).total == pytest.approx(a * math.sqrt(5), rel=1e-12)
    with pytest.raises(NonpositiveScale):
        scale(K, 0.0)


def test_normalizing_scale(K):
    a = covolume(K) ** (-1 / 2)
    assert covolume(scale(K, a)) == pytest.approx(1.0, rel=1e-12)


def test_mc_on_canonical(K):
    est, err = covolume_mc(K, 200_000, seed=3)
    assert abs(est - 0.5) <= 3 * err
    assert covolume_mc(K.boundary_only(), 1000) == (0.0, 0.0)


@pytest.mark.parametrize("d", [2, 3])
def test_mc_on_random(d):
    rng = np.random.default_rng(100 + d)
    for seed in range(3):
        s = random_instance(rng, d)
        est, err = covolume_mc(s, 200_000, seed=seed)
        assert abs(est - covolume(s)) <= 4 * err + 1e-12


def test_surface_measure(K):
    mu = surface_measure(K)
    assert len(mu) == 1
    assert np.allclose(mu.directions[0], U, atol=1e-15)
    assert mu.masses[0] == pytest.approx(math.sqrt(5), abs=1e-12)
    assert len(surface_measure(K, DirectionSet(((0.0, -1.0),)))) == 0
    cap = SphericalCap(U, 0.05)
    assert surface_measure(K, cap).total == pytest.approx(math.sqrt(5))
    with pytest.raises(OmegaTouchesBoundary):
        surface_measure(K, SphericalCap((0.0, -1.0), 1.0))


def test_measure_validation():
    with pytest.raises(ValueError):
        DiscreteMeasure(np.array([[0.0, -1.0]]), np.array([-1.0]))
    with pytest.raises(ValueError):
        DiscreteMeasure(np.array([[0.0, -1.0], [0.0, -2.0]]), np.array([1.0, 1.0]))


def test_cosum_identities(K):
    L = K.scaled(2.0)
    assert cosum(K, L, 0.0) == K
    assert same_set(cosum(K, K, 0.37), K)
    with pytest.raises(InvalidLambda):
        cosum(K, L, -0.1)


def test_cosum_of_homothets_is_linear(K):
    L = K.scaled(2.0)
    v = covolume(cosum(K, L, 0.5))
    bound = (0.5 * math.sqrt(0.5) + 0.5 * math.sqrt(2.0)) ** 2
    assert v == pytest.approx(bound, rel=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 0.44), st.floats(0.2, 3.0))
def test_single_cut_covolume_formula(h, a):
    # the cut x - 2y <= h*sqrt5 leaves a triangle; area via shoelace on explicit vertices
    s = scale(K_fixture(h), a)
    # vertices: floor meets the cut at x = h5, and the boundary line y = x - 1
    h5 = h * math.sqrt(5)
    p0 = np.array([h5, 0.0])
    p1 = np.array([1.0, 0.0])
    # x - 2y = h5 and y = x - 1 -> x = 2 - h5, y = 1 - h5
    p2 = np.array([2.0 - h5, 1.0 - h5])
    tri = np.array([p0, p1, p2])
    x, y = tri[:, 0], tri[:, 1]
    area = 0.5 * abs(x @ np.roll(y, -1) - y @ np.roll(x, -1))
    assert covolume(s) == pytest.approx(a * a * area, rel=1e-9, abs=1e-13)


def test_redundant_cut_has_no_covolume():
    # h*sqrt5 >= 1: the cut line misses the floor segment [-1, 1]
    assert covolume(K_fixture(0.5)) == 0.0


def K_fixture(h):
    from coconvex.instances import shifted_cone_2d

    K = shifted_cone_2d()
    return K.with_interior([HalfSpace(U, h)])
