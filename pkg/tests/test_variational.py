import math

import numpy as np
import pytest

from coconvex.covolume import cosum, covolume, scale, surface_measure
from coconvex.errors import AsymptoticMismatch, FUnsetOnAtom, InadmissibleStep, UniquenessViolation
from coconvex.geometry import HalfSpace
from coconvex.instances import instance_with_cuts, perturb_offset, shifted_cone_2d
from coconvex.sets import ConvexSetSpec
from coconvex.variational import (
    check_brunn_minkowski,
    check_minkowski,
    measures_equal,
    mixed_covolume,
    mixed_covolume_fd,
    uniqueness_check,
    variational_derivative,
    variational_fd,
)

U = (1 / math.sqrt(5), -2 / math.sqrt(5))


def lifted(h):
    return shifted_cone_2d().with_interior([HalfSpace(U, h)])


def test_derivative_canonical(K):
    assert variational_derivative(K, [(U, 1.0)]) == pytest.approx(-math.sqrt(5), abs=1e-12)
    assert variational_derivative(K, [(U, 0.0)]) == 0.0
    with pytest.raises(FUnsetOnAtom):
        variational_derivative(K, [((0.0, -1.0), 1.0)])


def test_derivative_matches_fd_on_lifted_cut():
    s = lifted(0.1)
    exact = variational_derivative(s, [(U, 1.0)])
    for tau in (1e-3, 1e-4):
        assert variational_fd(s, [(U, 1.0)], tau) == pytest.approx(exact, rel=1e-6)
    with pytest.raises(InadmissibleStep):
        variational_fd(s, [(U, 1.0)], 0.5)


def test_cone_pairing_identity():
    C = ConvexSetSpec(2, [((1, -1), 0.0), ((-1, -1), 0.0)], [((0, -1), -0.5), ((1, -3), -1.2)])
    mu = surface_measure(C)
    f = [(u, float(h)) for u, h in zip(C.interior_normals(), C.interior_offsets())]
    # f = h_K scales K by (1 + tau); oracle is the homogeneity of degree d
    tau = 1e-5
    fd = (covolume(scale(C, 1 + tau)) - covolume(scale(C, 1 - tau))) / (2 * tau)
    assert variational_derivative(C, f) == pytest.approx(fd, rel=1e-8)
    assert variational_derivative(C, f) == pytest.approx(2 * covolume(C), rel=1e-10)
    assert len(mu) == 2


def test_mixed_canonical(K):
    L = lifted(0.1)
    assert mixed_covolume(K, K) == 0.0
    assert mixed_covolume(K, L) == pytest.approx(-0.05 * math.sqrt(5), abs=1e-15)
    fd = mixed_covolume_fd(K, L, 1e-4)
    assert fd == pytest.approx(mixed_covolume(K, L), rel=1e-3)
    with pytest.raises(InadmissibleStep):
        mixed_covolume_fd(K, L, 0.1)


def test_mixed_fd_first_order(K):
    L = lifted(0.1)
    exact = mixed_covolume(K, L)
    e1 = abs(mixed_covolume_fd(K, L, 1e-3) - exact)
    e2 = abs(mixed_covolume_fd(K, L, 5e-4) - exact)
    assert 0.4 < e2 / e1 < 0.6


def test_mixed_requires_same_asymptotics(K):
    with pytest.raises(AsymptoticMismatch):
        mixed_covolume(K, K.scaled(2.0))


def test_bm_homothets_and_strict(K):
    for a in (0.5, 1.0, 3.0):
        rep = check_brunn_minkowski(K, scale(K, a), 0.4)
        assert rep.holds and rep.equality_flag and rep.witnesses["homothetic"]
    two = K.with_interior(K.interior + (HalfSpace((-1.0, -2.0), 0.0),))
    rep = check_brunn_minkowski(K, two, 0.5)
    assert rep.holds and not rep.equality_flag and rep.gap > 0


def test_bm_lambda_limit(K):
    two = K.with_interior(K.interior + (HalfSpace((-1.0, -2.0), 0.0),))
    rep = check_brunn_minkowski(K, two, 1e-9)
    assert rep.lhs == pytest.approx(math.sqrt(0.5), rel=1e-6)
    assert rep.rhs == pytest.approx(math.sqrt(0.5), rel=1e-6)


def test_single_facet_pairs_are_linear(K):
    # same single normal, different offsets: covolume^(1/2) is affine along the co-sum
    L = lifted(0.1)
    rep = check_brunn_minkowski(K, L, 0.5)
    assert rep.equality_flag and not rep.witnesses["homothetic"]
    v = [covolume(cosum(K, L, t)) ** 0.5 for t in (0.0, 0.5, 1.0)]
    assert v[1] == pytest.approx(0.5 * (v[0] + v[2]), rel=1e-12)


def test_minkowski(K):
    rep = check_minkowski(K, K)
    assert rep.equality_flag and rep.lhs == pytest.approx(rep.rhs) == pytest.approx(0.25)
    two = K.with_interior(K.interior + (HalfSpace((-1.0, -2.0), 0.0),))
    rep = check_minkowski(K, two)
    assert rep.holds and rep.gap > 0 and not rep.equality_flag


def test_uniqueness(K):
    assert uniqueness_check(K, K)
    swapped = K.with_interior(tuple(reversed(K.interior)))
    assert uniqueness_check(K, swapped)
    assert not uniqueness_check(K, lifted(0.05))
    assert measures_equal(surface_measure(K), surface_measure(swapped))


def test_uniqueness_on_random():
    rng = np.random.default_rng(4)
    for d in (2, 3):
        s = instance_with_cuts(rng, d, 3)
        for i in range(3):
            t = perturb_offset(s, i, 1e-3)
            mu, nu = surface_measure(s), surface_measure(t)
            assert not measures_equal(mu, nu, 1e-9)
            assert not uniqueness_check(s, t)


# A = {z >= |x| - 1, z >= |y| - 1, z >= 0} cut by 0.3 x - z <= c: the removed cap
# contains the floor edge x = 1, so its sections are not scaled copies.
_CAP_A = ConvexSetSpec(3, [((1, 0, -1), 1.0), ((-1, 0, -1), 1.0), ((0, 1, -1), 1.0), ((0, -1, -1), 1.0)], ())


def _cap_set(c):
    n = math.hypot(0.3, 1.0)
    return _CAP_A.with_interior([HalfSpace((0.3 / n, 0.0, -1.0 / n), c / n)])


def _cap_volume(c):
    # slice at height z: x in [(c + z)/0.3, 1 + z], |y| <= 1 + z
    P = np.polynomial.Polynomial
    width = P([1.0, 1.0]) - P([c / 0.3, 1 / 0.3])
    area = width * P([2.0, 2.0])
    top = (0.3 - c) / 0.7
    F = area.integ()
    return F(top) - F(0.0)


@pytest.mark.parametrize("c", [0.06, 0.12, 0.18])
def test_cap_covolume_matches_slice_integral(c):
    assert covolume(_cap_set(c)) == pytest.approx(_cap_volume(c), rel=1e-12)


def test_cap_cosum_is_offset_average():
    mid = cosum(_cap_set(0.06), _cap_set(0.18), 0.5)
    assert covolume(mid) == pytest.approx(_cap_volume(0.12), rel=1e-12)


def test_cap_power_mean_depends_on_degree():
    v = [_cap_volume(c) for c in (0.06, 0.12, 0.18)]
    K0, K1 = _cap_set(0.06), _cap_set(0.18)
    # degree 3: concave cube root, the check reports a violation
    assert v[1] ** (1 / 3) > (v[0] ** (1 / 3) + v[2] ** (1 / 3)) / 2
    assert not check_brunn_minkowski(K0, K1, 0.5).holds
    # degree 2 holds on the same pair
    assert v[1] ** 0.5 < (v[0] ** 0.5 + v[2] ** 0.5) / 2
    rep = check_brunn_minkowski(K0, K1, 0.5, degree=2)
    assert rep.holds and rep.witnesses["degree"] == 2


def test_minkowski_degree_scales_mixed_term():
    K = instance_with_cuts(np.random.default_rng(4), 3, 3)
    L = perturb_offset(K, 0, 0.05)
    m = mixed_covolume(K, L)
    assert check_minkowski(K, L, degree=2).witnesses["mixed"] == pytest.approx(1.5 * m, rel=1e-14)
    assert check_minkowski(K, L).witnesses["mixed"] == m
