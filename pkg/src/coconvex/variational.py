"""First variation of covolume, mixed covolume and the two inequalities."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .asymptotic import asymptotic_set, match_normals
from .config import DEFAULT_TOL, ToleranceConfig
from .covolume import (
    cosum,
    covolume,
    homothety_ratio,
    same_set,
    support_values,
    surface_measure,
)
from .errors import AsymptoticMismatch, FUnsetOnAtom, InadmissibleStep, UniquenessViolation
from .geometry import HalfSpace, unit
from .sets import ConvexSetSpec

TOL_EQ = 1e-7
# Co-sum deficits near homothets are second order in the offset change, so the
# Brunn-Minkowski flag sits just above roundoff.
TOL_EQ_BM = 1e-11


@dataclass
class InequalityReport:
    lhs: float
    rhs: float
    gap: float
    equality_flag: bool
    holds: bool
    witnesses: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "gap": self.gap,
                "equality_flag": self.equality_flag, "holds": self.holds,
                "witnesses": self.witnesses}


def _lookup(f, u, tol):
    for v, val in f:
        if np.abs(unit(v) - u).max() <= tol:
            return float(val)
    raise FUnsetOnAtom(f"perturbation undefined at atom {tuple(u)}")


def restrict_to(s: ConvexSetSpec, omega, tol: ToleranceConfig = DEFAULT_TOL) -> ConvexSetSpec:
    """The Wulff shape K_omega = A(K) ∩ {<x,u> <= h_K(u), u in omega}."""
    mu = surface_measure(s, omega, tol)
    if len(mu) == 0:
        return asymptotic_set(s)
    h = support_values(s, mu.directions, tol)
    items = [HalfSpace(tuple(u), float(v)) for u, v in zip(mu.directions, h)]
    return ConvexSetSpec(s.dimension, asymptotic_set(s).boundary, tuple(items))


def variational_derivative(s: ConvexSetSpec, f, omega=None, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Derivative of covolume along h_K + tau f on omega: ``-sum f(u) S(K_omega, u)``."""
    k_omega = restrict_to(s, omega, tol)
    mu = surface_measure(k_omega, None, tol)
    return -float(sum(_lookup(f, u, tol.tol_geom) * m for u, m in mu.atoms()))


def perturbed(s: ConvexSetSpec, f, tau: float, omega=None, tol: ToleranceConfig = DEFAULT_TOL) -> ConvexSetSpec:
    k_omega = restrict_to(s, omega, tol)
    items = [HalfSpace(h.normal, h.offset + tau * _lookup(f, h.n, tol.tol_geom)) for h in k_omega.interior]
    return k_omega.with_interior(items)


def admissible_step(s: ConvexSetSpec, f, omega=None, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Largest |tau| keeping h_K + tau f nonnegative on the atoms of omega."""
    k_omega = restrict_to(s, omega, tol)
    h = k_omega.interior_offsets()
    fv = np.array([abs(_lookup(f, hs.n, tol.tol_geom)) for hs in k_omega.interior])
    if len(fv) == 0 or fv.max() == 0:
        return np.inf
    return float(h.min() / fv.max())


def variational_fd(s: ConvexSetSpec, f, tau: float, omega=None, *, check_admissible: bool = True,
                   tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Central difference of covolume along the Wulff perturbation."""
    if check_admissible and abs(tau) > admissible_step(s, f, omega, tol):
        raise InadmissibleStep(f"|tau|={abs(tau)} exceeds the admissible step")
    vp = covolume(perturbed(s, f, tau, omega, tol), tol)
    vm = covolume(perturbed(s, f, -tau, omega, tol), tol)
    return (vp - vm) / (2 * tau)


def _require_same_asymptotics(sK, sL, tol):
    aK, aL = asymptotic_set(sK).boundary, asymptotic_set(sL).boundary
    perm = match_normals(aK, aL, tol.tol_geom)
    if perm is None or any(abs(h.offset - aL[j].offset) > tol.tol_geom * (1 + abs(h.offset))
                           for h, j in zip(aK, perm)):
        raise AsymptoticMismatch("A(K) != A(L)")


def mixed_covolume(sK: ConvexSetSpec, sL: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """(1/d) sum over atoms of S(K) of (h_K - h_L) * mass."""
    _require_same_asymptotics(sK, sL, tol)
    mu = surface_measure(sK, None, tol)
    if len(mu) == 0:
        return 0.0
    hK = support_values(sK, mu.directions, tol)
    hL = support_values(sL, mu.directions, tol)
    return float(((hK - hL) * mu.masses).sum()) / sK.dimension


def mixed_covolume_fd(sK: ConvexSetSpec, sL: ConvexSetSpec, tau: float = 1e-4,
                      tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """One-sided difference quotient of covolume along the co-sum."""
    _require_same_asymptotics(sK, sL, tol)
    if not 0 < tau <= 1e-3:
        raise InadmissibleStep("tau must lie in (0, 1e-3]")
    v0 = covolume(sK, tol)
    vt = covolume(cosum(sK, sL, tau, tol), tol)
    return (vt - v0) / tau / sK.dimension


def _report(lhs, rhs, extra=None, eq_tol=TOL_EQ) -> InequalityReport:
    scale = max(abs(lhs), abs(rhs))
    gap = rhs - lhs
    return InequalityReport(lhs, rhs, gap, abs(gap) <= eq_tol * scale,
                            gap >= -1e-9 * max(scale, 1e-300), extra or {})


def check_brunn_minkowski(s0: ConvexSetSpec, s1: ConvexSetSpec, lam: float,
                          tol: ToleranceConfig = DEFAULT_TOL, *, degree: int | None = None) -> InequalityReport:
    """Power-mean inequality of degree ``degree`` (default: the dimension) along the co-sum."""
    n = s0.dimension if degree is None else degree
    a, _ = homothety_ratio(s0, s1, tol)
    v0, v1 = covolume(s0, tol), covolume(s1, tol)
    vl = covolume(cosum(s0, s1, lam, tol), tol)
    lhs = vl ** (1 / n)
    rhs = (1 - lam) * v0 ** (1 / n) + lam * v1 ** (1 / n)
    homothetic = same_set(s0, s1.scaled(a))
    return _report(lhs, rhs, {"a": a, "homothetic": homothetic, "degree": n}, TOL_EQ_BM)


def check_minkowski(sK: ConvexSetSpec, sL: ConvexSetSpec, tol: ToleranceConfig = DEFAULT_TOL,
                    *, degree: int | None = None) -> InequalityReport:
    """(V(K,L) + V(K))^n <= V(K)^(n-1) V(L) with n = ``degree`` (default: the dimension).

    The mixed term carries the factor 1/n; the left base is clipped at 0.
    """
    d = sK.dimension
    n = d if degree is None else degree
    _require_same_asymptotics(sK, sL, tol)
    vK, vL = covolume(sK, tol), covolume(sL, tol)
    m = mixed_covolume(sK, sL, tol) * d / n
    base = max(m + vK, 0.0)
    return _report(base ** n, vK ** (n - 1) * vL, {"mixed": m, "equal_sets": same_set(sK, sL), "degree": n})


def measures_equal(mu, nu, tol: float = 1e-9) -> bool:
    if len(mu) != len(nu):
        return False
    scale = max(mu.masses.max(initial=0.0), nu.masses.max(initial=0.0), 1e-300)
    for u, m in mu.atoms():
        if abs(nu.mass_at(u, 1e-9) - m) > tol * scale or nu.mass_at(u, 1e-9) == 0.0:
            return False
    return True


def uniqueness_check(sK: ConvexSetSpec, sL: ConvexSetSpec, tol: float = 1e-9,
                     cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    _require_same_asymptotics(sK, sL, cfg)
    mu, nu = surface_measure(sK, None, cfg), surface_measure(sL, None, cfg)
    if not measures_equal(mu, nu, tol):
        return False
    if not same_set(sK, sL, 1e-7):
        raise UniquenessViolation("equal surface measures for different sets")
    return True
