"""Discrete Minkowski problem for coconvex sets.

Given asymptotic data A and atoms (u_i, alpha_i) inside the normal domain,
find K = A ∩ {<x,u_i> <= h_i} and c > 0 with alpha_i = c S(K, u_i).

General asymptotic data
    For fixed c the support vector h(c) minimizes the convex energy
    V(h) + alpha.h / c over 0 <= h <= h_A(u), whose stationarity condition
    is alpha = c S.  The scalar c is then fixed by
    r(c) = c d V(h(c)) - alpha.h(c) = 0, which is the closed-form relation
    between c, the support values and the covolume.  Along the curve h(c)
    the functional Phi = V^(1/d) alpha.h has derivative of the same sign as
    r, so the root is the maximizer of Phi over the curve.

Cone data
    Offsets are negative; with hbar = -h the covolume is convex and
    homogeneous of degree d, so minimizing V(hbar) - alpha.hbar gives
    S = alpha directly, and the solution is rescaled to unit covolume.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .asymptotic import check_irreducible, domain_rays
from .config import DEFAULT_TOL, ToleranceConfig
from .covolume import DiscreteMeasure, covolume, settle_height, support_values
from .errors import (
    DegenerateMeasure,
    InvalidSpec,
    NegativeValue,
    NotACone,
    NotIrreducible,
    OmegaTouchesBoundary,
    StagesNotNested,
)
from .geometry import HalfSpace, floor_normal, hausdorff_distance, lp_max, truncate, unit
from .sets import ConvexSetSpec, domain_margin

log = logging.getLogger(__name__)


class Status(str, Enum):
    CONVERGED = "Converged"
    MAX_ITERS = "MaxIters"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class MinkowskiProblem:
    asymptotic: ConvexSetSpec
    measure: DiscreteMeasure

    def __post_init__(self):
        a = self.asymptotic
        if a.interior:
            object.__setattr__(self, "asymptotic", a.boundary_only())
        if len(self.measure) == 0:
            raise InvalidSpec("measure has no atoms")
        if self.measure.directions.shape[1] != a.dimension:
            raise InvalidSpec("measure and asymptotic data differ in dimension")

    @property
    def dimension(self) -> int:
        return self.asymptotic.dimension

    @property
    def is_cone(self) -> bool:
        return self.asymptotic.is_cone()

    def check(self, tol: ToleranceConfig = DEFAULT_TOL) -> None:
        rays = domain_rays(self.asymptotic, tol)
        for i, u in enumerate(self.measure.directions):
            if domain_margin(u, rays) <= tol.tol_geom:
                raise OmegaTouchesBoundary(f"measure.atoms[{i}] is not strictly inside D")

    def floor_normal_in_fan(self) -> bool:
        """Whether -e_d is an atom or strictly inside the cone spanned by the atoms."""
        U = self.measure.directions
        d = self.dimension
        e = floor_normal(d)
        if any(np.abs(u - e).max() <= 1e-12 for u in U):
            return True
        if np.linalg.matrix_rank(U) < d:
            return False
        from scipy.optimize import linprog

        res = linprog(np.zeros(len(U)), A_eq=U[:, :-1].T, b_eq=np.zeros(d - 1),
                      bounds=[(1, None)] * len(U), method="highs")
        return res.status == 0


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 200
    tol_kkt: float = 1e-8
    step_init: float = 1.0
    armijo: tuple = (0.5, 1e-4)
    h_max: float | None = None
    seed: int = 0
    max_outer: int = 80

    def __post_init__(self):
        if self.max_iters <= 0 or self.tol_kkt <= 0 or self.step_init <= 0:
            raise ValueError("solver parameters must be positive")
        if not (0 < self.armijo[0] < 1 and 0 < self.armijo[1] < 1):
            raise ValueError("armijo parameters must lie in (0, 1)")
        if self.h_max is not None and self.h_max <= 0:
            raise ValueError("h_max must be positive")


@dataclass
class SolverResult:
    solution: ConvexSetSpec
    c: float
    kkt_residual: float
    iterations: int
    phi_trace: list
    status: Status
    h: np.ndarray = None
    covolume: float = float("nan")
    surface: np.ndarray = None
    c_closed_form: float = float("nan")
    diagnostics: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"c": self.c, "c_closed_form": self.c_closed_form, "kkt_residual": self.kkt_residual,
                "iterations": self.iterations, "status": self.status.value,
                "covolume": self.covolume, "h": [float(x) for x in self.h],
                "surface": [float(x) for x in self.surface], "diagnostics": list(self.diagnostics)}


# ---------------------------------------------------------------------------
# covolume and surface masses as a function of the atom offsets


def _lp_height(A, b, u, rhs):
    """max x_d over {A x <= b, <x,u> >= rhs}."""
    d = A.shape[1]
    e = np.zeros(d)
    e[-1] = 1.0
    status, val, _ = lp_max(e, np.vstack([A, -u]), np.concatenate([b, [-rhs]]))
    if status != "optimal":
        raise OmegaTouchesBoundary("cut region is unbounded; atom not inside D")
    return val


class _Evaluator:
    """V and S for K = A ∩ {<x,u_i> <= offset_i}.

    ``sign = -1`` (general data): offsets are h >= 0 and dV/dh = -S.
    ``sign = +1`` (cone data): offsets are -hbar and dV/dhbar = +S.
    """

    def __init__(self, asymptotic: ConvexSetSpec, U: np.ndarray, cone: bool,
                 tol: ToleranceConfig = DEFAULT_TOL):
        self.tol = tol
        self.d = asymptotic.dimension
        self.U = np.asarray(U, dtype=float)
        self.m = len(self.U)
        self.cone = cone
        self.sign = 1.0 if cone else -1.0
        A, b = asymptotic.halfspace_arrays()
        self.nb = len(asymptotic.boundary)
        self.A_asym, self.b_asym = A, b
        self.rows = np.vstack([A[:-1], self.U, A[-1:]])
        self.cache: dict = {}
        if cone:
            self.t_unit = np.array([_lp_height(A, b, u, -1.0) for u in self.U])
            self.vol_unit = truncate(A, b, 1.0, tol=tol).volume
        else:
            W = truncate(A, b, 1.0 + float(np.abs(b).max()) * 10, tol=tol).vertices
            self.h_cap = support_values(asymptotic, self.U)
            heights = [_lp_height(A, b, u, 0.0) for u in self.U]
            self.T = 1.0 + max(max(heights), float(W[:, -1].max()) if len(W) else 0.0)
            self.vol_A = truncate(A, b, self.T, tol=tol).volume
        self.calls = 0

    def offsets(self, x):
        return -x if self.cone else x

    def height(self, x) -> float:
        if not self.cone:
            return self.T
        return 1.0 + 1.25 * float((self.t_unit * np.maximum(x, 0)).max(initial=0.0))

    def polytope(self, x):
        T = self.height(x)
        b = np.concatenate([self.b_asym[:-1], self.offsets(x), self.b_asym[-1:]])
        return truncate(self.rows, b, T, tol=self.tol), T

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        key = x.tobytes()
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        P, T = self.polytope(x)
        vol_a = self.vol_unit * T ** self.d if self.cone else self.vol_A
        S = np.zeros(self.m)
        for f in P.facets:
            k = f.source - self.nb
            if 0 <= k < self.m:
                S[k] += f.measure
        supp = (P.vertices @ self.U.T).max(axis=0)
        out = (vol_a - P.volume, S, supp, vol_a)
        if len(self.cache) > 4096:
            self.cache.clear()
        self.cache[key] = out
        return out

    def project(self, x):
        """Replace offsets by the support values of the realized set."""
        _, _, supp, _ = self(x)
        off = np.minimum(self.offsets(x), supp)
        return self.offsets(off)


def _fd_jacobian(ev: _Evaluator, x, S, g, free, lo, hi):
    """Forward-difference Jacobian of S in the free coordinates, stepping downhill."""
    idx = np.flatnonzero(free)
    J = np.zeros((len(idx), len(idx)))
    scale = 1.0 + float(np.abs(x).max())
    # keep the step well below the smallest facet so no facet vanishes
    pos = S[S > 0]
    size = float(pos.min()) ** (1.0 / (ev.d - 1)) if len(pos) else scale
    h = min(1e-6 * scale, max(0.05 * size, 1e-9 * scale))
    for col, j in enumerate(idx):
        step = h * (-1.0 if g[j] > 0 else 1.0)
        xj = x[j] + step
        if xj < lo[j] or xj > hi[j]:
            step = -step
        y = x.copy()
        y[j] += step
        S2 = ev(y)[1]
        J[:, col] = (S2[idx] - S[idx]) / step
    return J


def _projected_grad(x, g, lo, hi):
    pg = g.copy()
    pg[(x <= lo) & (g > 0)] = 0.0
    pg[(x >= hi) & (g < 0)] = 0.0
    return pg


def _line_search(ev, w, x, g, p, lo, hi, E0, noise, cfg: SolverConfig):
    shrink, slope = cfg.armijo
    t = cfg.step_init
    for _ in range(60):
        xn = np.clip(x + t * p, lo, hi)
        xn = np.clip(ev.project(xn), lo, hi)
        En = ev(xn)[0] + w @ xn
        pred = g @ (xn - x)
        if En <= E0 + slope * pred or (abs(pred) <= noise and En <= E0 + noise):
            return xn
        t *= shrink
    return None


def _minimize_energy(ev: _Evaluator, w, x0, lo, hi, gtol, cfg: SolverConfig):
    """Projected Newton on E(x) = V(x) + w.x over lo <= x <= hi.

    Returns ``(x, grad, iters, hessian_free, free_mask)``.
    """
    x = np.clip(np.asarray(x0, dtype=float), lo, hi)
    x = np.clip(ev.project(x), lo, hi)
    H = None
    free = np.ones(len(x), dtype=bool)
    it = 0
    for it in range(1, cfg.max_iters + 1):
        V, S, _, vol_a = ev(x)
        g = ev.sign * S + w
        pg = _projected_grad(x, g, lo, hi)
        if np.abs(pg).max() <= gtol:
            break
        free = pg != 0.0
        free |= (x > lo) & (x < hi)
        J = _fd_jacobian(ev, x, S, g, free, lo, hi)
        H = ev.sign * 0.5 * (J + J.T)
        lam, Q = np.linalg.eigh(H)
        top = max(float(np.abs(lam).max()), 1e-300)
        lam = np.maximum(lam, 1e-8 * top)
        p = np.zeros_like(x)
        p[free] = -(Q @ ((Q.T @ g[free]) / lam))
        E0 = V + w @ x
        noise = 1e-13 * (abs(vol_a) + abs(w) @ np.abs(x) + 1.0)
        xn = _line_search(ev, w, x, g, p, lo, hi, E0, noise, cfg)
        if xn is None:
            # Newton direction unusable (kinks in S); try steepest descent
            pd = -pg * (float(np.abs(x).max()) + 1.0) / max(float(np.abs(pg).max()), 1e-300)
            xn = _line_search(ev, w, x, g, pd, lo, hi, E0, noise, cfg)
        if xn is None:
            break
        if np.abs(xn - x).max() <= 1e-15 * (1.0 + np.abs(x).max()):
            x = xn
            break
        x = xn
    V, S, _, _ = ev(x)
    g = ev.sign * S + w
    return x, g, it, H, free


# ---------------------------------------------------------------------------
# Phi and its gradient


def _general_evaluator(problem: MinkowskiProblem, tol: ToleranceConfig) -> _Evaluator:
    return _Evaluator(problem.asymptotic, problem.measure.directions, cone=False, tol=tol)


def phi(problem: MinkowskiProblem, h, tol: ToleranceConfig = DEFAULT_TOL, *, _ev=None) -> float:
    """V(K_h)^(1/d) * sum alpha_i h_{K_h}(u_i)."""
    h = np.asarray(h, dtype=float)
    if np.any(h < 0):
        raise NegativeValue("support values must be nonnegative")
    ev = _ev or _general_evaluator(problem, tol)
    hp = ev.project(h)
    V = ev(hp)[0]
    return max(V, 0.0) ** (1.0 / problem.dimension) * float(problem.measure.masses @ hp)


def phi_gradient(problem: MinkowskiProblem, h, tol: ToleranceConfig = DEFAULT_TOL, *, _ev=None) -> np.ndarray:
    ev = _ev or _general_evaluator(problem, tol)
    d = problem.dimension
    alpha = problem.measure.masses
    V, S, _, _ = ev(np.asarray(h, dtype=float))
    V = max(V, 0.0)
    return -(1.0 / d) * V ** ((1.0 - d) / d) * S * float(alpha @ h) + V ** (1.0 / d) * alpha


# ---------------------------------------------------------------------------
# solvers


def _solution_spec(problem: MinkowskiProblem, offsets, name="solution") -> ConvexSetSpec:
    items = [HalfSpace(tuple(u), float(o)) for u, o in zip(problem.measure.directions, offsets)]
    return problem.asymptotic.with_interior(items)


def _kkt(alpha, c, S) -> float:
    return float(np.abs(alpha - c * S).max() / alpha.max())


def solve_minkowski(problem: MinkowskiProblem, config: SolverConfig = SolverConfig(),
                    h0=None, tol: ToleranceConfig = DEFAULT_TOL) -> SolverResult:
    """Solve alpha = c S(K) for general (non-cone) asymptotic data."""
    if problem.is_cone:
        return solve_cone_normalized(problem, config, tol=tol)
    ok, missing = check_irreducible(problem.asymptotic, tol)
    if not ok:
        raise NotIrreducible(f"{len(missing)} boundary item(s) are not facets at infinity")
    problem.check(tol)
    e = floor_normal(problem.dimension)
    for i, u in enumerate(problem.measure.directions):
        if np.abs(u - e).max() <= tol.tol_geom:
            raise DegenerateMeasure(f"measure.atoms[{i}] sits on the floor normal, whose support value is pinned")
    d = problem.dimension
    alpha = problem.measure.masses
    ev = _general_evaluator(problem, tol)
    lo = np.zeros(ev.m)
    hi = ev.h_cap.copy()
    if config.h_max is not None:
        hi = np.minimum(hi, config.h_max)
    rng = np.random.default_rng(config.seed)
    x = np.asarray(h0, dtype=float) if h0 is not None else rng.uniform(0.3, 0.7, size=ev.m) * hi

    iters = 0
    trace: list = []
    best = -np.inf
    diagnostics: list = []
    seen: list = []  # (log c, r, x, dr/dlogc)

    def evaluate(logc, start):
        nonlocal iters, best
        c = float(np.exp(logc))
        w = alpha / c
        gtol = 0.1 * config.tol_kkt * alpha.max() / c
        xs, g, it, H, free = _minimize_energy(ev, w, start, lo, hi, gtol, config)
        iters += it
        V, S, _, _ = ev(xs)
        r = c * d * V - alpha @ xs
        # dr/dlog c from the sensitivity of the inner optimum
        deriv = np.nan
        if H is not None and free.any() and free.sum() == H.shape[0]:
            try:
                hp = np.zeros(ev.m)
                hp[free] = np.linalg.solve(H, alpha[free] / c ** 2)
                deriv = c * (d * V - (c * (d + 1)) * (S @ hp))
            except np.linalg.LinAlgError:
                pass
        ph = max(V, 0.0) ** (1.0 / d) * float(alpha @ xs)
        best = max(best, ph)
        trace.append(best)
        seen.append((logc, r, xs, deriv))
        return r, xs

    def nearest(logc):
        if not seen:
            return x
        return min(seen, key=lambda s: abs(s[0] - logc))[2]

    _, S0, _, _ = ev(ev.project(x))
    logc = float(np.log(alpha.sum() / max(S0.sum(), 1e-12)))
    r, _ = evaluate(logc, x)
    if r == 0:
        lo_c = hi_c = logc
    else:
        direction = 1.0 if r > 0 else -1.0
        a, ra = logc, r
        b = rb = None
        for _ in range(60):
            nb_ = a + direction * np.log(4.0)
            rn, _ = evaluate(nb_, nearest(nb_))
            if np.sign(rn) != np.sign(ra):
                b, rb = nb_, rn
                break
            a, ra = nb_, rn
        if b is None:
            raise DegenerateMeasure("could not bracket the scale c")
        lo_c, hi_c = (a, b) if a < b else (b, a)

    # safeguarded Newton / secant on r(log c); r > 0 at lo_c, r < 0 at hi_c
    def r_at(lc):
        for s in seen:
            if s[0] == lc:
                return s[1]
        return evaluate(lc, nearest(lc))[0]

    r_lo, r_hi = r_at(lo_c), r_at(hi_c)
    cur = min(seen, key=lambda s: abs(s[1]))
    status = Status.MAX_ITERS
    for _ in range(config.max_outer):
        lc, rc, xc, dr = cur
        c = float(np.exp(lc))
        Vc = ev(xc)[0]
        if abs(rc) <= 1e-3 * config.tol_kkt * c * d * max(Vc, 1e-300) or hi_c - lo_c <= 1e-15:
            status = Status.CONVERGED
            break
        cand = lc - rc / dr if np.isfinite(dr) and dr != 0 else np.nan
        if not (lo_c < cand < hi_c) or not np.isfinite(cand):
            cand = lo_c + (hi_c - lo_c) * r_lo / (r_lo - r_hi)  # regula falsi
            if not (lo_c < cand < hi_c):
                cand = 0.5 * (lo_c + hi_c)
        rn, xn = evaluate(cand, nearest(cand))
        if rn > 0:
            if cand - lo_c < 0.5 * (hi_c - lo_c) and rc > 0 and lc == lo_c:
                r_hi *= 0.5  # Illinois modification keeps regula falsi moving
            lo_c, r_lo = cand, rn
        elif rn < 0:
            hi_c, r_hi = cand, rn
        cur = seen[-1]

    lc, rc, xs, _ = cur
    c = float(np.exp(lc))
    V, S, _, _ = ev(xs)
    c_cf = float(alpha @ xs) / (d * V)
    res = _kkt(alpha, c, S)
    if status == Status.CONVERGED and res > config.tol_kkt:
        status = Status.MAX_ITERS
    vanished = [i for i in range(ev.m) if S[i] <= 0.0]
    pinned = [i for i in range(ev.m) if xs[i] <= 0.0 and alpha[i] - c * S[i] > config.tol_kkt * alpha.max()]
    if status != Status.CONVERGED and (vanished or pinned):
        status = Status.DEGENERATE
        diagnostics += [f"measure.atoms[{i}]: facet vanished" for i in vanished]
        diagnostics += [f"measure.atoms[{i}]: support value pinned at 0" for i in pinned]
    cap_hits = [i for i in range(ev.m) if xs[i] >= hi[i] - 1e-3 * hi[i]]
    diagnostics += [f"measure.atoms[{i}]: near the height cap" for i in cap_hits]
    log.debug("solve_minkowski: c=%g res=%g iters=%d calls=%d", c, res, iters, ev.calls)
    return SolverResult(_solution_spec(problem, xs), c, res, iters, trace, status, xs, V, S, c_cf, diagnostics)


def solve_cone_normalized(problem: MinkowskiProblem, config: SolverConfig = SolverConfig(),
                          hbar0=None, tol: ToleranceConfig = DEFAULT_TOL) -> SolverResult:
    """alpha = c S(K) with A a pointed cone and K rescaled to unit covolume."""
    if not problem.is_cone:
        raise NotACone("asymptotic data has nonzero offsets")
    problem.check(tol)
    d = problem.dimension
    alpha = problem.measure.masses
    ev = _Evaluator(problem.asymptotic, problem.measure.directions, cone=True, tol=tol)
    rng = np.random.default_rng(config.seed)
    x0 = np.asarray(hbar0, dtype=float) if hbar0 is not None else rng.uniform(0.5, 1.5, size=ev.m)
    lo = np.zeros(ev.m)
    hi = np.full(ev.m, np.inf)
    gtol = 0.1 * config.tol_kkt * alpha.max()
    xs, g, iters, _, _ = _minimize_energy(ev, -alpha, x0, lo, hi, gtol, config)
    V = ev(xs)[0]
    if V <= 0:
        raise DegenerateMeasure("optimal set has zero covolume")
    xs = xs * V ** (-1.0 / d)
    V, S, _, _ = ev(xs)
    c = float(alpha @ xs) / d
    res = _kkt(alpha, c, S)
    status = Status.CONVERGED if res <= config.tol_kkt else Status.MAX_ITERS
    diagnostics = []
    if status != Status.CONVERGED and np.any(S <= 0):
        status = Status.DEGENERATE
        diagnostics = [f"measure.atoms[{i}]: facet vanished" for i in np.flatnonzero(S <= 0)]
    ph = float(alpha @ xs)
    return SolverResult(_solution_spec(problem, -xs), c, res, iters, [ph], status, xs, V, S,
                        c * V, diagnostics)


# ---------------------------------------------------------------------------
# sigma-finite exhaustion


@dataclass
class StageReport:
    results: list
    c: list
    anchor_c: list
    distances: list
    probe_height: float
    converged: bool

    def as_dict(self) -> dict:
        return {"c": self.c, "anchor_c": self.anchor_c, "distances": self.distances,
                "probe_height": self.probe_height, "converged": self.converged,
                "status": [r.status.value for r in self.results],
                "kkt_residual": [r.kkt_residual for r in self.results]}


def _check_nested(stages) -> None:
    for j in range(1, len(stages)):
        prev, cur = stages[j - 1], stages[j]
        for u, m in prev.atoms():
            mc = cur.mass_at(u)
            if mc == 0.0 or abs(mc - m) > 1e-12 * max(m, 1.0):
                raise StagesNotNested(f"stages[{j}] drops or changes an atom of stages[{j - 1}]")


def sigma_finite_driver(cone: ConvexSetSpec, stages, config: SolverConfig = SolverConfig(),
                        probe_height: float | None = None, tol_stage: float = 1e-4,
                        tol: ToleranceConfig = DEFAULT_TOL) -> StageReport:
    """Solve nested truncations mu_1 <= mu_2 <= ... of a measure on the cone."""
    stages = list(stages)
    if not stages:
        raise InvalidSpec("need at least one stage")
    _check_nested(stages)
    results = []
    warm = None
    for j, mu in enumerate(stages):
        prob = MinkowskiProblem(cone, mu)
        x0 = None
        if warm is not None:
            prev_mu, prev_x = warm
            x0 = np.array([next((x for v, x in zip(prev_mu.directions, prev_x)
                                 if np.abs(v - u).max() <= 1e-12), 0.5 * prev_x.mean())
                           for u in mu.directions])
        r = solve_cone_normalized(prob, config, hbar0=x0, tol=tol)
        results.append(r)
        warm = (mu, r.h)
    first = stages[0]
    anchors = []
    for r in results:
        mu = stages[results.index(r)]
        S1 = sum(r.surface[k] for k, u in enumerate(mu.directions) if first.mass_at(u) > 0)
        anchors.append(first.total / S1 if S1 > 0 else float("nan"))
    if probe_height is None:
        probe_height = 1.25 * max(settle_height(r.solution, tol) for r in results) + 0.1
    polys = [truncate(*r.solution.halfspace_arrays(), probe_height, tol=tol) for r in results]
    dists = [hausdorff_distance(polys[j - 1], polys[j]) for j in range(1, len(polys))]
    converged = bool(dists) and dists[-1] <= tol_stage
    return StageReport(results, [r.c for r in results], anchors, dists, probe_height, converged)


# ---------------------------------------------------------------------------
# height bound used by the existence argument


def _diameter(V: np.ndarray) -> float:
    D = np.linalg.norm(V[:, None, :] - V[None, :, :], axis=-1)
    return float(D.max())


def lemma51_height_bound(asymptotic: ConvexSetSpec, directions, s: float,
                         tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """t = ((1 + a0) / a0) diam(A_s), a0 the least sine between atom and boundary normals."""
    if s <= 0:
        raise ValueError("probe height must be positive")
    U = np.atleast_2d(np.asarray(directions, dtype=float))
    U = np.array([unit(u) for u in U])
    N = np.array([h.n for h in asymptotic.boundary])
    cos = np.clip(U @ N.T, -1.0, 1.0)
    a0 = float(np.sqrt(1.0 - cos ** 2).min())
    rays = domain_rays(asymptotic, tol)
    if a0 <= tol.tol_geom or any(domain_margin(u, rays) <= tol.tol_geom for u in U):
        raise OmegaTouchesBoundary("directions reach the rim of D")
    As = truncate(*asymptotic.boundary_only().halfspace_arrays(), s, tol=tol)
    return (1.0 + a0) / a0 * _diameter(As.vertices)


def height_reach(asymptotic: ConvexSetSpec, u, s: float) -> float:
    """Highest point of A on a hyperplane with normal ``u`` through A_s."""
    A, b = asymptotic.boundary_only().halfspace_arrays()
    n, d = A.shape
    u = unit(u)
    # variables (x, z): x in A, z in A_s, <x - z, u> = 0
    top = np.zeros(d)
    top[-1] = 1.0
    A_ub = np.block([[A, np.zeros((n, d))], [np.zeros((n, d)), A], [np.zeros((1, d)), top[None, :]]])
    b_ub = np.concatenate([b, b, [s]])
    A_eq = np.concatenate([u, -u])[None, :]
    status, val, _ = lp_max(np.concatenate([top, np.zeros(d)]), A_ub, b_ub, A_eq, [0.0])
    if status != "optimal":
        raise OmegaTouchesBoundary("hyperplane escapes to infinity")
    return val
