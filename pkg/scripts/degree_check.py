"""Brunn-Minkowski and Minkowski checks at power-mean degree d versus d - 1.

Pairs share their asymptotic set up to scaling: independent random cuts and
single-offset perturbations. Prints violation counts and the worst relative gap
for each degree.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from coconvex.instances import instance_with_cuts, perturb_offset, random_cuts
from coconvex.variational import check_brunn_minkowski, check_minkowski


@dataclass(frozen=True)
class DegreeConfig:
    seed: int = 5
    pairs: int = 60
    dimension: int = 3
    delta: float = 1e-2


def pairs(cfg: DegreeConfig):
    rng = np.random.default_rng(cfg.seed)
    for k in range(cfg.pairs):
        K = instance_with_cuts(rng, cfg.dimension, int(rng.integers(2, 5)))
        if k % 2:
            i = int(rng.integers(len(K.interior)))
            yield "perturbed", K, perturb_offset(K, i, cfg.delta), float(rng.uniform(0.1, 0.9))
        else:
            L = random_cuts(rng, K.boundary_only(), int(rng.integers(1, 5)))
            yield "independent", K, L, float(rng.uniform(0.1, 0.9))


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(DegreeConfig()).items():
        p.add_argument(f"--{name}", type=type(default), default=default)
    cfg = DegreeConfig(**vars(p.parse_args(argv)))
    d = cfg.dimension
    stats: dict = {}
    for kind, K, L, lam in pairs(cfg):
        for n in (d, d - 1):
            for name, rep in (("bm", check_brunn_minkowski(K, L, lam, degree=n)),
                              ("mink", check_minkowski(K, L, degree=n))):
                rel = rep.gap / max(abs(rep.lhs), abs(rep.rhs), 1e-300)
                s = stats.setdefault((name, kind, n), [0, 0, np.inf])
                s[0] += 1
                s[1] += not rep.holds
                s[2] = min(s[2], rel)
    print(vars(cfg))
    for (name, kind, n), (tot, bad, worst) in sorted(stats.items()):
        print(f"{name:4s} {kind:11s} degree {n}: violated {bad}/{tot}, worst relative gap {worst:+.2e}")


if __name__ == "__main__":
    main()
