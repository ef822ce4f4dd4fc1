"""Convergence of the one-sided co-sum quotient to the mixed covolume.

Prints, per random pair, the relative error at each tau and the observed
order log10(err(tau_k) / err(tau_{k+1})) / log10(tau_k / tau_{k+1}).
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from coconvex.instances import random_cuts, random_instance
from coconvex.variational import mixed_covolume, mixed_covolume_fd


@dataclass(frozen=True)
class ConvergenceConfig:
    seed: int = 3
    pairs: int = 10
    taus: tuple = (1e-3, 1e-4, 1e-5)


def run(cfg: ConvergenceConfig):
    rng = np.random.default_rng(cfg.seed)
    out = []
    for _ in range(cfg.pairs):
        d = int(rng.choice([2, 3]))
        K = random_instance(rng, d)
        L = random_cuts(rng, K.boundary_only(), int(rng.integers(1, 5)))
        m = mixed_covolume(K, L)
        err = np.array([abs(mixed_covolume_fd(K, L, t) - m) / abs(m) for t in cfg.taus])
        out.append((d, m, err))
    return out


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=ConvergenceConfig.seed)
    p.add_argument("--pairs", type=int, default=ConvergenceConfig.pairs)
    p.add_argument("--taus", type=float, nargs="+", default=list(ConvergenceConfig.taus))
    a = p.parse_args(argv)
    cfg = ConvergenceConfig(a.seed, a.pairs, tuple(a.taus))
    logt = np.log10(cfg.taus)
    for d, m, err in run(cfg):
        order = np.diff(np.log10(np.maximum(err, 1e-300))) / np.diff(logt)
        print(f"d={d} mixed={m:+.5f} rel err " + " ".join(f"{e:.1e}" for e in err)
              + " order " + " ".join(f"{o:.2f}" for o in order))


if __name__ == "__main__":
    main()
