"""Write the shipped JSON fixtures into fixtures/ (deterministic)."""
from __future__ import annotations

import argparse
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from coconvex import io
from coconvex.covolume import surface_measure
from coconvex.geometry import HalfSpace
from coconvex.instances import (
    cone_2d,
    instance_with_cuts,
    non_irreducible_2d,
    random_boundary,
    random_cuts,
    shifted_cone_2d,
    sigma_schedule,
)
from coconvex.solver import SolverConfig


@dataclass(frozen=True)
class FixtureConfig:
    out: str = "fixtures"
    seed: int = 20240601
    batch_size: int = 5


def build(cfg: FixtureConfig) -> list[Path]:
    root = Path(cfg.out)
    (root / "batch").mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(cfg.seed)
    written = []

    def put(name, obj):
        path = root / name
        io.save(obj, path)
        written.append(path)

    K = shifted_cone_2d()
    put("shifted_cone_2d.json", io.spec_to_dict(K))
    L = K.with_interior([HalfSpace(K.interior[0].normal, 0.1)])
    put("shifted_cone_2d_h01.json", io.spec_to_dict(L.renamed("shifted-cone-2d-h0.1")))
    two = K.with_interior(K.interior + (HalfSpace((-1.0, -2.0), 0.0),))
    put("shifted_cone_2d_two_cuts.json", io.spec_to_dict(two.renamed("shifted-cone-2d-two-cuts")))
    put("non_irreducible_2d.json", io.spec_to_dict(non_irreducible_2d()))

    C, mu = cone_2d(3.0)
    put("cone_2d_problem.json", io.problem_to_dict(C, mu))

    K3 = instance_with_cuts(rng, 3, 4).renamed("roundtrip-3d")
    put("roundtrip_instance_3d.json", io.spec_to_dict(K3))
    put("roundtrip_problem_3d.json", io.problem_to_dict(K3, surface_measure(K3)))

    Cs, stages = sigma_schedule(rng, 2)
    put("sigma_stages_2d.json", io.problem_to_dict(Cs, stages=stages))

    put("solver_config.json", asdict(SolverConfig()))

    B = random_boundary(rng, 2)
    for i in range(cfg.batch_size):
        s = random_cuts(rng, B, int(rng.integers(1, 4))).renamed(f"batch-{i}")
        put(f"batch/instance_{i}.json", io.spec_to_dict(s))
    return written


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", default=FixtureConfig.out)
    p.add_argument("--seed", type=int, default=FixtureConfig.seed)
    a = p.parse_args(argv)
    for path in build(FixtureConfig(out=a.out, seed=a.seed)):
        print(path)


if __name__ == "__main__":
    main()
