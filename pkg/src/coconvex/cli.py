"""Command-line front end.

Exit codes: 0 ok / inequality holds, 1 invalid input set or violated
inequality, 2 usage or malformed file, 3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from .asymptotic import asymptotic_set, check_irreducible, validate_spec
from .covolume import DirectionSet, SphericalCap, cosum, covolume, covolume_mc, surface_measure
from .errors import GeometryError, UniquenessViolation
from .plot import render_svg
from .solver import MinkowskiProblem, SolverConfig, Status, sigma_finite_driver, solve_minkowski
from .variational import check_brunn_minkowski, check_minkowski, mixed_covolume, mixed_covolume_fd

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _emit(obj: dict, out: str | None) -> None:
    text = io.dumps(obj)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _valid_spec(path):
    s = io.load_spec(path)
    rep = validate_spec(s)
    if not rep.valid:
        raise GeometryError(f"{path}: not a valid instance: " + "; ".join(rep.issues or ["class check failed"]))
    return s


def _parse_omega(text: str | None, d: int):
    if text is None:
        return None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _Usage(f"--omega: {exc.msg}") from exc
    if isinstance(data, dict) and "center" in data and "radius" in data:
        return SphericalCap(tuple(map(float, data["center"])), float(data["radius"]))
    if isinstance(data, list) and all(isinstance(v, list) and len(v) == d for v in data):
        return DirectionSet(tuple(tuple(map(float, v)) for v in data))
    raise _Usage("--omega: expected a list of directions or {\"center\": [...], \"radius\": r}")


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    s = io.load_spec(args.path)
    rep = validate_spec(s)
    _emit({"command": "validate", "path": str(args.path), "report": rep.as_dict()}, args.out)
    return EXIT_OK if rep.valid else EXIT_FAIL


def cmd_covolume(args) -> int:
    s = _valid_spec(args.path)
    out = {"command": "covolume", "covolume": covolume(s)}
    if args.mc:
        est, err = covolume_mc(s, args.mc, args.seed)
        out["mc"] = {"estimate": est, "stderr": err, "samples": args.mc, "seed": args.seed}
    _emit(out, args.out)
    return EXIT_OK


def cmd_surface(args) -> int:
    s = _valid_spec(args.path)
    mu = surface_measure(s, _parse_omega(args.omega, s.dimension))
    _emit({"command": "surface", "atoms": io.measure_to_dict(mu), "total": mu.total}, args.out)
    return EXIT_OK


def cmd_asymptotic(args) -> int:
    s = io.load_spec(args.path)
    ok, missing = check_irreducible(s)
    a = asymptotic_set(s)
    out = io.spec_to_dict(a)
    out.update({"command": "asymptotic", "irreducible": ok,
                "not_at_infinity": [f"boundary[{s.boundary.index(h)}]" for h in missing]})
    _emit(out, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cosum(args) -> int:
    s0, s1 = _valid_spec(args.path_a), _valid_spec(args.path_b)
    out = io.spec_to_dict(cosum(s0, s1, args.lam), lam=args.lam)
    out["covolume"] = covolume(cosum(s0, s1, args.lam))
    _emit(out, args.out)
    return EXIT_OK


def _check_pair(kind, pa, pb, lam):
    s0, s1 = _valid_spec(pa), _valid_spec(pb)
    rep = check_brunn_minkowski(s0, s1, lam) if kind == "bm" else check_minkowski(s0, s1)
    d = rep.as_dict()
    d["paths"] = [str(pa), str(pb)]
    return d


def cmd_check(args) -> int:
    if args.batch:
        root = Path(args.batch)
        files = sorted(root.glob("*.json"))
        if len(files) < 2:
            raise _Usage(f"--batch {root}: need at least two instance files")
        pairs = [(files[i], files[j]) for i in range(len(files)) for j in range(i + 1, len(files))]

        def one(pair):
            try:
                return _check_pair(args.kind, pair[0], pair[1], args.lam)
            except GeometryError as exc:
                return {"paths": [str(p) for p in pair], "skipped": str(exc)}

        with ThreadPoolExecutor() as pool:
            reports = list(pool.map(one, pairs))
        reports.sort(key=lambda r: r["paths"])
        checked = [r for r in reports if "holds" in r]
        holds = all(r["holds"] for r in checked)
        _emit({"command": "check", "kind": args.kind, "reports": reports, "holds": holds,
               "checked": len(checked)}, args.out)
        return EXIT_OK if holds else EXIT_FAIL
    if len(args.paths) != 2:
        raise _Usage("check needs exactly two instance paths (or --batch DIR)")
    rep = _check_pair(args.kind, args.paths[0], args.paths[1], args.lam)
    rep.update({"command": "check", "kind": args.kind})
    _emit(rep, args.out)
    return EXIT_OK if rep["holds"] else EXIT_FAIL


def cmd_mixed(args) -> int:
    s0, s1 = _valid_spec(args.path_a), _valid_spec(args.path_b)
    out = {"command": "mixed", "mixed_covolume": mixed_covolume(s0, s1)}
    if args.fd is not None:
        out["mixed_covolume_fd"] = mixed_covolume_fd(s0, s1, args.fd)
        out["tau"] = args.fd
    _emit(out, args.out)
    return EXIT_OK


def _config(args) -> SolverConfig:
    return io.load_config(args.config, SolverConfig) if args.config else SolverConfig()


def cmd_solve(args) -> int:
    a, mu, _ = io.load_problem(args.problem)
    if mu is None:
        raise _Usage(f"{args.problem}: solve needs 'atoms'")
    res = solve_minkowski(MinkowskiProblem(a, mu), _config(args))
    out = res.as_dict()
    out.update({"command": "solve", "solution": io.spec_to_dict(res.solution)})
    _emit(out, args.out)
    if args.trace:
        with open(args.trace, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["iter", "phi", "kkt_residual"])
            for i, ph in enumerate(res.phi_trace):
                resid = res.kkt_residual if i == len(res.phi_trace) - 1 else ""
                w.writerow([i, repr(float(ph)), repr(resid) if resid != "" else ""])
    return EXIT_OK if res.status == Status.CONVERGED else EXIT_FAIL


def cmd_sigma(args) -> int:
    a, mu, stages = io.load_problem(args.problem)
    stages = stages or [mu]
    rep = sigma_finite_driver(a, stages, _config(args), probe_height=args.probe)
    out = rep.as_dict()
    out["command"] = "sigma"
    out["solution"] = io.spec_to_dict(rep.results[-1].solution)
    _emit(out, args.out)
    return EXIT_OK


def cmd_plot(args) -> int:
    s = _valid_spec(args.path)
    Path(args.out_svg).write_text(render_svg(s, args.height), encoding="utf-8")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coconvex", description="Covolume, co-sums and Minkowski problems.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--out", help="write JSON here instead of stdout")
        return sp

    sp = add("validate", cmd_validate, "class membership report")
    sp.add_argument("path")
    sp = add("covolume", cmd_covolume, "exact covolume, optional Monte-Carlo estimate")
    sp.add_argument("path")
    sp.add_argument("--mc", type=int, default=0, metavar="SAMPLES")
    sp.add_argument("--seed", type=int, default=0)
    sp = add("surface", cmd_surface, "surface area measure")
    sp.add_argument("path")
    sp.add_argument("--omega", help="JSON list of directions or a cap {center, radius}")
    sp = add("asymptotic", cmd_asymptotic, "asymptotic set and irreducibility")
    sp.add_argument("path")
    sp = add("cosum", cmd_cosum, "co-sum (1-lam) K0 + lam K1")
    sp.add_argument("path_a")
    sp.add_argument("path_b")
    sp.add_argument("--lam", type=float, default=0.5)
    sp = add("check", cmd_check, "Brunn-Minkowski (bm) or Minkowski (mink) inequality")
    sp.add_argument("kind", choices=["bm", "mink"])
    sp.add_argument("paths", nargs="*")
    sp.add_argument("--lam", type=float, default=0.5)
    sp.add_argument("--batch", metavar="DIR", help="check every pair of instances in DIR")
    sp = add("mixed", cmd_mixed, "mixed covolume")
    sp.add_argument("path_a")
    sp.add_argument("path_b")
    sp.add_argument("--fd", type=float, metavar="TAU")
    sp = add("solve", cmd_solve, "discrete Minkowski problem")
    sp.add_argument("problem")
    sp.add_argument("--config")
    sp.add_argument("--trace", metavar="CSV")
    sp = add("sigma", cmd_sigma, "staged solves for a measure on a cone")
    sp.add_argument("problem")
    sp.add_argument("--config")
    sp.add_argument("--probe", type=float)
    sp = add("plot", cmd_plot, "SVG cross-section")
    sp.add_argument("path")
    sp.add_argument("--height", type=float)
    sp.add_argument("--out-svg", required=True, dest="out_svg")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except (io.InputError, _Usage) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UniquenessViolation as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except GeometryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (AssertionError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"internal invariant breach: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
