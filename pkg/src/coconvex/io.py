"""JSON instance, measure and problem files (``format_version`` 1).

Floats are written with ``repr`` (shortest round-trip form), so
load -> save -> load is bit-stable.
"""
from __future__ import annotations

import json
import math
from dataclasses import fields
from pathlib import Path

import numpy as np

from .covolume import DiscreteMeasure
from .geometry import HalfSpace
from .sets import ConvexSetSpec

FORMAT_VERSION = 1


class InputError(ValueError):
    """Malformed input file; the message names the offending location."""


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def dumps(obj: dict) -> str:
    body = dict(_jsonable(obj))
    body["format_version"] = FORMAT_VERSION
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def save(obj: dict, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def load_json(path) -> dict:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{p}: cannot read ({exc.strerror})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{p}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{p}: top level must be an object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise InputError(f"{p}: format_version must be {FORMAT_VERSION}, got {version!r}")
    return data


# ---------------------------------------------------------------------------


def _vector(value, where: str, d: int | None = None) -> tuple:
    if not isinstance(value, list) or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                                              for x in value):
        raise InputError(f"{where}: expected a list of numbers")
    if d is not None and len(value) != d:
        raise InputError(f"{where}: expected {d} components, got {len(value)}")
    if not all(math.isfinite(x) for x in value):
        raise InputError(f"{where}: non-finite component")
    return tuple(float(x) for x in value)


def _number(value, where: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        raise InputError(f"{where}: expected a finite number")
    return float(value)


def _items(data, key: str, d: int, where: str) -> tuple:
    raw = data.get(key, [])
    if not isinstance(raw, list):
        raise InputError(f"{where}{key}: expected a list")
    out = []
    for i, item in enumerate(raw):
        loc = f"{where}{key}[{i}]"
        if not isinstance(item, dict) or "normal" not in item or "offset" not in item:
            raise InputError(f"{loc}: expected an object with 'normal' and 'offset'")
        normal = _vector(item["normal"], f"{loc}.normal", d)
        if max(abs(x) for x in normal) == 0:
            raise InputError(f"{loc}.normal: zero vector")
        out.append(HalfSpace(normal, _number(item["offset"], f"{loc}.offset")))
    return tuple(out)


def spec_to_dict(s: ConvexSetSpec, **meta) -> dict:
    out = {
        "dimension": s.dimension,
        "boundary": [{"normal": list(h.normal), "offset": h.offset} for h in s.boundary],
        "interior": [{"normal": list(h.normal), "offset": h.offset} for h in s.interior],
    }
    if s.name:
        out["name"] = s.name
    out.update(meta)
    return out


def spec_from_dict(data: dict, where: str = "") -> ConvexSetSpec:
    d = data.get("dimension")
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise InputError(f"{where}dimension: expected an integer >= 2")
    name = data.get("name", "")
    return ConvexSetSpec(d, _items(data, "boundary", d, where), _items(data, "interior", d, where),
                         name=str(name))


def load_spec(path) -> ConvexSetSpec:
    data = load_json(path)
    try:
        return spec_from_dict(data)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def save_spec(s: ConvexSetSpec, path, **meta) -> None:
    save(spec_to_dict(s, **meta), path)


def measure_to_dict(mu: DiscreteMeasure) -> list:
    return [{"normal": list(map(float, u)), "mass": float(m)} for u, m in mu.atoms()]


def measure_from_list(raw, d: int, where: str) -> DiscreteMeasure:
    if not isinstance(raw, list):
        raise InputError(f"{where}: expected a list of atoms")
    U, m = [], []
    for i, a in enumerate(raw):
        loc = f"{where}[{i}]"
        if not isinstance(a, dict) or "normal" not in a or "mass" not in a:
            raise InputError(f"{loc}: expected an object with 'normal' and 'mass'")
        U.append(_vector(a["normal"], f"{loc}.normal", d))
        mass = _number(a["mass"], f"{loc}.mass")
        if mass <= 0:
            raise InputError(f"{loc}.mass: must be positive")
        m.append(mass)
    try:
        return DiscreteMeasure(np.array(U, dtype=float).reshape(-1, d), np.array(m))
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def problem_to_dict(asymptotic: ConvexSetSpec, mu: DiscreteMeasure | None = None, stages=None, **meta) -> dict:
    out = {"asymptotic": spec_to_dict(asymptotic.boundary_only())}
    if mu is not None:
        out["atoms"] = measure_to_dict(mu)
    if stages is not None:
        out["stages"] = [measure_to_dict(s) for s in stages]
    out.update(meta)
    return out


def load_problem(path):
    """``(asymptotic, measure or None, stages or None)``."""
    data = load_json(path)
    try:
        return _problem_from_dict(data, path)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _problem_from_dict(data: dict, path):
    if "asymptotic" not in data or not isinstance(data["asymptotic"], dict):
        raise InputError("asymptotic: expected an instance object")
    a = spec_from_dict(data["asymptotic"], "asymptotic.")
    if a.interior:
        raise InputError("asymptotic.interior: must be empty")
    mu = measure_from_list(data["atoms"], a.dimension, "atoms") if "atoms" in data else None
    stages = None
    if "stages" in data:
        if not isinstance(data["stages"], list) or not data["stages"]:
            raise InputError("stages: expected a nonempty list")
        stages = [measure_from_list(s, a.dimension, f"stages[{j}]") for j, s in enumerate(data["stages"])]
    if mu is None and stages is None:
        raise InputError("needs 'atoms' or 'stages'")
    return a, mu, stages


def load_config(path, cls):
    data = load_json(path)
    names = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - names - {"format_version"})
    if unknown:
        raise InputError(f"{path}: unknown config key(s) {', '.join(unknown)}")
    kwargs = {k: (tuple(v) if isinstance(v, list) else v) for k, v in data.items() if k in names}
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc
