"""JSON descriptors for groups, subgroups, functions, systems and profiles.

Function values are dense arrays in the canonical element order of the
(normalized) group: row-major over the coordinates, each entry either a
number or an ``[re, im]`` pair.  Rationals are written as ``"p/q"``
strings or plain numbers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .groups import FiniteAbelianGroup, GroupFunction, InvalidInput, Subgroup, make_group, subgroup_from_generators
from .systems import GaborSystem, Generator, GtiSystem, Layer
from .torus.profiles import RationalStepProfile


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _rational(v, what: str) -> Fraction:
    try:
        return Fraction(v) if not isinstance(v, float) else Fraction(v).limit_denominator(10**12)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"{what}: {v!r} is not a rational number") from exc


def _require(data: dict, key: str, what: str):
    if not isinstance(data, dict) or key not in data:
        raise InvalidInput(f"{what}: missing field {key!r}")
    return data[key]


def read_group(data: dict) -> FiniteAbelianGroup:
    factors = _require(data, "factors", "group")
    if not isinstance(factors, list) or not all(isinstance(d, int) and not isinstance(d, bool) for d in factors):
        raise InvalidInput("group: factors must be a list of integers")
    return make_group(factors, _rational(data.get("weight", 1), "group weight"))


def write_group(group: FiniteAbelianGroup) -> dict:
    return {"factors": list(group.factors), "weight": str(group.weight)}


def read_subgroup(group: FiniteAbelianGroup, data: dict) -> Subgroup:
    gens = _require(data, "generators", "subgroup")
    if not isinstance(gens, list):
        raise InvalidInput("subgroup: generators must be a list")
    out = []
    for g in gens:
        if not isinstance(g, list) or len(g) != group.rank or not all(isinstance(c, int) for c in g):
            raise InvalidInput(f"subgroup: generator {g!r} does not match rank {group.rank}")
        out.append(tuple(g))
    return subgroup_from_generators(group, out)


def write_subgroup(sub: Subgroup) -> dict:
    return {"generators": [list(g) for g in sub.generators]}


def read_values(group: FiniteAbelianGroup, data) -> GroupFunction:
    if not isinstance(data, list) or len(data) != group.order:
        raise InvalidInput(f"function: expected {group.order} values")
    vals = np.empty(group.order, dtype=complex)
    for i, v in enumerate(data):
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            vals[i] = v
        elif isinstance(v, list) and len(v) == 2 and all(isinstance(c, (int, float)) for c in v):
            vals[i] = complex(v[0], v[1])
        else:
            raise InvalidInput(f"function: entry {i} must be a number or an [re, im] pair")
    if not np.all(np.isfinite(vals)):
        raise InvalidInput("function: values must be finite")
    return GroupFunction(group, vals)


def write_values(f: GroupFunction | np.ndarray) -> list:
    vals = f.values if isinstance(f, GroupFunction) else np.asarray(f, dtype=complex)
    return [[float(v.real), float(v.imag)] for v in vals]


def read_system(data: dict) -> GtiSystem:
    group = read_group(_require(data, "group", "system"))
    layers = []
    for j, layer in enumerate(_require(data, "layers", "system")):
        sub = read_subgroup(group, _require(layer, "gamma", f"layer {j}"))
        gens = []
        for gen in _require(layer, "generators", f"layer {j}"):
            values = read_values(group, _require(gen, "values", f"layer {j} generator"))
            w = _rational(gen.get("weight", 1), f"layer {j} weight")
            if w <= 0:
                raise InvalidInput(f"layer {j}: weights must be positive")
            gens.append(Generator(values, w))
        layers.append(Layer(sub, gens))
    return GtiSystem(group, layers)


def write_system(sys: GtiSystem) -> dict:
    return {
        "group": write_group(sys.group),
        "layers": [
            {
                "gamma": write_subgroup(layer.translations),
                "generators": [{"values": write_values(g.values), "weight": str(g.weight)} for g in layer.generators],
            }
            for layer in sys.layers
        ],
    }


def read_gabor(data: dict) -> GaborSystem:
    group = read_group(_require(data, "group", "gabor"))
    lattice = read_subgroup(group, _require(data, "lambda", "gabor"))
    mods = read_subgroup(group.dual, _require(data, "gamma_hat", "gabor"))
    g = read_values(group, _require(data, "g", "gabor"))
    h = read_values(group, data["h"]) if "h" in data else None
    return GaborSystem(group, g, lattice, mods, h)


def write_gabor(sys: GaborSystem) -> dict:
    out = {
        "group": write_group(sys.group),
        "lambda": write_subgroup(sys.lattice),
        "gamma_hat": write_subgroup(sys.modulations),
        "g": write_values(sys.g),
    }
    if sys.h is not None:
        out["h"] = write_values(sys.h)
    return out


def read_finite_gabor(data: dict) -> tuple[np.ndarray, np.ndarray, int, int]:
    a, b = _require(data, "a", "finite gabor"), _require(data, "b", "finite gabor")
    if not isinstance(a, int) or not isinstance(b, int):
        raise InvalidInput("finite gabor: a and b must be integers")
    g = _require(data, "g", "finite gabor")
    group = make_group([len(g)] if isinstance(g, list) and g else [1])
    gv = read_values(group, g).values
    hv = read_values(group, _require(data, "h", "finite gabor")).values
    return gv, hv, a, b


def read_profile(data: dict) -> RationalStepProfile:
    return RationalStepProfile.from_dict(data)


def read_janssen(data: dict) -> tuple[RationalStepProfile, RationalStepProfile, Fraction, Fraction]:
    g = read_profile(_require(data, "g", "janssen"))
    h = read_profile(_require(data, "h", "janssen"))
    return g, h, _rational(_require(data, "a", "janssen"), "a"), _rational(_require(data, "b", "janssen"), "b")


def read_elements(group: FiniteAbelianGroup, data) -> list[tuple[int, ...]]:
    items = data.get("elements") if isinstance(data, dict) else data
    if not isinstance(items, list):
        raise InvalidInput("K: expected a list of elements")
    out = []
    for e in items:
        if not isinstance(e, list) or len(e) != group.rank:
            raise InvalidInput(f"K: element {e!r} does not match rank {group.rank}")
        out.append(group.reduce(e))
    return out
