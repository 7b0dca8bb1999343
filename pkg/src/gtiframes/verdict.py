"""Verdict records and deterministic JSON serialization."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

DEFAULT_TOL = 1e-10
IDENTITY_TOL = 1e-12


@dataclass(frozen=True)
class Verdict:
    condition: str
    passed: bool
    max_residual: float
    tolerance: float
    details: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @classmethod
    def from_residual(cls, condition: str, residual: float, tol: float, details=None, provenance=None) -> Verdict:
        residual = float(residual)
        return cls(condition, bool(residual <= tol), residual, float(tol), details or {}, provenance or {})

    def to_dict(self) -> dict:
        out = {
            "condition": self.condition,
            "pass": self.passed,
            "residual": self.max_residual,
            "tol": self.tolerance,
        }
        if self.details:
            out["details"] = self.details
        if self.provenance:
            out["provenance"] = self.provenance
        return out


def to_jsonable(obj: Any) -> Any:
    """Convert numpy/Fraction/complex containers to plain JSON values.

    Fractions become "p/q" strings so exact values survive a round trip;
    complex numbers become [re, im] pairs.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj.numerator)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return obj


def _format(obj: Any) -> str:
    # fixed key order (as inserted); floats use the shortest round-trip repr
    if isinstance(obj, dict):
        return "{" + ",".join(json.dumps(k) + ":" + _format(v) for k, v in obj.items()) + "}"
    if isinstance(obj, list):
        return "[" + ",".join(_format(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return json.dumps(str(obj))
        return repr(obj)
    return json.dumps(obj)


def dumps(obj: Any) -> str:
    """Deterministic JSON text for reports."""
    return _format(to_jsonable(obj))


def digest(obj: Any) -> str:
    """Stable sha256 of the canonical serialization of ``obj``."""
    return hashlib.sha256(dumps(obj).encode()).hexdigest()
