"""Piecewise-constant functions with exact rational breakpoints.

Pieces are half-open intervals ``[lo, hi)``; everything is meant almost
everywhere, so the endpoint convention never changes an integral or a
verdict.  Values may be Fractions (kept exact), Gaussian rationals written
as ``complex`` only when unavoidable, or floats.  A profile can carry a
``gain_sq`` tag meaning "every value is further multiplied by
sqrt(gain_sq)"; products of two profiles with the same tag are then exact
rationals, which is how amplitudes like ((N-1) N^-j)^(1/2) stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Iterable, Sequence

from ..groups import InvalidInput

DOMAINS = ("torus", "real")


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12) if x != int(x) else Fraction(int(x))
    raise InvalidInput(f"cannot read {x!r} as a rational number")


def _clean(v):
    """Normalize a piece value: complex with zero imaginary part becomes real."""
    if isinstance(v, complex) and v.imag == 0:
        return v.real
    return v


def conj(v):
    return v.conjugate() if isinstance(v, complex) else v


def is_zero(v) -> bool:
    return v == 0


@dataclass(frozen=True)
class Piece:
    lo: Fraction
    hi: Fraction
    value: Number


@dataclass(frozen=True)
class RationalStepProfile:
    domain: str
    pieces: tuple[Piece, ...]
    gain_sq: Fraction | None = None

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise InvalidInput(f"unknown domain {self.domain!r}")
        pieces = []
        for p in self.pieces:
            if not isinstance(p, Piece):
                p = Piece(*p)
            lo, hi = as_fraction(p.lo), as_fraction(p.hi)
            if not lo < hi:
                raise InvalidInput(f"empty or reversed piece [{lo}, {hi})")
            if self.domain == "torus" and (lo < 0 or hi > 1):
                raise InvalidInput("torus pieces must lie in [0, 1)")
            pieces.append(Piece(lo, hi, _clean(p.value)))
        pieces.sort(key=lambda p: p.lo)
        for a, b in zip(pieces, pieces[1:]):
            if b.lo < a.hi:
                raise InvalidInput(f"overlapping pieces at {b.lo}")
        object.__setattr__(self, "pieces", tuple(pieces))
        if self.gain_sq is not None:
            g = as_fraction(self.gain_sq)
            if g <= 0:
                raise InvalidInput("gain_sq must be positive")
            object.__setattr__(self, "gain_sq", g)

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, domain: str = "torus") -> RationalStepProfile:
        return cls(domain, ())

    @classmethod
    def indicator(cls, intervals: Iterable[tuple], value=1, domain: str = "real", gain_sq=None) -> RationalStepProfile:
        return cls(domain, tuple(Piece(as_fraction(lo), as_fraction(hi), value) for lo, hi in intervals), gain_sq)

    # -- evaluation ---------------------------------------------------------

    @property
    def gain(self) -> float:
        return 1.0 if self.gain_sq is None else math.sqrt(self.gain_sq)

    def raw(self, x) -> Number:
        """Piece value at x without the gain factor."""
        x = as_fraction(x) if not isinstance(x, Fraction) else x
        if self.domain == "torus":
            x = x - math.floor(x)
        for p in self.pieces:
            if p.lo <= x < p.hi:
                return p.value
        return 0

    def __call__(self, x) -> Number:
        v = self.raw(x)
        return v if self.gain_sq is None else v * self.gain

    def breakpoints(self) -> list[Fraction]:
        pts = set()
        for p in self.pieces:
            pts.update((p.lo, p.hi))
        return sorted(pts)

    @property
    def support(self) -> tuple[Fraction, Fraction] | None:
        nz = [p for p in self.pieces if not is_zero(p.value)]
        if not nz:
            return None
        return nz[0].lo, nz[-1].hi

    def is_zero(self) -> bool:
        return self.support is None

    # -- algebra ------------------------------------------------------------

    def conj(self) -> RationalStepProfile:
        return RationalStepProfile(self.domain, tuple(Piece(p.lo, p.hi, conj(p.value)) for p in self.pieces), self.gain_sq)

    def scale(self, c) -> RationalStepProfile:
        return RationalStepProfile(self.domain, tuple(Piece(p.lo, p.hi, c * p.value) for p in self.pieces), self.gain_sq)

    def shift(self, t) -> RationalStepProfile:
        """q(x) = p(x + t); wraps around on the torus."""
        t = as_fraction(t)
        if self.domain == "real":
            return RationalStepProfile("real", tuple(Piece(p.lo - t, p.hi - t, p.value) for p in self.pieces), self.gain_sq)
        t = t - math.floor(t)
        out = []
        for p in self.pieces:
            lo, hi = p.lo - t, p.hi - t
            for k in (0, 1):
                a, b = max(lo + k, Fraction(0)), min(hi + k, Fraction(1))
                if a < b:
                    out.append(Piece(a, b, p.value))
        return RationalStepProfile("torus", tuple(out), self.gain_sq)

    def dilate(self, c) -> RationalStepProfile:
        """q(x) = p(c x) on the real line, c a nonzero rational."""
        if self.domain != "real":
            raise InvalidInput("dilation is only defined for profiles on the real line")
        c = as_fraction(c)
        if c == 0:
            raise InvalidInput("dilation factor must be nonzero")
        out = []
        for p in self.pieces:
            a, b = p.lo / c, p.hi / c
            out.append(Piece(min(a, b), max(a, b), p.value))
        return RationalStepProfile("real", tuple(out), self.gain_sq)

    def refine(self, points: Iterable) -> RationalStepProfile:
        """Split pieces at extra points (the function does not change)."""
        cuts = sorted({as_fraction(x) for x in points})
        out = []
        for p in self.pieces:
            inner = [c for c in cuts if p.lo < c < p.hi]
            edges = [p.lo, *inner, p.hi]
            out.extend(Piece(a, b, p.value) for a, b in zip(edges, edges[1:]))
        return RationalStepProfile(self.domain, tuple(out), self.gain_sq)

    def simplified(self) -> RationalStepProfile:
        """Canonical form: zero pieces dropped, equal neighbours merged."""
        out: list[Piece] = []
        for p in self.pieces:
            if is_zero(p.value):
                continue
            if out and out[-1].hi == p.lo and out[-1].value == p.value:
                out[-1] = Piece(out[-1].lo, p.hi, p.value)
            else:
                out.append(p)
        return RationalStepProfile(self.domain, tuple(out), self.gain_sq)

    def restrict(self, intervals: Sequence[tuple]) -> RationalStepProfile:
        out = []
        for lo, hi in intervals:
            lo, hi = as_fraction(lo), as_fraction(hi)
            for p in self.pieces:
                a, b = max(lo, p.lo), min(hi, p.hi)
                if a < b:
                    out.append(Piece(a, b, p.value))
        return RationalStepProfile(self.domain, tuple(out), self.gain_sq)

    def integral_abs_sq(self):
        """Integral of |p|^2, exact when values are rational and the gain is tagged."""
        total = sum(((p.hi - p.lo) * abs_sq(p.value) for p in self.pieces), Fraction(0))
        return total if self.gain_sq is None else total * self.gain_sq

    def to_dict(self) -> dict:
        out = {"domain": self.domain, "pieces": [_piece_dict(p) for p in self.pieces]}
        if self.gain_sq is not None:
            out["gain_sq"] = str(self.gain_sq)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> RationalStepProfile:
        try:
            pieces = []
            for p in data["pieces"]:
                re, im = _read_num(p.get("re", 0)), _read_num(p.get("im", 0))
                pieces.append(Piece(as_fraction(p["lo"]), as_fraction(p["hi"]), re if im == 0 else complex(re, im)))
            return cls(data.get("domain", "real"), tuple(pieces), data.get("gain_sq"))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"malformed profile: {exc}") from exc


def _read_num(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (int, float)):
        return v
    raise InvalidInput(f"bad numeric value {v!r}")


def _num_json(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return v


def _piece_dict(p: Piece) -> dict:
    v = p.value
    re, im = (v.real, v.imag) if isinstance(v, complex) else (v, 0)
    return {"lo": str(p.lo), "hi": str(p.hi), "re": _num_json(re), "im": _num_json(im)}


def abs_sq(v):
    if isinstance(v, complex):
        return v.real**2 + v.imag**2
    return v * v


def abs_value(v):
    """|v|, exact for rationals."""
    return abs(v)


def product_factor(a: RationalStepProfile, b: RationalStepProfile):
    """Scalar that the gains of a and b contribute to a pointwise product.

    Equal tags give the exact rational ``gain_sq``.
    """
    if a.gain_sq is None and b.gain_sq is None:
        return 1
    if a.gain_sq == b.gain_sq:
        return a.gain_sq
    return a.gain * b.gain


def common_cells(profiles: Sequence[RationalStepProfile], domain: str) -> list[tuple[Fraction, Fraction]]:
    """Cells of the common refinement of all breakpoints."""
    pts = set()
    for p in profiles:
        pts.update(p.breakpoints())
    if domain == "torus":
        pts.update((Fraction(0), Fraction(1)))
    pts = sorted(pts)
    return list(zip(pts, pts[1:]))


def conj_product(a: RationalStepProfile, b: RationalStepProfile) -> RationalStepProfile:
    """Pointwise conj(a) * b, exact under equal gain tags."""
    if a.domain != b.domain:
        raise InvalidInput("cannot multiply profiles on different domains")
    factor = product_factor(a, b)
    out = []
    for lo, hi in common_cells([a, b], a.domain):
        mid = (lo + hi) / 2
        v = conj(a.raw(mid)) * b.raw(mid)
        if not is_zero(v):
            out.append(Piece(lo, hi, v * factor))
    return RationalStepProfile(a.domain, tuple(out)).simplified()


def add_profiles(profiles: Sequence[RationalStepProfile], domain: str = "torus") -> RationalStepProfile:
    """Pointwise sum of untagged profiles."""
    if any(p.gain_sq is not None for p in profiles):
        raise InvalidInput("fold gain tags into the values before adding profiles")
    if any(p.domain != domain for p in profiles):
        raise InvalidInput("cannot add profiles on different domains")
    out = []
    for lo, hi in common_cells(profiles, domain):
        mid = (lo + hi) / 2
        v = sum((p.raw(mid) for p in profiles), 0)
        if not is_zero(v):
            out.append(Piece(lo, hi, _clean(v)))
    return RationalStepProfile(domain, tuple(out)).simplified()


@dataclass(frozen=True)
class TailBound:
    """A truncated series: partial value, truncation index, and a bound on the rest."""

    partial: Number
    j_max: int
    tail_bound: Number

    def to_dict(self) -> dict:
        return {"partial": self.partial, "j_max": self.j_max, "tail_bound": self.tail_bound}
