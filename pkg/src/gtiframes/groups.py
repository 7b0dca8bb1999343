"""Finite abelian groups, their duals, subgroups and the Fourier transform.

A group is stored by its invariant factors ``d_1 | d_2 | ... | d_k`` and a
point weight ``w_G`` (the Haar measure of a single element).  Characters are
identified with coordinate tuples ``k`` acting by

    omega_k(x) = exp(2 pi i * sum_i k_i x_i / d_i),

and the dual group carries the point weight ``1 / (w_G |G|)`` so that the
Plancherel theorem holds exactly.  Multiplication in the dual group is
coordinate addition; the identity character is the all-zero tuple.

Elements are plain integer tuples.  Functions are dense complex vectors over
the canonical (row-major) element order.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, prod
from typing import Iterable, Sequence

import numpy as np

Element = tuple[int, ...]


class InvalidInput(ValueError):
    """Raised when a descriptor or argument violates an operation's contract."""


def unit_root(numerator: int, denominator: int) -> complex:
    """Return exp(2 pi i * numerator / denominator) with the phase reduced exactly.

    Quarter turns are returned as exact complex constants so that phase
    cancellations survive without rounding noise.
    """
    frac = Fraction(numerator, denominator) % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if frac in exact:
        return exact[frac]
    return cmath.exp(2j * cmath.pi * float(frac))


# -- Smith normal form ------------------------------------------------------


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Returns the nonzero invariant factors ``d_1 | d_2 | ...`` (all positive).
    Zero diagonal entries are dropped; callers that need the free rank can
    compare the length with the number of columns.
    """
    a = [list(map(int, row)) for row in matrix]
    if not a or not a[0]:
        return []
    rows, cols = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t] != 0:
                    a[t], a[i] = a[i], a[t]
                    done = False
                    break
            if not done:
                continue
            p = a[t][t]
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j] != 0:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    done = False
                    break
        diag.append(abs(a[t][t]))
        t += 1
    # a final gcd/lcm pass guarantees the chain even for degenerate inputs
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    return diag


def invariant_factors(orders: Iterable[int]) -> list[int]:
    """Invariant factors of the product of cyclic groups of the given orders."""
    orders = [int(d) for d in orders]
    n = len(orders)
    diag = smith_diagonal([[orders[i] if i == j else 0 for j in range(n)] for i in range(n)])
    chain = [d for d in diag if d != 1]
    return chain or [1]


def _is_chain(factors: Sequence[int]) -> bool:
    return all(factors[i + 1] % factors[i] == 0 for i in range(len(factors) - 1))


# -- groups -----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """The group Z_{d_1} x ... x Z_{d_k} with Haar point weight ``weight``."""

    factors: tuple[int, ...]
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        object.__setattr__(self, "weight", Fraction(self.weight))
        if not self.factors:
            raise InvalidInput("a group needs at least one invariant factor")
        if any(int(d) < 1 for d in self.factors):
            raise InvalidInput(f"invariant factors must be positive, got {list(self.factors)}")
        if not _is_chain(self.factors):
            raise InvalidInput(f"factors {list(self.factors)} do not form a divisibility chain")
        if self.weight <= 0:
            raise InvalidInput("Haar weight must be positive")

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1]

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def dual(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.factors, 1 / (self.weight * self.order))

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    @cached_property
    def coords(self) -> np.ndarray:
        """(order, rank) integer array of all elements in canonical order."""
        grids = np.indices(self.shape).reshape(self.rank, -1)
        return grids.T.astype(np.int64)

    def elements(self) -> list[Element]:
        return [tuple(int(c) for c in row) for row in self.coords]

    def reduce(self, coords: Sequence[int]) -> Element:
        if len(coords) != self.rank:
            raise InvalidInput(f"element {tuple(coords)} has wrong rank for factors {self.factors}")
        return tuple(int(c) % d for c, d in zip(coords, self.factors))

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == self.rank and all(0 <= int(c) < d for c, d in zip(x, self.factors))

    def index_of(self, x: Sequence[int]) -> int:
        return int(np.ravel_multi_index(self.reduce(x), self.shape))

    def element_at(self, index: int) -> Element:
        return tuple(int(c) for c in np.unravel_index(index, self.shape))

    def add(self, x: Element, y: Element) -> Element:
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x: Element) -> Element:
        return self.reduce([-a for a in x])

    def sub(self, x: Element, y: Element) -> Element:
        return self.reduce([a - b for a, b in zip(x, y)])

    def _phase_numerators(self, omegas: np.ndarray, xs: np.ndarray) -> np.ndarray:
        scale = np.array([self.exponent // d for d in self.factors], dtype=np.int64)
        return (omegas * scale) @ xs.T % self.exponent

    def pairing(self, omega: Element, x: Element) -> complex:
        """omega(x) for a character omega of this group and x in this group."""
        n = int(self._phase_numerators(np.array([omega]), np.array([x]))[0, 0])
        return unit_root(n, self.exponent)

    def character_values(self, omega: Element) -> np.ndarray:
        """The vector (omega(x))_x in canonical order."""
        n = self._phase_numerators(np.array([omega]), self.coords)[0]
        return _roots(n, self.exponent)

    def character_table(self) -> np.ndarray:
        """Dense matrix chi[omega, x] = omega(x); only sensible for small groups."""
        return _roots(self._phase_numerators(self.coords, self.coords), self.exponent)

    def shift(self, values: np.ndarray, a: Element) -> np.ndarray:
        """Return v with v[x] = values[x - a] (translation by a)."""
        return np.roll(np.asarray(values).reshape(self.shape), tuple(a), axis=tuple(range(self.rank))).ravel()


def _roots(numerators: np.ndarray, exponent: int) -> np.ndarray:
    out = np.exp(2j * np.pi * numerators / exponent)
    # snap quarter turns to exact values
    q = (4 * numerators) % exponent == 0
    if np.any(q):
        k = (4 * numerators[q] // exponent) % 4
        out[q] = np.array([1, 1j, -1, -1j])[k]
    return out


def make_group(invariant_factors_: Sequence[int], haar_weight=1) -> FiniteAbelianGroup:
    """Build a group, normalizing a non-chain factor list to invariant factors."""
    factors = [int(d) for d in invariant_factors_]
    if not factors:
        factors = [1]
    if any(d < 1 for d in factors):
        raise InvalidInput(f"invariant factors must be positive, got {factors}")
    if not _is_chain(factors):
        factors = invariant_factors(factors)
    return FiniteAbelianGroup(tuple(factors), Fraction(haar_weight))


def group_from_relations(relations: Sequence[Sequence[int]], weight=1) -> FiniteAbelianGroup:
    """The quotient Z^n / (row span of ``relations``), which must be finite."""
    if not relations:
        raise InvalidInput("no relations: quotient would be infinite")
    n = len(relations[0])
    diag = smith_diagonal(relations)
    if len(diag) < n or any(d == 0 for d in diag):
        raise InvalidInput("relations do not have full rank: quotient is infinite")
    return make_group([d for d in diag if d != 1] or [1], weight)


# -- subgroups --------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A subgroup with its full element list.

    ``haar_weight`` defaults to the lattice-size rule ``w_G [G : H]``, which
    is the weight forced on ``H`` when its annihilator carries counting
    measure.
    """

    parent: FiniteAbelianGroup
    generators: tuple[Element, ...] = field(compare=False)
    elements: tuple[Element, ...]
    haar_weight: Fraction = field(default=None, compare=False)

    def __post_init__(self):
        if self.haar_weight is None:
            object.__setattr__(self, "haar_weight", self.parent.weight * self.parent.order / len(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def indices(self) -> np.ndarray:
        return np.array([self.parent.index_of(x) for x in self.elements], dtype=np.int64)

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, x) -> bool:
        return tuple(x) in self._members

    def cosets(self) -> list[Element]:
        """One representative per coset, in canonical order of the parent."""
        seen = np.zeros(self.parent.order, dtype=bool)
        reps = []
        for i in range(self.parent.order):
            if seen[i]:
                continue
            x = self.parent.element_at(i)
            reps.append(x)
            for h in self.elements:
                seen[self.parent.index_of(self.parent.add(x, h))] = True
        return reps


def subgroup_from_generators(group: FiniteAbelianGroup, gens: Iterable[Sequence[int]], haar_weight=None) -> Subgroup:
    gens = tuple(tuple(int(c) for c in g) for g in gens)
    for g in gens:
        if not group.contains(g):
            raise InvalidInput(f"generator {g} is not an element of the group with factors {group.factors}")
    found = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.add(x, g)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    elements = tuple(sorted(found))
    return Subgroup(group, gens, elements, None if haar_weight is None else Fraction(haar_weight))


def whole_group(group: FiniteAbelianGroup) -> Subgroup:
    gens = [group.reduce([1 if i == k else 0 for i in range(group.rank)]) for k in range(group.rank)]
    return subgroup_from_generators(group, gens)


def trivial_subgroup(group: FiniteAbelianGroup) -> Subgroup:
    return subgroup_from_generators(group, [])


def annihilator(group: FiniteAbelianGroup, subgroup: Subgroup) -> Subgroup:
    """Characters of ``group`` that are 1 on ``subgroup``, with counting measure.

    The result is a subgroup of ``group.dual``.
    """
    if subgroup.parent != group:
        raise InvalidInput("subgroup does not belong to this group")
    gens = np.array(subgroup.generators or [group.identity], dtype=np.int64)
    dual = group.dual
    ok = np.all(group._phase_numerators(dual.coords, gens) == 0, axis=1)
    elements = tuple(tuple(int(c) for c in row) for row in dual.coords[ok])
    # generators: the full element list is always a generating set; keep a small one
    return Subgroup(dual, _small_generating_set(dual, elements), elements, Fraction(1))


def _small_generating_set(group: FiniteAbelianGroup, elements: Sequence[Element]) -> tuple[Element, ...]:
    gens: list[Element] = []
    span = {group.identity}
    for x in elements:
        if x in span:
            continue
        gens.append(x)
        span = set(subgroup_from_generators(group, gens).elements)
        if len(span) == len(elements):
            break
    return tuple(gens)


def random_subgroup(group: FiniteAbelianGroup, rng: np.random.Generator, max_gens: int = 2) -> Subgroup:
    k = int(rng.integers(0, max_gens + 1))
    gens = [group.element_at(int(rng.integers(group.order))) for _ in range(k)]
    return subgroup_from_generators(group, gens)


# -- functions and the Fourier transform -------------------------------------


@dataclass(frozen=True, eq=False)
class GroupFunction:
    """A complex function on ``group`` stored densely in canonical order."""

    group: FiniteAbelianGroup
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).ravel()
        if v.shape != (self.group.order,):
            raise InvalidInput(f"expected {self.group.order} values, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise InvalidInput("function values must be finite")
        object.__setattr__(self, "values", v)

    def __call__(self, x: Sequence[int]) -> complex:
        return complex(self.values[self.group.index_of(x)])

    def __add__(self, other: GroupFunction) -> GroupFunction:
        return GroupFunction(self.group, self.values + other.values)

    def __sub__(self, other: GroupFunction) -> GroupFunction:
        return GroupFunction(self.group, self.values - other.values)

    def __mul__(self, c) -> GroupFunction:
        return GroupFunction(self.group, self.values * complex(c))

    __rmul__ = __mul__

    def conj(self) -> GroupFunction:
        return GroupFunction(self.group, self.values.conj())

    def norm_sq(self) -> float:
        return float(self.group.weight) * float(np.vdot(self.values, self.values).real)

    def norm(self) -> float:
        return self.norm_sq() ** 0.5


def inner(f: GroupFunction, g: GroupFunction) -> complex:
    """<f, g> = w_G sum_x f(x) conj(g(x))."""
    return complex(float(f.group.weight) * np.vdot(g.values, f.values))


def delta(group: FiniteAbelianGroup, x: Sequence[int] | None = None) -> GroupFunction:
    v = np.zeros(group.order, dtype=complex)
    v[group.index_of(x if x is not None else group.identity)] = 1.0
    return GroupFunction(group, v)


def constant(group: FiniteAbelianGroup, c=1.0) -> GroupFunction:
    return GroupFunction(group, np.full(group.order, complex(c)))


def random_function(group: FiniteAbelianGroup, rng: np.random.Generator) -> GroupFunction:
    return GroupFunction(group, rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order))


def dft(f: GroupFunction) -> GroupFunction:
    """f^(omega) = w_G sum_x f(x) conj(omega(x)), as a function on the dual."""
    g = f.group
    out = np.fft.fftn(f.values.reshape(g.shape)).ravel() * float(g.weight)
    return GroupFunction(g.dual, out)


def idft(fhat: GroupFunction) -> GroupFunction:
    """Inverse transform: f(x) = w_dual sum_omega f^(omega) omega(x)."""
    d = fhat.group
    out = np.fft.ifftn(fhat.values.reshape(d.shape)).ravel() * (d.order * float(d.weight))
    return GroupFunction(d.dual, out)


def weil_check(group: FiniteAbelianGroup, subgroup: Subgroup, f: GroupFunction) -> float:
    """|int_G f - int_{G/H} int_H f(x + h)| with the canonical weights.

    ``H`` carries its lattice-size weight ``w_G [G:H]`` and ``G/H`` the
    weight dual to counting measure on ``H^perp``, i.e. ``|H| / |G|``.
    """
    lhs = float(group.weight) * f.values.sum()
    w_quot = subgroup.order / group.order
    w_h = float(subgroup.haar_weight)
    values = f.values.reshape(group.shape)
    rhs = 0j
    for rep in subgroup.cosets():
        fiber = sum(values[group.add(rep, h)] for h in subgroup.elements)
        rhs += w_quot * w_h * fiber
    return abs(lhs - rhs)


def weil_check_dual(group: FiniteAbelianGroup, subgroup: Subgroup, f: GroupFunction) -> float:
    """The dual-side Weil identity over ``H^perp`` (counting) and ``G^/H^perp``."""
    fhat = dft(f)
    perp = annihilator(group, subgroup)
    dual = group.dual
    lhs = float(dual.weight) * fhat.values.sum()
    # G^/H^perp is dual to H with its lattice-size weight, giving w_dual again
    w_quot = float(dual.weight)
    vals = fhat.values.reshape(dual.shape)
    rhs = 0j
    for rep in perp.cosets():
        rhs += w_quot * sum(vals[dual.add(rep, a)] for a in perp.elements)
    return abs(lhs - rhs)


def iter_subgroups(group: FiniteAbelianGroup, max_gens: int = 2) -> list[Subgroup]:
    """All subgroups generated by at most ``max_gens`` elements (deduplicated)."""
    seen = {}
    for k in range(max_gens + 1):
        for gens in itertools.combinations(group.elements(), k):
            h = subgroup_from_generators(group, gens)
            seen.setdefault(h.elements, h)
    return list(seen.values())
