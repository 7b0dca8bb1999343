"""GTI and Gabor system descriptors on finite groups.

A GTI system is a finite list of layers.  Each layer has a translation
subgroup ``Gamma_j`` and weighted generators ``(g_p, w_p)``; the weights
realize the measure on the generator index set.  The translation subgroup
carries its lattice-size weight ``s(Gamma_j) = w_G [G : Gamma_j]`` so that
the annihilator ``Gamma_j^perp`` carries counting measure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .groups import (
    FiniteAbelianGroup,
    GroupFunction,
    InvalidInput,
    Subgroup,
    annihilator,
    dft,
    idft,
    random_subgroup,
    subgroup_from_generators,
    trivial_subgroup,
    whole_group,
)


@dataclass(frozen=True, eq=False)
class Generator:
    values: GroupFunction
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        w = Fraction(self.weight)
        if w <= 0:
            raise InvalidInput("generator weights must be positive")
        object.__setattr__(self, "weight", w)


@dataclass(frozen=True, eq=False)
class Layer:
    translations: Subgroup
    generators: tuple[Generator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))

    @property
    def lattice_size(self) -> Fraction:
        return self.translations.haar_weight


@dataclass(frozen=True, eq=False)
class GtiSystem:
    group: FiniteAbelianGroup
    layers: tuple[Layer, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        for layer in self.layers:
            if layer.translations.parent != self.group:
                raise InvalidInput("translation subgroup lives on a different group")
            for gen in layer.generators:
                if gen.values.group.factors != self.group.factors:
                    raise InvalidInput("generator lives on a different group")

    def scaled(self, c) -> GtiSystem:
        """Multiply every generator by the scalar ``c``."""
        return self.map_generators(lambda f: f * c)

    def map_generators(self, fn) -> GtiSystem:
        layers = [
            Layer(layer.translations, [Generator(fn(gen.values), gen.weight) for gen in layer.generators])
            for layer in self.layers
        ]
        return GtiSystem(self.group, layers)

    def union(self, other: GtiSystem) -> GtiSystem:
        if other.group != self.group:
            raise InvalidInput("cannot join systems on different groups")
        return GtiSystem(self.group, self.layers + other.layers)

    def annihilators(self) -> list[Subgroup]:
        return [annihilator(self.group, layer.translations) for layer in self.layers]

    @property
    def num_generators(self) -> int:
        return sum(len(layer.generators) for layer in self.layers)


def check_compatible(sys_g: GtiSystem, sys_h: GtiSystem) -> None:
    """Two systems can be paired only if their layer structure coincides."""
    if sys_g.group != sys_h.group:
        raise InvalidInput("systems live on different groups")
    if len(sys_g.layers) != len(sys_h.layers):
        raise InvalidInput(f"layer count mismatch: {len(sys_g.layers)} vs {len(sys_h.layers)}")
    for j, (lg, lh) in enumerate(zip(sys_g.layers, sys_h.layers)):
        if lg.translations.elements != lh.translations.elements:
            raise InvalidInput(f"layer {j}: translation subgroups differ")
        if len(lg.generators) != len(lh.generators):
            raise InvalidInput(f"layer {j}: generator count mismatch")
        if any(a.weight != b.weight for a, b in zip(lg.generators, lh.generators)):
            raise InvalidInput(f"layer {j}: generator weights differ")


def translate(f: GroupFunction, a: Sequence[int]) -> GroupFunction:
    """(T_a f)(x) = f(x - a)."""
    return GroupFunction(f.group, f.group.shift(f.values, f.group.reduce(a)))


def modulate(f: GroupFunction, chi: Sequence[int]) -> GroupFunction:
    """(E_chi f)(x) = chi(x) f(x)."""
    return GroupFunction(f.group, f.group.character_values(f.group.reduce(chi)) * f.values)


# -- Gabor systems ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GaborSystem:
    """Gabor family E_gamma T_lambda g with lambda in ``lattice`` and gamma in ``modulations``.

    ``lattice`` is a subgroup of the group and ``modulations`` a subgroup of
    its dual.  Both carry their lattice-size weights, so that their
    annihilators carry counting measure.  ``h`` is the optional dual window.
    """

    group: FiniteAbelianGroup
    g: GroupFunction
    lattice: Subgroup
    modulations: Subgroup
    h: GroupFunction | None = None

    def __post_init__(self):
        if self.lattice.parent != self.group:
            raise InvalidInput("translation lattice must be a subgroup of the group")
        if self.modulations.parent != self.group.dual:
            raise InvalidInput("modulation subgroup must be a subgroup of the dual group")
        for w in (self.g, self.h):
            if w is not None and w.group.factors != self.group.factors:
                raise InvalidInput("window lives on a different group")

    def window(self, which: str = "g") -> GroupFunction:
        if which == "g":
            return self.g
        if which == "h":
            if self.h is None:
                raise InvalidInput("Gabor system has no dual window h")
            return self.h
        raise InvalidInput(f"unknown window {which!r}")

    def with_h(self, h: GroupFunction) -> GaborSystem:
        return GaborSystem(self.group, self.g, self.lattice, self.modulations, h)

    def atoms(self, which: str = "g") -> tuple[np.ndarray, float]:
        """Matrix whose columns are E_gamma T_lambda w, and the common atom weight."""
        w = self.window(which)
        cols = []
        for lam in self.lattice.elements:
            t = translate(w, lam)
            for gam in self.modulations.elements:
                cols.append(modulate(t, gam).values)
        weight = float(self.lattice.haar_weight) * float(self.modulations.haar_weight)
        return np.array(cols).T, weight


def gabor_to_ti(sys: GaborSystem, route: str = "time", which: str = "g") -> GtiSystem:
    """Rewrite a Gabor family as a unitarily equivalent TI system.

    ``route="time"`` keeps the space ``L^2(G)`` and translates along the
    lattice: generators ``E_gamma w`` weighted by the modulation weight
    (the phases ``gamma(lambda)`` are unimodular and cancel in the frame
    operator).  ``route="frequency"`` moves to ``L^2(G^)`` with the Fourier
    transform and translates along the modulation subgroup: generators
    ``F T_lambda w`` weighted by the lattice weight.
    """
    w = sys.window(which)
    if route == "time":
        gens = [Generator(modulate(w, gam), sys.modulations.haar_weight) for gam in sys.modulations.elements]
        return GtiSystem(sys.group, [Layer(sys.lattice, gens)])
    if route == "frequency":
        gens = [Generator(dft(translate(w, lam)), sys.lattice.haar_weight) for lam in sys.lattice.elements]
        return GtiSystem(sys.group.dual, [Layer(sys.modulations, gens)])
    raise InvalidInput(f"unknown route {route!r}; expected 'time' or 'frequency'")


def pull_back(f: GroupFunction, route: str) -> GroupFunction:
    """Map a function on the space of a ``gabor_to_ti`` image back to ``L^2(G)``."""
    return f if route == "time" else idft(f)


# -- stock systems ----------------------------------------------------------


def standard_basis_system(group: FiniteAbelianGroup) -> GtiSystem:
    """The orthonormal basis {delta_x / sqrt(w_G)} as a TI system along G.

    With the lattice-size weight ``s(G) = w_G`` its frame operator is
    ``w_G I``; for the default ``w_G = 1`` it is an orthonormal basis and a
    Parseval frame.
    """
    e0 = np.zeros(group.order, dtype=complex)
    e0[0] = 1 / np.sqrt(float(group.weight))
    return GtiSystem(group, [Layer(whole_group(group), [Generator(GroupFunction(group, e0))])])


def fourier_parseval_system(group: FiniteAbelianGroup) -> GtiSystem:
    """All characters, no translations, scaled to a Parseval frame."""
    c = 1 / (float(group.weight) * group.order)
    gens = [Generator(GroupFunction(group, group.character_values(k) * c)) for k in group.dual.elements()]
    return GtiSystem(group, [Layer(trivial_subgroup(group), gens)])


def tiling_system(N: int, j_max: int, complete: bool = False) -> GtiSystem:
    """Finite analogue of the N-adic tiling family on Z_{N^j_max}.

    Layer j (1 <= j <= j_max) translates along N^j Z and has N^j generators
    whose transforms are sqrt((N-1) N^-j) times the indicator of the p-th
    block of N^(j_max - j) consecutive frequencies.  Every layer is a tight
    frame with bound (N-1) N^-j, so the union is tight with bound 1 - N^-j_max.
    ``complete=True`` appends one more copy of the finest tiling with gain
    N^-j_max, which turns the union into a Parseval frame.
    """
    if N < 2 or j_max < 1:
        raise InvalidInput("need N >= 2 and j_max >= 1")
    L = N**j_max
    group = FiniteAbelianGroup((L,))
    layers = []
    gains = [(j, (N - 1) / N**j) for j in range(1, j_max + 1)]
    if complete:
        gains.append((j_max, 1 / L))
    for j, gain in gains:
        block = L // N**j
        amp = np.sqrt(gain)
        gens = []
        for p in range(N**j):
            fhat = np.zeros(L, dtype=complex)
            fhat[p * block : (p + 1) * block] = amp
            gens.append(Generator(idft(GroupFunction(group.dual, fhat))))
        layers.append(Layer(subgroup_from_generators(group, [(N**j % L,)]), gens))
    return GtiSystem(group, layers)


def random_system(
    group: FiniteAbelianGroup,
    rng: np.random.Generator,
    max_layers: int = 3,
    max_generators: int = 4,
    translations: Sequence[Subgroup] | None = None,
) -> GtiSystem:
    """Random complex generators on random translation subgroups."""
    n_layers = int(rng.integers(1, max_layers + 1)) if translations is None else len(translations)
    layers = []
    for j in range(n_layers):
        sub = random_subgroup(group, rng) if translations is None else translations[j]
        k = int(rng.integers(1, max_generators + 1))
        gens = [
            Generator(
                GroupFunction(group, rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)),
                Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 5))),
            )
            for _ in range(k)
        ]
        layers.append(Layer(sub, gens))
    return GtiSystem(group, layers)


def painless_system(
    group: FiniteAbelianGroup, rng: np.random.Generator, max_layers: int = 3, max_generators: int = 4
) -> GtiSystem:
    """Random system whose transforms never overlap their Gamma_j^perp shifts.

    Each generator's transform is supported on a transversal of
    ``G^ / Gamma_j^perp``, so every t_alpha with alpha != 1 vanishes and the
    frame operator is the Fourier multiplier by the Calderon sum.  A final
    layer translating along the whole group makes that sum positive.
    """
    dual = group.dual
    layers = []
    n_layers = int(rng.integers(1, max_layers + 1))
    for j in range(n_layers):
        last = j == n_layers - 1
        sub = whole_group(group) if last else random_subgroup(group, rng)
        perp = annihilator(group, sub)
        # a transversal: first element of each coset in canonical order
        reps = [dual.index_of(r) for r in perp.cosets()]
        k = int(rng.integers(1, max_generators + 1))
        gens = []
        for _ in range(k):
            fhat = np.zeros(dual.order, dtype=complex)
            if last:
                support = np.arange(dual.order)
            else:
                support = rng.choice(reps, size=int(rng.integers(1, len(reps) + 1)), replace=False)
            fhat[support] = rng.standard_normal(len(support)) + 1j * rng.standard_normal(len(support))
            gens.append(Generator(idft(GroupFunction(dual, fhat)), Fraction(int(rng.integers(1, 4)))))
        layers.append(Layer(sub, gens))
    return GtiSystem(group, layers)


def multiplier(sys: GtiSystem, symbol: np.ndarray) -> GtiSystem:
    """Apply the Fourier multiplier with the given symbol to every generator."""
    return sys.map_generators(lambda f: idft(GroupFunction(f.group.dual, dft(f).values * symbol)))

