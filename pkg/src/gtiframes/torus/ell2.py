"""Exact t_alpha computations for GTI systems on the integers.

Layer j translates along ``M_j Z`` (``M_j = N^j`` in the stock examples), so
its annihilator is ``{m / M_j : 0 <= m < M_j}`` on the torus [0, 1).
Generators are given through their transforms as step profiles on the
torus.  Everything is exact rational arithmetic as long as the profiles
have rational values (or share a gain tag).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..groups import FiniteAbelianGroup, GroupFunction, InvalidInput, subgroup_from_generators
from ..systems import Generator, GtiSystem, Layer
from .profiles import (
    Piece,
    RationalStepProfile,
    TailBound,
    abs_value,
    add_profiles,
    as_fraction,
    common_cells,
    conj_product,
    product_factor,
)

EXPAND_LIMIT = 4096


def _mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True)
class TorusLayer:
    """Translations along ``step * Z``; generators are (g^, h^, weight) triples."""

    step: int
    generators: tuple = ()

    def __post_init__(self):
        if self.step < 1:
            raise InvalidInput("translation step must be a positive integer")
        gens = []
        for item in self.generators:
            g, h, w = item if len(item) == 3 else (*item, 1)
            h = g if h is None else h
            if g.domain != "torus" or h.domain != "torus":
                raise InvalidInput("generator profiles must live on the torus")
            gens.append((g, h, as_fraction(w)))
        object.__setattr__(self, "generators", tuple(gens))

    def contains(self, alpha: Fraction) -> bool:
        return (alpha * self.step).denominator == 1

    def annihilator(self) -> list[Fraction]:
        return [Fraction(m, self.step) for m in range(self.step)]

    def talpha_part(self, alpha: Fraction) -> RationalStepProfile:
        parts = [conj_product(g, h.shift(alpha)).scale(w) for g, h, w in self.generators]
        return add_profiles(parts, "torus")


@dataclass(frozen=True)
class PartitionLayer:
    """N^j generators whose transforms are sqrt(gain_sq) times the tiles [p N^-j, (p+1) N^-j).

    Shifts by nonzero elements of the annihilator move every tile off
    itself, so only alpha = 0 contributes, with the constant gain_sq.
    """

    N: int
    j: int
    gain_sq: Fraction

    @property
    def step(self) -> int:
        return self.N**self.j

    def contains(self, alpha: Fraction) -> bool:
        return (alpha * self.step).denominator == 1

    def talpha_part(self, alpha: Fraction) -> RationalStepProfile:
        if alpha == 0:
            return RationalStepProfile("torus", (Piece(Fraction(0), Fraction(1), self.gain_sq),))
        return RationalStepProfile.zero("torus")

    def expand(self) -> TorusLayer:
        """The same layer with every tile listed (small N^j only)."""
        M = self.step
        if M > EXPAND_LIMIT:
            raise InvalidInput(f"layer with {M} generators is too large to expand")
        gens = []
        for p in range(M):
            tile = RationalStepProfile("torus", (Piece(Fraction(p, M), Fraction(p + 1, M), 1),), self.gain_sq)
            gens.append((tile, tile, 1))
        return TorusLayer(M, tuple(gens))


def ex_0402e_layers(N: int, j_max: int) -> list[PartitionLayer]:
    """Layers j = 1..j_max of the tiling family: gain (N-1) N^-j per tile."""
    if N < 2:
        raise InvalidInput("N must be at least 2")
    if j_max < 0:
        raise InvalidInput("j_max must be nonnegative")
    return [PartitionLayer(N, j, Fraction(N - 1, N**j)) for j in range(1, j_max + 1)]


def talpha_torus(layers: Sequence, alpha) -> RationalStepProfile:
    """t_alpha on the torus, summed over the layers whose annihilator contains alpha."""
    alpha = _mod1(as_fraction(alpha))
    if not layers:
        return RationalStepProfile.zero("torus")
    active = [layer for layer in layers if layer.contains(alpha)]
    if not active:
        raise InvalidInput(f"alpha={alpha} lies in no annihilator of the given layers")
    return add_profiles([layer.talpha_part(alpha) for layer in active], "torus")


def profile_extremes(p: RationalStepProfile) -> tuple:
    """(min, max) of a real torus profile, counting uncovered gaps as 0."""
    vals = [piece.value for piece in p.pieces]
    covered = sum((piece.hi - piece.lo for piece in p.pieces), Fraction(0))
    if covered < 1:
        vals.append(Fraction(0))
    return min(vals), max(vals)


# -- conditions -------------------------------------------------------------


def _generator_norm_sq(g: RationalStepProfile):
    # Plancherel on Z / T: ||g||^2 = integral of |g^|^2 over [0, 1)
    return g.integral_abs_sq()


def lic_terms_torus(layers: Sequence) -> list:
    """Per-layer terms sum_p w_p |Gamma_j^perp| ||g_p||^2."""
    terms = []
    for layer in layers:
        if isinstance(layer, PartitionLayer):
            # N^j tiles of length N^-j: sum_p ||g_p||^2 = gain_sq, times |Gamma^perp| = N^j
            terms.append(layer.gain_sq * layer.step)
        else:
            terms.append(sum((w * layer.step * _generator_norm_sq(g) for g, _, w in layer.generators), Fraction(0)))
    return terms


def _overlap_measure_abs(g: RationalStepProfile, h: RationalStepProfile, K: Sequence[tuple]) -> Fraction:
    """Integral over K of |g(omega)| |h(omega)|."""
    factor = product_factor(g, h)
    total = 0
    k_prof = RationalStepProfile("torus", tuple(Piece(as_fraction(a), as_fraction(b), 1) for a, b in K))
    for lo, hi in common_cells([g, h, k_prof], "torus"):
        mid = (lo + hi) / 2
        if k_prof.raw(mid) == 0:
            continue
        total += (hi - lo) * abs_value(g.raw(mid)) * abs_value(h.raw(mid))
    return total * factor


def _k_both(K: Sequence[tuple], alpha: Fraction) -> list[tuple]:
    """K intersected with K - alpha, as torus intervals."""
    kp = RationalStepProfile("torus", tuple(Piece(as_fraction(a), as_fraction(b), 1) for a, b in K))
    both = conj_product(kp, kp.shift(alpha))
    return [(p.lo, p.hi) for p in both.pieces]


def alpha_lic_terms_torus(layers: Sequence, K: Sequence[tuple] = ((0, 1),)) -> list:
    """Per-layer dual alpha-LIC terms over the torus set K (a union of intervals)."""
    K = [(as_fraction(a), as_fraction(b)) for a, b in K]
    measure_K = sum((b - a for a, b in K), Fraction(0))
    terms = []
    for layer in layers:
        if isinstance(layer, PartitionLayer):
            terms.append(layer.gain_sq * measure_K)
            continue
        term = Fraction(0)
        for alpha in layer.annihilator():
            region = _k_both(K, alpha)
            if not region:
                continue
            for g, h, w in layer.generators:
                term += w * _overlap_measure_abs(g, h.shift(alpha), region)
        terms.append(term)
    return terms


def cc_bounds_torus(layers: Sequence) -> tuple:
    """(A_cc, B_cc) for the layers, exact for rational profiles."""
    diag, off = [], []
    for layer in layers:
        if isinstance(layer, PartitionLayer):
            diag.append(layer.talpha_part(Fraction(0)))
            continue
        for alpha in layer.annihilator():
            for g, _, w in layer.generators:
                prod = _abs_product(g, g.shift(alpha)).scale(w)
                (diag if alpha == 0 else off).append(prod)
    zero = RationalStepProfile.zero("torus")
    d = add_profiles(diag or [zero], "torus")
    o = add_profiles(off or [zero], "torus")
    upper = add_profiles([d, o], "torus")
    lower = add_profiles([d, o.scale(-1)], "torus")
    return profile_extremes(lower)[0], profile_extremes(upper)[1]


def _abs_product(a: RationalStepProfile, b: RationalStepProfile) -> RationalStepProfile:
    factor = product_factor(a, b)
    out = []
    for lo, hi in common_cells([a, b], "torus"):
        mid = (lo + hi) / 2
        v = abs_value(a.raw(mid)) * abs_value(b.raw(mid))
        if v != 0:
            out.append(Piece(lo, hi, v * factor))
    return RationalStepProfile("torus", tuple(out)).simplified()


# -- the tiling example -------------------------------------------------------


@dataclass(frozen=True)
class Ex0402eReport:
    N: int
    j_max: int
    lic_terms: list
    alpha_lic: TailBound
    cc: tuple
    t0: TailBound
    talpha_zero: dict
    passed: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "example": "ex-0402e",
            "N": self.N,
            "j_max": self.j_max,
            "lic_terms": self.lic_terms,
            "alpha_lic": self.alpha_lic.to_dict(),
            "cc": {"A": self.cc[0], "B": self.cc[1], "tail_bound": self.t0.tail_bound},
            "t0": self.t0.to_dict(),
            "talpha_nonzero_alpha": {str(a): str(v) for a, v in self.talpha_zero.items()},
            "pass": self.passed,
            **self.extra,
        }


def sample_alphas(N: int, j_max: int) -> list[Fraction]:
    out = set()
    for j in range(1, j_max + 1):
        M = N**j
        out.update({Fraction(1, M), Fraction(M - 1, M), Fraction(M // 2 + 1, M) if M > 2 else Fraction(1, M)})
    return sorted(a for a in out if a != 0)


def repro_ex_0402e(N: int, j_max: int) -> Ex0402eReport:
    """LIC, alpha-LIC, CC and t_alpha of the tiling family, exact and truncated at j_max.

    The infinite series converge geometrically; the tail after j_max is
    N^-j_max for t_0, the alpha-LIC sum and the CC bounds.
    """
    layers = ex_0402e_layers(N, j_max)
    tail = Fraction(1, N**j_max)
    t0 = talpha_torus(layers, 0)
    t0_value = _constant_value(t0)
    zeros = {}
    for alpha in sample_alphas(N, j_max):
        prof = talpha_torus(layers, alpha)
        zeros[alpha] = _constant_value(prof)
    alpha_lic = sum(alpha_lic_terms_torus(layers), Fraction(0))
    cc = cc_bounds_torus(layers) if layers else (Fraction(0), Fraction(0))
    passed = abs(t0_value - 1) <= tail and all(v == 0 for v in zeros.values())
    return Ex0402eReport(
        N,
        j_max,
        lic_terms_torus(layers),
        TailBound(alpha_lic, j_max, tail),
        cc,
        TailBound(t0_value, j_max, tail),
        zeros,
        passed,
    )


def _constant_value(p: RationalStepProfile):
    """Value of a torus profile known to be constant (0 if empty)."""
    vals = {piece.value for piece in p.pieces}
    covered = sum((piece.hi - piece.lo for piece in p.pieces), Fraction(0))
    if covered < 1:
        vals.add(Fraction(0))
    if len(vals) != 1:
        raise InvalidInput("profile is not constant")
    return vals.pop()


# -- the reordered orthonormal basis ---------------------------------------------


def reordered_tau(j: int) -> int:
    return 2 ** (j - 1) - 1


@dataclass(frozen=True)
class ReorderedOnbResult:
    N: int
    alpha: Fraction
    j_star: int
    value: complex | Fraction
    coefficients: dict
    expected: complex | Fraction

    @property
    def residual(self) -> float:
        return abs(complex(self.value) - complex(self.expected))

    def to_dict(self) -> dict:
        return {
            "example": "ex-reordered-onb",
            "N": self.N,
            "alpha": str(self.alpha),
            "j_star": self.j_star,
            "value": self.value,
            "expected": self.expected,
            "residual": self.residual,
            "phase_coefficients": {str(k): str(v) for k, v in self.coefficients.items()},
        }


def _phase(theta: Fraction, coeff: Fraction) -> tuple[Fraction, Fraction]:
    """Normalize c e^{-2 pi i theta} to theta in [0, 1/2) with a signed coefficient."""
    theta = _mod1(theta)
    if theta >= Fraction(1, 2):
        return theta - Fraction(1, 2), -coeff
    return theta, coeff


def repro_reordered_onb(N: int, k: int, j_star: int) -> ReorderedOnbResult:
    """t_alpha for alpha = k / N^j_star of the reordered orthonormal basis g_j = N^{-j/2} delta_{tau_j}.

    Term j contributes N^-j e^{-2 pi i tau_j alpha}.  At alpha = 0 the sum
    is 1 / (N - 1) for every N.  For alpha != 0 only N = 2 is available
    (tau_j = 2^(j-1) - 1): every term past the first has the same phase,
    so the tail is an exact geometric sum and the total cancels to 0.
    """
    if N < 2:
        raise InvalidInput("N must be at least 2")
    if j_star < 0:
        raise InvalidInput("j_star must be nonnegative")
    alpha = _mod1(Fraction(k, N**j_star))
    if alpha == 0:
        value = Fraction(1, N - 1)
        return ReorderedOnbResult(N, alpha, 0, value, {Fraction(0): value}, Fraction(1))
    if N != 2:
        raise InvalidInput(
            "alpha != 0 needs the translation offsets tau_j, which are only given explicitly for N = 2"
        )
    j0 = int(math.log2(alpha.denominator))
    coeffs: dict = {}

    def add(theta, c):
        theta, c = _phase(theta, c)
        coeffs[theta] = coeffs.get(theta, Fraction(0)) + c

    add(reordered_tau(j0) * alpha, Fraction(1, 2**j0))
    # for j > j0, 2^(j-1-j0) k is an integer, so tau_j alpha = -alpha mod 1
    add(-alpha, Fraction(1, 2**j0))
    coeffs = {t: c for t, c in coeffs.items() if c != 0}
    value = sum((complex(c) * np.exp(-2j * np.pi * float(t)) for t, c in coeffs.items()), 0j) if coeffs else 0j
    return ReorderedOnbResult(N, alpha, j0, value, coeffs, 0j)


def reordered_onb_partial(N: int, alpha: Fraction, j_max: int) -> complex:
    """Direct partial sum sum_{j <= j_max, alpha in N^-j Z} N^-j e^{-2 pi i tau_j alpha} (N = 2)."""
    total = 0j
    for j in range(1, j_max + 1):
        if (alpha * N**j).denominator == 1:
            theta = _mod1(reordered_tau(j) * alpha)
            total += N ** (-j) * np.exp(-2j * np.pi * float(theta))
    return total


def reordered_onb_finite(J: int) -> GtiSystem:
    """Finite analogue on Z_{2^J}: layers g_j = 2^{-j/2} delta_{tau_j} along 2^j Z, plus a last delta.

    The residue classes [tau_j] mod 2^j for j <= J and the single point
    2^J - 1 partition Z_{2^J}, so the system is a Parseval frame.
    """
    if J < 1:
        raise InvalidInput("J must be at least 1")
    L = 2**J
    G = FiniteAbelianGroup((L,))
    layers = []
    for j in range(1, J + 1):
        v = np.zeros(L, dtype=complex)
        v[reordered_tau(j)] = 2 ** (-j / 2)
        layers.append(Layer(subgroup_from_generators(G, [(2**j % L,)]), [Generator(GroupFunction(G, v))]))
    v = np.zeros(L, dtype=complex)
    v[L - 1] = 2 ** (-J / 2)
    layers.append(Layer(subgroup_from_generators(G, []), [Generator(GroupFunction(G, v))]))
    return GtiSystem(G, layers)
