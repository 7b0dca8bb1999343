"""Calderon sums, CC bounds, and the LIC / alpha-LIC term sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .groups import Element, InvalidInput, dft
from .systems import GtiSystem, check_compatible

DIVERGENCE_THRESHOLD = 1e-12
DIVERGENCE_RATIO = 0.9


@dataclass(frozen=True)
class ConditionReport:
    """Per-layer terms of a summability condition and their partial sums.

    ``divergence_flag`` is a heuristic: it is raised when the last term is
    still above ``threshold`` and has not decayed relative to the one
    before (ratio at least ``ratio_limit``).  It says nothing rigorous
    about the infinite sum; closed forms decide that.
    """

    condition: str
    terms: tuple
    threshold: float = DIVERGENCE_THRESHOLD
    ratio_limit: float = DIVERGENCE_RATIO
    value_at: dict | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        terms = tuple(self.terms)
        if any(t < 0 for t in terms):
            raise InvalidInput("condition terms must be nonnegative")
        object.__setattr__(self, "terms", terms)

    @property
    def partial_sums(self) -> list:
        out, acc = [], 0
        for t in self.terms:
            acc = acc + t
            out.append(acc)
        return out

    @property
    def total(self):
        return self.partial_sums[-1] if self.terms else 0

    @property
    def divergence_flag(self) -> bool:
        if len(self.terms) < 2:
            return False
        last, prev = float(self.terms[-1]), float(self.terms[-2])
        if last <= self.threshold:
            return False
        return prev == 0 or last / prev >= self.ratio_limit

    def to_dict(self) -> dict:
        out = {
            "condition": self.condition,
            "terms": list(self.terms),
            "partial_sums": self.partial_sums,
            "divergence_flag": self.divergence_flag,
        }
        if self.value_at is not None:
            out["value_at"] = {",".join(map(str, k)): v for k, v in self.value_at.items()}
        out.update(self.extra)
        return out


def _hats(sys: GtiSystem) -> list[list[tuple[float, np.ndarray]]]:
    return [[(float(gen.weight), dft(gen.values).values) for gen in layer.generators] for layer in sys.layers]


def calderon_values(sys: GtiSystem) -> np.ndarray:
    """sum_j sum_p w_p |g^_p(omega)|^2 for every omega (canonical order)."""
    out = np.zeros(sys.group.order)
    for layer in _hats(sys):
        for w, gh in layer:
            out += w * np.abs(gh) ** 2
    return out


def calderon_sum(sys: GtiSystem, omega: Sequence[int]) -> float:
    dual = sys.group.dual
    return float(calderon_values(sys)[dual.index_of(dual.reduce(omega))])


def _offdiagonal(sys: GtiSystem, include_identity: bool) -> np.ndarray:
    dual = sys.group.dual
    axes = tuple(range(dual.rank))
    out = np.zeros(dual.shape)
    for layer, perp in zip(_hats(sys), sys.annihilators()):
        for alpha in perp.elements:
            if alpha == dual.identity and not include_identity:
                continue
            shift = tuple(-a for a in alpha)
            for w, gh in layer:
                a = np.abs(gh).reshape(dual.shape)
                out += w * a * np.roll(a, shift, axis=axes)
    return out.ravel()


def cc_bounds(sys: GtiSystem) -> tuple[float, float]:
    """(A_cc, B_cc) from the absolutely summed CC double sums."""
    if sys.group.order == 0:
        return 0.0, 0.0
    B = float(_offdiagonal(sys, True).max())
    A = float((calderon_values(sys) - _offdiagonal(sys, False)).min())
    return A, B


def lic_discrete_sum(sys: GtiSystem, **kw) -> ConditionReport:
    """Per-layer terms sum_p w_p |Gamma_j^perp| ||g_p||^2."""
    terms = []
    for layer, perp in zip(sys.layers, sys.annihilators()):
        terms.append(sum(float(g.weight) * perp.order * g.values.norm_sq() for g in layer.generators))
    return ConditionReport("lic-discrete", terms, **kw)


def _mask(sys: GtiSystem, K: Iterable[Sequence[int]] | None) -> np.ndarray:
    dual = sys.group.dual
    mask = np.zeros(dual.shape, dtype=bool)
    if K is None:
        mask[...] = True
        return mask
    for k in K:
        mask[dual.reduce(k)] = True
    return mask


def _alpha_terms(sys_g: GtiSystem, sys_h: GtiSystem, K, name: str, **kw) -> ConditionReport:
    check_compatible(sys_g, sys_h)
    dual = sys_g.group.dual
    axes = tuple(range(dual.rank))
    mask = _mask(sys_g, K)
    wd = float(dual.weight)
    terms = []
    for lg, lh, perp in zip(_hats(sys_g), _hats(sys_h), sys_g.annihilators()):
        term = 0.0
        for alpha in perp.elements:
            shift = tuple(-a for a in alpha)
            # omega in K and omega * alpha in K
            both = mask & np.roll(mask, shift, axis=axes)
            for (w, gh), (_, hh) in zip(lg, lh):
                a = np.abs(gh).reshape(dual.shape)
                b = np.roll(np.abs(hh).reshape(dual.shape), shift, axis=axes)
                term += w * wd * float((a * b)[both].sum())
        terms.append(term)
    return ConditionReport(name, terms, **kw)


def dual_alpha_lic_terms(sys_g: GtiSystem, sys_h: GtiSystem, K=None, **kw) -> ConditionReport:
    """Per-layer terms of the dual alpha-LIC sum restricted to the set K (default: all of the dual)."""
    return _alpha_terms(sys_g, sys_h, K, "dual-alpha-lic", **kw)


def lic_terms(sys: GtiSystem, K=None, **kw) -> ConditionReport:
    """Per-layer terms of the LIC sum with |g^_p(omega)|^2 over omega in K and omega alpha in K."""
    check_compatible(sys, sys)
    dual = sys.group.dual
    axes = tuple(range(dual.rank))
    mask = _mask(sys, K)
    wd = float(dual.weight)
    terms = []
    for layer, perp in zip(_hats(sys), sys.annihilators()):
        term = 0.0
        for alpha in perp.elements:
            both = mask & np.roll(mask, tuple(-a for a in alpha), axis=axes)
            for w, gh in layer:
                term += w * wd * float((np.abs(gh).reshape(dual.shape) ** 2)[both].sum())
        terms.append(term)
    return ConditionReport("lic", terms, **kw)


def condition_bundle(sys: GtiSystem, K: Sequence[Element] | None = None) -> dict:
    """Everything in one report: Calderon sums, CC bounds, LIC and alpha-LIC terms."""
    cal = calderon_values(sys)
    A, B = cc_bounds(sys)
    return {
        "calderon": {"min": float(cal.min(initial=np.inf)) if cal.size else 0.0, "max": float(cal.max(initial=0.0)), "values": cal},
        "cc": {"A": A, "B": B},
        "lic_discrete": lic_discrete_sum(sys).to_dict(),
        "lic": lic_terms(sys, K).to_dict(),
        "alpha_lic": dual_alpha_lic_terms(sys, sys, K).to_dict(),
    }
