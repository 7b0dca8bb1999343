"""Brute-force ground truth: dense frame operators on finite groups.

Nothing here goes through the Fourier side except the proof-level identity
checks, whose whole point is to compare a time-side sum with its Fourier
expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .groups import FiniteAbelianGroup, GroupFunction, InvalidInput, Subgroup, annihilator, dft, inner
from .systems import GaborSystem, GtiSystem, check_compatible, translate
from .verdict import DEFAULT_TOL, Verdict

MAX_ORDER = 4096


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float

    def to_dict(self) -> dict:
        return {"A": self.lower, "B": self.upper}


def _translation_index(group: FiniteAbelianGroup, sub: Subgroup) -> np.ndarray:
    """idx[x, k] = canonical index of x - gamma_k."""
    diff = (group.coords[:, None, :] - np.array(sub.elements)[None, :, :]) % np.array(group.shape)
    return np.ravel_multi_index(tuple(np.moveaxis(diff, -1, 0)), group.shape)


def frame_operator(sys_g: GtiSystem, sys_h: GtiSystem | None = None, max_order: int = MAX_ORDER) -> np.ndarray:
    """Matrix of S f = sum_j sum_p w_p s(Gamma_j) sum_gamma <f, T_gamma g_p> T_gamma h_p."""
    sys_h = sys_g if sys_h is None else sys_h
    check_compatible(sys_g, sys_h)
    group = sys_g.group
    if group.order > max_order:
        raise InvalidInput(f"group order {group.order} exceeds the dense-matrix cap {max_order}")
    wg = float(group.weight)
    S = np.zeros((group.order, group.order), dtype=complex)
    for lg, lh in zip(sys_g.layers, sys_h.layers):
        idx = _translation_index(group, lg.translations)
        s = float(lg.lattice_size)
        for a, b in zip(lg.generators, lh.generators):
            Tg = a.values.values[idx]
            Th = b.values.values[idx]
            S += (float(a.weight) * s * wg) * (Th @ Tg.conj().T)
    return S


def apply_frame_operator(sys_g: GtiSystem, sys_h: GtiSystem, f: GroupFunction) -> GroupFunction:
    """Literal evaluation of S f as a double sum, without assembling a matrix."""
    check_compatible(sys_g, sys_h)
    out = np.zeros(f.group.order, dtype=complex)
    for lg, lh in zip(sys_g.layers, sys_h.layers):
        s = float(lg.lattice_size)
        for a, b in zip(lg.generators, lh.generators):
            for gam in lg.translations.elements:
                c = inner(f, translate(a.values, gam))
                out += float(a.weight) * s * c * translate(b.values, gam).values
    return GroupFunction(f.group, out)


def frame_bounds_bruteforce(sys: GtiSystem) -> FrameBounds:
    eig = np.linalg.eigvalsh(frame_operator(sys))
    return FrameBounds(float(eig[0]), float(eig[-1]))


def is_dual_bruteforce(sys_g: GtiSystem, sys_h: GtiSystem, tol: float = DEFAULT_TOL) -> Verdict:
    """Dual iff the mixed frame operator is the identity (max-entry norm)."""
    S = frame_operator(sys_g, sys_h)
    E = S - np.eye(S.shape[0])
    return Verdict.from_residual(
        "dual-bruteforce",
        np.abs(E).max(initial=0.0),
        tol,
        details={"spectral_residual": float(np.linalg.norm(E, 2)) if E.size else 0.0},
    )


def is_parseval_bruteforce(sys: GtiSystem, tol: float = DEFAULT_TOL) -> Verdict:
    v = is_dual_bruteforce(sys, sys, tol)
    return Verdict("parseval-bruteforce", v.passed, v.max_residual, v.tolerance, v.details)


def gabor_frame_operator(sys: GaborSystem, which_h: str = "h") -> np.ndarray:
    """Mixed frame operator of the raw Gabor families E_gamma T_lambda g / h."""
    Ag, w = sys.atoms("g")
    Ah, _ = sys.atoms(which_h)
    return w * float(sys.group.weight) * (Ah @ Ag.conj().T)


def is_dual_gabor_bruteforce(sys: GaborSystem, tol: float = DEFAULT_TOL) -> Verdict:
    S = gabor_frame_operator(sys)
    return Verdict.from_residual("gabor-dual-bruteforce", np.abs(S - np.eye(S.shape[0])).max(), tol)


def rayleigh_bounds(sys: GtiSystem, rng: np.random.Generator, samples: int = 10_000) -> FrameBounds:
    """Extremes of sum |<f, atom>|^2 / ||f||^2 over random f (sampling oracle)."""
    S = frame_operator(sys)
    n = S.shape[0]
    F = rng.standard_normal((n, samples)) + 1j * rng.standard_normal((n, samples))
    q = np.einsum("ik,ij,jk->k", F.conj(), S, F).real / np.einsum("ik,ik->k", F.conj(), F).real
    lo, hi = q.min(), q.max()
    # refine the best samples: power iteration, then Rayleigh-quotient iteration
    shift = np.abs(S).sum(axis=1).max() + 1.0
    for sign in (1, -1):
        v = F[:, np.argmax(sign * q)]
        M = S if sign == 1 else shift * np.eye(n) - S
        for _ in range(200):
            v = M @ v
            v /= np.linalg.norm(v)
        for _ in range(20):
            rho = (v.conj() @ S @ v).real
            try:
                w = np.linalg.solve(S - rho * np.eye(n), v)
            except np.linalg.LinAlgError:
                break
            if not np.all(np.isfinite(w)) or np.linalg.norm(w) == 0:
                break
            v = w / np.linalg.norm(w)
        r = float((v.conj() @ S @ v).real)
        lo, hi = min(lo, r), max(hi, r)
    return FrameBounds(float(lo), float(hi))


# -- proof-level identities ---------------------------------------------------


def fiber_identity_residual(
    group: FiniteAbelianGroup,
    H: Subgroup,
    f1: GroupFunction,
    f2: GroupFunction,
    phi: GroupFunction,
    psi: GroupFunction,
) -> float:
    """|sum_h <f1, T_h phi><T_h psi, f2> - Fourier-side double sum|.

    The left side uses the lattice-size weight of ``H``; the right side sums
    over ``H^perp`` with counting measure and over the dual with its weight.
    """
    lhs = 0j
    for h in H.elements:
        lhs += inner(f1, translate(phi, h)) * inner(translate(psi, h), f2)
    lhs *= float(H.haar_weight)

    dual = group.dual
    F1, F2, P, Q = (dft(u).values.reshape(dual.shape) for u in (f1, f2, phi, psi))
    rhs = 0j
    axes = tuple(range(dual.rank))
    for alpha in annihilator(group, H).elements:
        shift = tuple(-a for a in alpha)
        F2a = np.roll(F2, shift, axis=axes)
        Qa = np.roll(Q, shift, axis=axes)
        rhs += np.sum(F1 * F2a.conj() * P.conj() * Qa)
    rhs *= float(dual.weight)
    return abs(lhs - rhs)


def w_f(sys_g: GtiSystem, sys_h: GtiSystem, f: GroupFunction, x: Sequence[int]) -> complex:
    """Time-side w_f(x) = sum_j sum_p w_p s_j sum_gamma <T_x f, T_gamma g><T_gamma h, T_x f>."""
    check_compatible(sys_g, sys_h)
    fx = translate(f, x)
    total = 0j
    for lg, lh in zip(sys_g.layers, sys_h.layers):
        s = float(lg.lattice_size)
        for a, b in zip(lg.generators, lh.generators):
            for gam in lg.translations.elements:
                total += (
                    float(a.weight) * s * inner(fx, translate(a.values, gam)) * inner(translate(b.values, gam), fx)
                )
    return total


def wf_series(sys_g: GtiSystem, sys_h: GtiSystem, f: GroupFunction, x: Sequence[int]) -> complex:
    """Generalized Fourier series sum_alpha alpha(x) w^(alpha) built from t_alpha."""
    from .talpha import talpha_table

    group = sys_g.group
    dual = group.dual
    fhat = dft(f).values.reshape(dual.shape)
    axes = tuple(range(dual.rank))
    x = group.reduce(x)
    total = 0j
    for alpha, t in talpha_table(sys_g, sys_h).items():
        shifted = np.roll(fhat, tuple(-a for a in alpha), axis=axes)
        what = float(dual.weight) * np.sum(fhat * shifted.conj() * t.reshape(dual.shape))
        total += group.pairing(alpha, x) * what
    return total


def wf_series_residual(sys_g: GtiSystem, sys_h: GtiSystem, f: GroupFunction, x: Sequence[int]) -> float:
    return abs(w_f(sys_g, sys_h, f, x) - wf_series(sys_g, sys_h, f, x))
