"""Command-line front end: ``gti verify``, ``gti conditions``, ``gti repro``.

Exit codes: 0 pass, 1 fail, 2 invalid input.  Reports go to stdout as
deterministic JSON (or CSV / whitespace columns on request).
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from fractions import Fraction

import numpy as np

from . import io as gio
from .conditions import ConditionReport, condition_bundle
from .groups import InvalidInput
from .oracle import is_dual_bruteforce
from .talpha import (
    TAlphaReport,
    canonical_dual_window,
    finite_gabor_check,
    gabor_dual_freq,
    gabor_dual_time,
    verify_dual_talpha,
    verify_parseval_talpha,
)
from .torus.ell2 import (
    alpha_lic_terms_torus,
    cc_bounds_torus,
    ex_0402e_layers,
    lic_terms_torus,
    repro_ex_0402e,
    repro_reordered_onb,
)
from .torus.real import box, calderon_continuous, janssen_check, log_normalized_profile, shannon_profile, wavelet_talpha_dyadic
from .verdict import DEFAULT_TOL, Verdict, digest, dumps

VERIFY_KINDS = ("dual-talpha", "parseval-talpha", "dual-brute", "gabor-time", "gabor-freq", "finite-gabor", "janssen")
REPRO_IDS = ("ex-0402e", "ex-reordered-onb", "shannon-wavelet", "calderon-cont", "gabor-finite", "janssen-unit")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_tol() -> float:
    raw = os.environ.get("GTI_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise InvalidInput(f"GTI_TOL={raw!r} is not a number") from exc
    if not tol >= 0:
        raise InvalidInput("GTI_TOL must be nonnegative")
    return tol


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gti", description="Dual and Parseval frame checks for GTI systems.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run one verification on descriptor files")
    v.add_argument("kind", choices=VERIFY_KINDS)
    v.add_argument("--sys", required=True, help="system (or Gabor / finite Gabor / Janssen) descriptor")
    v.add_argument("--sys2", help="second system for dual checks (default: --sys)")
    v.add_argument("--tol", type=float, help="tolerance (default: GTI_TOL or 1e-10)")
    v.add_argument("--top-k", type=int, help="keep only the k largest residuals in the table")
    _output_flags(v)

    c = sub.add_parser("conditions", help="Calderon, CC, LIC and alpha-LIC reports")
    c.add_argument("--sys", required=True, help="system descriptor, or {\"family\": \"ex-0402e\", \"N\": n}")
    c.add_argument("--K", help="JSON list of dual elements restricting the (alpha-)LIC sums")
    c.add_argument("--jmax", type=int, help="keep the first jmax layers")

    r = sub.add_parser("repro", help="reproduce a named example")
    r.add_argument("example", help="one of " + ", ".join(REPRO_IDS))
    r.add_argument("--N", type=int, default=None)
    r.add_argument("--jmax", type=int, default=None)
    r.add_argument("--k", type=int, default=1, help="numerator of alpha = k / N^jstar")
    r.add_argument("--jstar", type=int, default=3)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--d", type=int, default=12)
    r.add_argument("--a", type=int, default=3)
    r.add_argument("--b", type=int, default=4)
    _output_flags(r)
    return p


def _output_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_const", const="json", dest="fmt", help="JSON output (default)")
    g.add_argument("--csv", action="store_const", const="csv", dest="fmt", help="CSV residual table")
    g.add_argument("--gnuplot-data", action="store_const", const="gnuplot", dest="fmt", help="columnar residuals")


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> tuple[Verdict, list]:
    tol = args.tol if args.tol is not None else default_tol()
    data = gio.load_json(args.sys)
    data2 = gio.load_json(args.sys2) if args.sys2 else None
    kind = args.kind
    rows: list = []
    if kind in ("dual-talpha", "parseval-talpha", "dual-brute"):
        sys_g = gio.read_system(data)
        sys_h = gio.read_system(data2) if data2 is not None else sys_g
        if kind == "dual-brute":
            verdict = is_dual_bruteforce(sys_g, sys_h, tol)
        else:
            report = verify_parseval_talpha(sys_g, tol) if kind == "parseval-talpha" else verify_dual_talpha(sys_g, sys_h, tol)
            verdict, rows = _from_report(report, args.top_k)
    elif kind in ("gabor-time", "gabor-freq"):
        gabor = gio.read_gabor(data)
        if gabor.h is None and data2 is not None:
            gabor = gabor.with_h(gio.read_gabor(data2).g)
        report = gabor_dual_time(gabor, tol) if kind == "gabor-time" else gabor_dual_freq(gabor, tol)
        verdict, rows = _from_report(report, args.top_k)
    elif kind == "finite-gabor":
        g, h, a, b = gio.read_finite_gabor(data)
        verdict = finite_gabor_check(g, h, a, b, tol)
    else:
        g, h, a, b = gio.read_janssen(data)
        verdict = janssen_check(g, h, a, b, tol)
        rows = [
            (r["alpha"], p["lo"], p["value"], p["residual"]) for r in verdict.details["rows"] for p in r["pieces"]
        ]
    inputs = [data] if data2 is None else [data, data2]
    provenance = {"command": f"verify {kind}", "input_digest": digest(inputs)}
    return Verdict(verdict.condition, verdict.passed, verdict.max_residual, verdict.tolerance, verdict.details, provenance), rows


def _from_report(report: TAlphaReport, top_k: int | None) -> tuple[Verdict, list]:
    details = report.to_dict(top_k)
    for key in ("condition", "pass", "max_residual", "tol"):
        details.pop(key)
    rows = [(",".join(map(str, a)), ",".join(map(str, p)), v, r) for a, p, v, r in report.table()]
    if top_k is not None:
        rows = sorted(rows, key=lambda row: -row[3])[:top_k]
    return Verdict.from_residual(report.condition, report.max_residual, report.tolerance, details), rows


# -- conditions -------------------------------------------------------------------


def cmd_conditions(args) -> dict:
    data = gio.load_json(args.sys)
    if isinstance(data, dict) and data.get("family") == "ex-0402e":
        N = int(data.get("N", 2))
        jmax = args.jmax if args.jmax is not None else int(data.get("jmax", 20))
        layers = ex_0402e_layers(N, jmax)
        A, B = cc_bounds_torus(layers) if layers else (Fraction(0), Fraction(0))
        lic = lic_terms_torus(layers)
        alpha = alpha_lic_terms_torus(layers)
        out = {
            "family": "ex-0402e",
            "N": N,
            "j_max": jmax,
            "calderon": {"min": A, "max": B},
            "cc": {"A": A, "B": B},
            "lic_discrete": _terms_dict("lic-discrete", lic),
            "alpha_lic": _terms_dict("dual-alpha-lic", alpha),
            "tail_bound": Fraction(1, N**jmax),
        }
    else:
        system = gio.read_system(data)
        if args.jmax is not None:
            if args.jmax < 0:
                raise InvalidInput("--jmax must be nonnegative")
            system = type(system)(system.group, system.layers[: args.jmax])
        K = gio.read_elements(system.group.dual, gio.load_json(args.K)) if args.K else None
        out = condition_bundle(system, K)
    out["provenance"] = {"command": "conditions", "input_digest": digest(data)}
    return out


def _terms_dict(name: str, terms: list) -> dict:
    return ConditionReport(name, terms).to_dict()


# -- repro -----------------------------------------------------------------------


def _row(quantity, expected, computed, residual=None, tol=0.0, source="closed-form") -> dict:
    if residual is None:
        residual = abs(complex(computed) - complex(expected))
    return {
        "quantity": quantity,
        "expected": expected,
        "computed": computed,
        "residual": float(residual),
        "pass": bool(residual <= tol),
        "source": source,
    }


def cmd_repro(args) -> dict:
    ex = args.example
    params: dict = {}
    rows: list = []
    if ex == "ex-0402e":
        N = args.N if args.N is not None else 2
        jmax = args.jmax if args.jmax is not None else 20
        params = {"N": N, "jmax": jmax}
        rep = repro_ex_0402e(N, jmax)
        partial = 1 - Fraction(1, N**jmax)
        rows.append(_row("alpha_lic_partial", partial, rep.alpha_lic.partial))
        rows.append(_row("t0_partial", partial, rep.t0.partial))
        rows.append(_row("cc_A", partial, rep.cc[0]))
        rows.append(_row("cc_B", partial, rep.cc[1]))
        for j, t in enumerate(rep.lic_terms, start=1):
            rows.append(_row(f"lic_term_{j}", Fraction(N - 1), t))
        for alpha, val in rep.talpha_zero.items():
            rows.append(_row(f"t_alpha({alpha})", Fraction(0), val))
        extra = {"tail_bound": Fraction(1, N**jmax), "limit": {"t0": 1, "alpha_lic": 1, "lic": "diverges"}}
    elif ex == "ex-reordered-onb":
        N = args.N if args.N is not None else 2
        params = {"N": N, "k": args.k, "jstar": args.jstar}
        res = repro_reordered_onb(N, args.k, args.jstar)
        if res.alpha == 0:
            rows.append(_row("t_0", Fraction(1, N - 1), res.value, tol=1e-15))
        else:
            rows.append(_row(f"t_alpha({res.alpha})", 0, res.value, tol=1e-15))
        extra = res.to_dict()
        if res.alpha == 0:
            # the system is Parseval, so t_0 = 1 would be needed for the t_alpha equations
            extra["parseval_gap"] = res.value - 1
    elif ex == "shannon-wavelet":
        psi = shannon_profile()
        params = {"window": "[-64,-1/64) u [1/64,64)", "alphas": [0, 1, -1, 2, -2, 3, -3]}
        for alpha in params["alphas"]:
            r = wavelet_talpha_dyadic(psi, alpha=alpha)
            rows.append(_row(f"max|t_{alpha} - delta|", 0, r.max_residual(), residual=r.max_residual()))
        extra = {"tail_bound": 0}
    elif ex == "calderon-cont":
        res = calderon_continuous(log_normalized_profile())
        params = {"profile": "|psi^|^2 = 1/(2 ln 2) on [1,2) u [-2,-1)"}
        rows.append(_row("xi > 0", 1.0, res.positive_side, tol=1e-12))
        rows.append(_row("xi < 0", 1.0, res.negative_side, tol=1e-12))
        bad = calderon_continuous(box(1, 4))
        rows.append(_row("[1,4) indicator, xi > 0", float(np.log(4)), bad.positive_side, tol=1e-12))
        extra = {"result": res.to_dict(), "non_admissible": bad.to_dict()}
    elif ex == "gabor-finite":
        d, a, b = args.d, args.a, args.b
        params = {"d": d, "a": a, "b": b, "seed": args.seed}
        rng = np.random.default_rng(args.seed)
        g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        h = canonical_dual_window(g, a, b)
        v = finite_gabor_check(g, h, a, b, 1e-9)
        rows.append(_row("condition residual", 0, v.max_residual, residual=v.max_residual, tol=1e-9, source="computed"))
        brute = v.details["bruteforce_residual"]
        rows.append(_row("||S - I||_max", 0, brute, residual=brute, tol=1e-9, source="oracle"))
        extra = {"verdict": v.to_dict()}
    elif ex == "janssen-unit":
        params = {"g": "1_[0,1)", "h": "1_[0,1)", "a": 1, "b": 1}
        v = janssen_check(box(), box(), 1, 1, 0.0)
        rows.append(_row("max residual (a=b=1)", 0, v.max_residual, residual=v.max_residual))
        v2 = janssen_check(box(), box(), 1, 2, 0.0)
        rows.append(_row("max residual (a=1, b=2)", 1, v2.max_residual, residual=abs(v2.max_residual - 1)))
        extra = {"verdict": v.to_dict(), "undersampled": v2.to_dict()}
    else:
        raise InvalidInput(f"unknown example id {ex!r}; expected one of {', '.join(REPRO_IDS)}")
    return {
        "example": ex,
        "parameters": params,
        "rows": rows,
        "pass": all(r["pass"] for r in rows),
        "details": extra,
        "provenance": {"command": f"repro {ex}", "input_digest": digest(params)},
    }


# -- output ----------------------------------------------------------------------


def _csv(rows: list, header: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(c) for c in row])
    return buf.getvalue()


def _cell(c):
    if isinstance(c, complex):
        return f"{c.real!r}{'+' if c.imag >= 0 else ''}{c.imag!r}j"
    if isinstance(c, float):
        return repr(c)
    return str(c)


def _gnuplot(rows: list) -> str:
    return "".join(f"{i} {_cell(float(row[-1]))}\n" for i, row in enumerate(rows))


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _error(message: str, kind: str = "invalid-input") -> int:
    _emit(dumps({"error": {"type": kind, "message": message}}))
    return 2


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _error(str(exc), "usage")
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            verdict, rows = cmd_verify(args)
            fmt = args.fmt or "json"
            if fmt == "csv":
                _emit(_csv(rows, ["alpha", "point", "value", "residual"]))
            elif fmt == "gnuplot":
                _emit(_gnuplot(rows))
            else:
                _emit(dumps(verdict))
            return 0 if verdict.passed else 1
        if args.command == "conditions":
            _emit(dumps(cmd_conditions(args)))
            return 0
        report = cmd_repro(args)
        fmt = args.fmt or "json"
        table = [(r["quantity"], r["expected"], r["computed"], r["residual"]) for r in report["rows"]]
        if fmt == "csv":
            _emit(_csv(table, ["quantity", "expected", "computed", "residual"]))
        elif fmt == "gnuplot":
            _emit(_gnuplot(table))
        else:
            _emit(dumps(report))
        return 0 if report["pass"] else 1
    except InvalidInput as exc:
        return _error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
