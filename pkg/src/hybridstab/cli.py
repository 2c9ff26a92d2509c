"""Command-line front end.

Exit codes: 0 valid / correctable, 1 invalid / not correctable,
2 usage or parse error, 3 oracle refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import codefile
from .codes import (
    HybridCode,
    InvalidCode,
    NotCSS,
    build_bacon_shor,
    build_gkp18,
    build_motivating,
    build_seven_qubit_hybrid,
    classical_code,
    gkp18_transversal,
    hybridize_css,
    read_generator_matrix,
)
from .correctability import check_errors
from .distance import anticommute_degree, css_anticommute_degree, exact_distance
from .oracle import DenseCapExceeded, OracleRefusal, check_oaqec_conditions
from .pauli import DimensionMismatch, format_pauli

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def code_parameters(code: HybridCode, distance: int | None = None) -> dict:
    return {
        "name": code.name,
        "d": code.qudit_dim,
        "n": code.num_sites,
        "s": code.s,
        "r": code.r,
        "k": code.k,
        "sectors": code.sector_count,
        "notation": code.hybrid_parameters(distance),
    }


def _emit(report: dict, timings: dict, out) -> None:
    report = dict(report)
    report["timings"] = {k: round(v, 6) for k, v in timings.items()}
    json.dump(report, out, sort_keys=True, indent=2)
    out.write("\n")


def cmd_validate(args, out) -> int:
    t0 = time.perf_counter()
    code = codefile.read_code(args.code)
    report = code.validation
    result = {
        "command": "validate",
        "code_file": args.code,
        "code": code_parameters(code),
        "valid": report.ok,
        "failures": [
            {"check": f.check, "message": f.message, "operators": [format_pauli(g) for g in f.operators]}
            for f in report.failures
        ],
    }
    _emit(result, {"total_s": time.perf_counter() - t0}, out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_check(args, out) -> int:
    t0 = time.perf_counter()
    code = codefile.read_code(args.code)
    errors = codefile.read_errors(args.errors, code.qudit_dim, code.num_sites)
    result = {
        "command": "check",
        "code_file": args.code,
        "errors_file": args.errors,
        "code": code_parameters(code),
        "num_errors": len(errors),
    }
    if not code.validation.ok:
        result["verdict"] = "invalid_code"
        result["failures"] = [f"{f.check}: {f.message}" for f in code.validation.failures]
        _emit(result, {"total_s": time.perf_counter() - t0}, out)
        return EXIT_FAIL
    rep = check_errors(code, errors)
    t1 = time.perf_counter()
    result["verdict"] = rep.verdict
    result["per_sector"] = list(rep.per_sector)
    result["witness"] = None
    if rep.witness is not None:
        w = rep.witness
        result["witness"] = {
            "k": w.k,
            "l": w.l,
            "tag": str(w.tag),
            "product": format_pauli(errors[w.k] ** -1 * errors[w.l]),
        }
    timings = {"check_s": t1 - t0}
    status = EXIT_OK if rep.correctable else EXIT_FAIL
    if args.oracle:
        try:
            verdict = check_oaqec_conditions(code, errors)
        except DenseCapExceeded as exc:
            result["oracle"] = {"status": "skipped", "reason": str(exc)}
        except OracleRefusal as exc:
            result["oracle"] = {"status": "refused", "reason": str(exc)}
            status = EXIT_REFUSED
        else:
            agrees = verdict == rep.correctable
            result["oracle"] = {
                "status": "ok",
                "verdict": "correctable" if verdict else "not_correctable",
                "agrees": agrees,
            }
            if not agrees:
                print("warning: dense oracle disagrees with the group-theoretic verdict", file=sys.stderr)
        timings["oracle_s"] = time.perf_counter() - t1
    _emit(result, timings, out)
    return status


def cmd_distance(args, out) -> int:
    t0 = time.perf_counter()
    code = codefile.read_code(args.code)
    if not code.validation.ok:
        result = {
            "command": "distance",
            "code_file": args.code,
            "code": code_parameters(code),
            "verdict": "invalid_code",
            "failures": [f"{f.check}: {f.message}" for f in code.validation.failures],
        }
        _emit(result, {"total_s": time.perf_counter() - t0}, out)
        return EXIT_FAIL
    max_weight = args.max_weight if args.max_weight is not None else min(code.num_sites, 6)
    if not 1 <= max_weight <= code.num_sites:
        raise UsageError(f"--max-weight must lie in [1, {code.num_sites}]")
    res = exact_distance(code, max_weight, threads=args.threads)
    result = {
        "command": "distance",
        "code_file": args.code,
        "code": code_parameters(code, res.exact_distance),
        "exact_distance": res.exact_distance,
        "lower_bound": res.lower_bound,
        "upper_bound": res.upper_bound,
        "search_cutoff": res.search_cutoff,
        "witness": format_pauli(res.witness) if res.witness is not None else None,
        "anticommute_degree": anticommute_degree(code),
    }
    try:
        mx, mz = css_anticommute_degree(code)
        result["css_anticommute_degree"] = {"m_x": mx, "m_z": mz}
    except NotCSS:
        result["css_anticommute_degree"] = None
    _emit(result, {"total_s": time.perf_counter() - t0}, out)
    return EXIT_OK


def _classical(choice: str, length: int):
    if os.path.isfile(choice):
        with open(choice, encoding="utf-8") as fh:
            return read_generator_matrix(fh.read(), 2, os.path.basename(choice))
    try:
        return classical_code(choice, length)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def generate(args) -> HybridCode:
    fam = args.family
    if fam == "motivating":
        if not (0 <= args.s <= args.n and 0 <= args.r <= args.n - args.s):
            raise UsageError("need 0 <= s <= n and 0 <= r <= n - s")
        return build_motivating(args.n, args.s, args.r, args.d, args.sectors)
    if fam == "bacon-shor":
        if args.ell < 2:
            raise UsageError("--ell must be >= 2")
        return build_bacon_shor(args.ell)
    if fam == "bacon-shor-hybrid":
        if args.ell < 2:
            raise UsageError("--ell must be >= 2")
        base = build_bacon_shor(args.ell)
        cx = _classical(args.cx, args.ell - 1)
        cz = _classical(args.cz, args.ell - 1)
        try:
            return hybridize_css(base, cx, cz)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if fam == "gkp18":
        return build_gkp18(gkp18_transversal() if args.full else None)
    if fam == "seven-qubit":
        return build_seven_qubit_hybrid()
    raise UsageError(f"unknown family {fam!r}")  # pragma: no cover


def cmd_generate(args, out) -> int:
    text = codefile.format_code(generate(args))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hybridstab", description="Hybrid stabilizer code toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the structural conditions on a code file")
    p.add_argument("code")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="decide correctability of an error set")
    p.add_argument("code")
    p.add_argument("errors")
    p.add_argument("--oracle", action="store_true", help="cross-check with the dense-matrix oracle")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("distance", help="search for the hybrid code distance")
    p.add_argument("code")
    p.add_argument("--max-weight", type=int, default=None, help="weight cutoff (default min(n, 6))")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("generate", help="write a code file for a standard family")
    fam = p.add_subparsers(dest="family", required=True)
    m = fam.add_parser("motivating")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--s", type=int, required=True)
    m.add_argument("--r", type=int, default=0)
    m.add_argument("--d", type=int, default=2)
    m.add_argument("--sectors", type=int, default=None)
    b = fam.add_parser("bacon-shor")
    b.add_argument("--ell", type=int, required=True)
    h = fam.add_parser("bacon-shor-hybrid")
    h.add_argument("--ell", type=int, required=True)
    h.add_argument("--cx", default="none", help="rep<k>, hamming743, none, or a generator-matrix file")
    h.add_argument("--cz", default="none", help="as --cx")
    g = fam.add_parser("gkp18")
    g.add_argument("--full", action="store_true", help="use all nine sectors")
    fam.add_parser("seven-qubit")
    for q in (m, b, h, g, fam.choices["seven-qubit"]):
        q.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (codefile.CodeFileError, UsageError, DimensionMismatch, InvalidCode, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
