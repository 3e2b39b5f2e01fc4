"""Command-line front end.

Thin client over the core package: parse an instance, run one of the two
Hermite algorithms, print or verify results, or generate random instances.
Exit codes: 0 success / checks pass, 1 verification failure or rank
deficiency, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional

from .errors import NotCleared, ParseError, RankDeficient, ShapeError
from .field import Derivation
from .hermite_linsys import hermite_via_linsys
from .matrix_elim import (
    HermiteResult,
    OreMatrix,
    hermite_elimination,
    random_full_rank_matrix,
    random_unimodular,
    ore_mat_mul,
)
from .parsing import format_instance, parse_instance, print_entry
from .verify import VerificationReport, verify_hermite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def matrix_doc(m: OreMatrix) -> dict:
    """JSON-friendly matrix document; entries stay exact as strings."""
    return {
        "rows": m.rows,
        "cols": m.cols,
        "derivation": m.derivation.value,
        "entries": [[print_entry(e) for e in row] for row in m.entries],
    }


def report_doc(report: VerificationReport) -> dict:
    return {
        "product_ok": report.product_ok,
        "shape_ok": report.shape_ok,
        "unimodular_ok": report.unimodular_ok,
        "degree_bounds_ok": report.degree_bounds_ok,
        "passed": report.passed,
        "details": dict(report.details),
    }


def _read_instance(path: str) -> OreMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read()).matrix


def run_hermite(a: OreMatrix, algorithm: str, jobs: int = 1) -> HermiteResult:
    if algorithm == "elim":
        return hermite_elimination(a)
    return hermite_via_linsys(a, jobs=max(1, jobs))


def _cmd_hermite(args: argparse.Namespace, out) -> int:
    a = _read_instance(args.input)
    if not a.is_square:
        print("error: hermite requires a square matrix", file=sys.stderr)
        return EXIT_FAIL
    result = run_hermite(a, args.algorithm, args.jobs)
    report = verify_hermite(a, result.U, result.H) if args.verify else None
    if args.json:
        doc = {
            "algorithm": args.algorithm,
            "diag_degrees": list(result.diag_degrees),
        }
        if result.probes is not None:
            doc["probes"] = result.probes
        if args.emit in ("h", "both"):
            doc["h"] = matrix_doc(result.H)
        if args.emit in ("u", "both"):
            doc["u"] = matrix_doc(result.U)
        if report is not None:
            doc["report"] = report_doc(report)
        print(json.dumps(doc, indent=2), file=out)
    else:
        if args.emit == "h":
            out.write(format_instance(result.H))
        elif args.emit == "u":
            out.write(format_instance(result.U))
        else:
            out.write("# H\n")
            out.write(format_instance(result.H))
            out.write("# U\n")
            out.write(format_instance(result.U))
    if report is not None and not report.passed:
        print("verification failed: " + "; ".join(report.details.values()),
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_check(args: argparse.Namespace, out) -> int:
    a = _read_instance(args.input)
    u = _read_instance(args.u)
    h = _read_instance(args.h)
    if u.derivation is not a.derivation or h.derivation is not a.derivation:
        raise ParseError("derivation tags of A, U, H disagree")
    report = verify_hermite(a, u, h)
    if args.json:
        print(json.dumps(report_doc(report), indent=2), file=out)
    else:
        for name, ok in (
            ("product U*A = H", report.product_ok),
            ("hermite shape", report.shape_ok),
            ("unimodular U", report.unimodular_ok),
            ("degree bounds", report.degree_bounds_ok),
        ):
            print(f"{name}: {'ok' if ok else 'FAIL'}", file=out)
        for key, msg in report.details.items():
            print(f"  {key}: {msg}", file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_random(args: argparse.Namespace, out) -> int:
    rng = random.Random(args.seed)
    a = random_full_rank_matrix(
        rng, args.n, Derivation.STANDARD,
        max_deg_d=args.degd, max_deg_t=args.degt,
    )
    if args.unimodular_steps > 0:
        m = random_unimodular(args.n, args.unimodular_steps, args.seed)
        a = ore_mat_mul(m, a)
    out.write(format_instance(a))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orehnf",
        description="Hermite normal forms of matrices of differential operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_h = sub.add_parser("hermite", help="compute the Hermite form of an instance")
    p_h.add_argument("--input", required=True, help="instance file")
    p_h.add_argument("--algorithm", choices=("elim", "linsys"), default="elim")
    p_h.add_argument("--emit", choices=("h", "u", "both"), default="h")
    p_h.add_argument("--verify", action="store_true",
                     help="verify the result and fail on any violation")
    p_h.add_argument("--jobs", type=int, default=1,
                     help="concurrent degree-search probes (linsys only)")
    p_h.add_argument("--json", action="store_true", help="structured output")

    p_c = sub.add_parser("check", help="verify a claimed (A, U, H) triple")
    p_c.add_argument("--input", required=True, help="instance file for A")
    p_c.add_argument("--u", required=True, help="instance file for U")
    p_c.add_argument("--h", required=True, help="instance file for H")
    p_c.add_argument("--json", action="store_true", help="structured output")

    p_r = sub.add_parser("random", help="emit a reproducible random instance")
    p_r.add_argument("--n", type=int, required=True)
    p_r.add_argument("--degd", type=int, default=1, help="max degree in D")
    p_r.add_argument("--degt", type=int, default=1, help="max degree in t")
    p_r.add_argument("--seed", type=int, required=True)
    p_r.add_argument("--unimodular-steps", type=int, default=0,
                     help="premultiply by this many random elementary operations")
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "hermite":
            return _cmd_hermite(args, out)
        if args.command == "check":
            return _cmd_check(args, out)
        return _cmd_random(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RankDeficient, NotCleared, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def entrypoint() -> None:  # console-script wrapper
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
