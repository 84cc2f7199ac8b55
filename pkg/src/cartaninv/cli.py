"""Command-line driver: verification grids, invariant tables and a raw SNF tool.

Exit status is 0 when every report passes, 1 when any report fails or errors,
and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import List, Optional, Sequence

from .arith import c_pr, r_ell, theta
from .blocks import block_cores, verify_block_cartan, verify_global_cartan, verify_wreath_shadow
from .laws import law_reports
from .linalg import MatrixParseError, parse_matrix, snf
from .partitions import enumerate_partitions, is_prime
from .reduction import reduction_suite
from .report import VerificationReport, dump_json
from .wreath import verify_prime_power_x

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cartaninv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification grid")
    vsub = verify.add_subparsers(dest="target", required=True)

    def with_json(p):
        p.add_argument("--json", metavar="PATH", help="also write the reports as a JSON array")
        return p

    vx = with_json(vsub.add_parser("x", help="scalar wreath matrices at a prime power"))
    vx.add_argument("--p", type=int, required=True)
    vx.add_argument("--r", type=_nonneg, default=1)
    vx.add_argument("--w-max", type=_nonneg, default=4)

    vc = with_json(vsub.add_parser("cartan", help="Cartan matrices of symmetric groups"))
    vc.add_argument("--ell", type=int, required=True)
    vc.add_argument("--n-max", type=_nonneg, default=6)
    vc.add_argument("--blockwise", action="store_true", help="also check every block separately")

    vr = with_json(vsub.add_parser("reduction", help="p-power reduction suite"))
    vr.add_argument("--p", type=int, required=True)
    vr.add_argument("--r", type=_nonneg, default=1)
    vr.add_argument("--w-max", type=_nonneg, default=4)

    vw = with_json(vsub.add_parser("wreath-ops", help="randomised wreath operator laws"))
    vw.add_argument("--trials", type=_nonneg, default=50)
    vw.add_argument("--seed", type=int, default=0)

    table = sub.add_parser("table", help="print an invariant as CSV")
    table.add_argument("kind", help="theta, cpr or rell")
    table.add_argument("--ell", type=_nonneg)
    table.add_argument("--p", type=int)
    table.add_argument("--r", type=_nonneg)
    table.add_argument("--w", type=_nonneg)
    table.add_argument("--n", type=_nonneg)

    s = sub.add_parser("snf", help="invariant factors of an integer matrix file")
    s.add_argument("path")
    return parser


def _emit(reports: List[VerificationReport], json_path: Optional[str]) -> int:
    for rep in reports:
        print(rep.line())
    if json_path:
        dump_json(reports, json_path)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _require_prime_arg(parser, p: int) -> None:
    if not is_prime(p):
        parser.error(f"--p must be prime, got {p}")


def _cmd_verify(args, parser) -> int:
    reports: List[VerificationReport] = []
    if args.target == "x":
        _require_prime_arg(parser, args.p)
        reports = [verify_prime_power_x(args.p, args.r, w) for w in range(args.w_max + 1)]
    elif args.target == "cartan":
        if args.ell < 2:
            parser.error(f"--ell must be at least 2, got {args.ell}")
        for n in range(args.n_max + 1):
            reports.append(verify_global_cartan(args.ell, n))
            if args.blockwise:
                for core in block_cores(n, args.ell):
                    reports.append(verify_block_cartan(args.ell, n, core))
                    reports.append(verify_wreath_shadow(args.ell, n, core))
    elif args.target == "reduction":
        _require_prime_arg(parser, args.p)
        for w in range(args.w_max + 1):
            reports.extend(reduction_suite(args.p, args.r, w))
    elif args.target == "wreath-ops":
        reports = law_reports(args.trials, args.seed)
    return _emit(reports, args.json)


def _need(parser, args, *names) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        parser.error(f"table {args.kind} requires {', '.join(missing)}")


def _cmd_table(args, parser) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.kind == "theta":
        _need(parser, args, "ell", "w")
        rows = [(lam, theta(lam, args.ell)) for lam in enumerate_partitions(args.w)]
    elif args.kind == "cpr":
        _need(parser, args, "p", "r", "w")
        _require_prime_arg(parser, args.p)
        rows = [(lam, c_pr(lam, args.p, args.r)) for lam in enumerate_partitions(args.w)]
    elif args.kind == "rell":
        _need(parser, args, "ell", "n")
        if args.ell < 1:
            parser.error("--ell must be positive for rell")
        rows = [(lam, r_ell(lam, args.ell)) for lam in enumerate_partitions(args.n)
                if all(a % args.ell for a in lam)]
    else:
        parser.error(f"unknown table kind {args.kind!r}; expected theta, cpr or rell")
    writer.writerow(["partition", "value"])
    for lam, value in rows:
        writer.writerow([str(lam), value])
    return EXIT_OK


def _cmd_snf(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            matrix = parse_matrix(fh.read())
    except OSError as exc:
        print(f"error: cannot read {args.path}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    except MatrixParseError as exc:
        print(f"error: {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not matrix.is_integral():
        print(f"error: {args.path}: matrix has non-integer entries", file=sys.stderr)
        return EXIT_USAGE
    for d in snf(matrix).factors:
        print(d)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args, parser)
    if args.command == "table":
        return _cmd_table(args, parser)
    return _cmd_snf(args)


if __name__ == "__main__":
    sys.exit(main())
