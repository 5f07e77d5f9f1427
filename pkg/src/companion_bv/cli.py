"""Command-line entry point.

Exit codes: 0 all checks pass, 1 violations found, 2 input or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import harness
from .bounds import chain_report
from .errors import BVError, ChainViolationError, SpecFileError
from .prob import CdfModel, check_prob_chain, expectation
from .quadrature import CellRule, adaptive_integrate, composite_integrate
from .specfile import function_from_dict, load_document, load_function

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _dump_json(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_csv(header: Sequence[str], rows: Sequence[Sequence], out: str | None) -> None:
    # values are formatted with repr/str, so the decimal separator is always '.'
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    if out:
        Path(out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def cmd_bound(args) -> int:
    f = load_function(args.fn)
    report = chain_report(f, args.x, args.p)
    doc = report.to_dict()
    bad = report.violations()
    doc["violations"] = [{"member_pair": f"{lo}<={hi}", "lhs": u, "rhs": w} for lo, hi, u, w in bad]
    doc["slack"] = report.slack()
    _dump_json(doc, args.out)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_integrate(args) -> int:
    f = load_function(args.fn)
    rule = CellRule(args.lam)
    if args.cells is not None:
        res = composite_integrate(f, args.cells, rule, args.cert)
    else:
        res = adaptive_integrate(f, args.tol, rule, args.cert, args.max_cells)
    doc = res.to_dict(with_cells=not args.cells_csv)
    doc["lambda"] = args.lam
    doc["exact"] = f.integral()
    doc["enclosure"] = list(res.enclosure)
    if args.cells_csv:
        rows = [[repr(c.left), repr(c.right), repr(c.estimate), repr(c.bound)] for c in res.cells]
        _write_csv(("left", "right", "estimate", "bound"), rows, args.cells_csv)
    _dump_json(doc, args.out)
    # the enclosure is computed by the same exact arithmetic it certifies, so
    # a miss can only come from a bug
    return EXIT_OK if res.contains(doc["exact"], 1e-12 * (1 + abs(doc["exact"]))) else EXIT_VIOLATION


def cmd_verify(args) -> int:
    cfg = harness.CorpusConfig(args.seed, args.count)
    summary = harness.verify_corpus(cfg, args.cdf_count, args.grid, args.p_list)
    rows = [v.row() for v in summary.violations]
    _write_csv(harness.CSV_COLUMNS, rows, args.report)
    print(
        f"functions={summary.functions} cdfs={summary.cdfs} symmetric={summary.symmetric} "
        f"checks={summary.checks} identity={summary.identity_checks} lemma={summary.lemma_checks} "
        f"kernel_cases={summary.discrepancy_cases} corrected_match={summary.corrected_match} "
        f"printed_mismatch={summary.printed_mismatch_nondegenerate}/{summary.nondegenerate} "
        f"violations={len(summary.violations)}",
        file=sys.stderr,
    )
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def cmd_prob(args) -> int:
    doc = load_document(args.cdf)
    if not isinstance(doc, dict) or doc.get("kind") != "cdf":
        raise SpecFileError("kind", 'CDF spec files must declare "kind": "cdf"')
    cdf = CdfModel(function_from_dict(doc))
    try:
        report = check_prob_chain(cdf, args.x, args.p)
        bad = []
    except ChainViolationError as exc:
        report = exc.report
        bad = report.violations()
    out = report.to_dict()
    out["expectation"] = expectation(cdf)
    out["violations"] = [{"member_pair": f"{lo}<={hi}", "lhs": u, "rhs": w} for lo, hi, u, w in bad]
    _dump_json(out, args.out)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_probe(args) -> int:
    rows = [[args.family, repr(eps), repr(harness.sharpness_probe(args.family, eps))] for eps in args.eps]
    _write_csv(("family", "epsilon", "ratio"), rows, args.out)
    return EXIT_OK


def cmd_discrepancy(args) -> int:
    f = load_function(args.fn)
    rep = harness.kernel_discrepancy_report(f, args.x, args.p)
    _dump_json(rep.to_dict(), args.out)
    return EXIT_OK if rep.corrected_matches else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="companion-bv",
        description="Companion Ostrowski bounds for piecewise monotone functions of bounded variation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="bound chain at one point, as JSON")
    p.add_argument("--fn", required=True, help="function spec JSON")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--p", type=float, default=None, help="Hölder exponent p > 1")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("integrate", help="certified companion-rule quadrature")
    p.add_argument("--fn", required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--cells", type=int, help="uniform composite rule with this many cells")
    mode.add_argument("--tol", type=float, help="adaptive bisection down to this error bound")
    p.add_argument("--lambda", dest="lam", type=float, default=0.25)
    p.add_argument("--cert", choices=("coarse", "refined"), default="refined")
    p.add_argument("--max-cells", type=int, default=65536)
    p.add_argument("--out")
    p.add_argument("--cells-csv", help="write the per-cell table as CSV")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("verify", help="check every chain over a seeded corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--cdf-count", type=int, default=None, help="number of CDFs (default count/5)")
    p.add_argument("--grid", type=int, default=65)
    p.add_argument("--p-list", type=_float_list, default=[1.5, 2.0, 3.0, 4.0])
    p.add_argument("--report", help="violation CSV path (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prob", help="CDF bound chain at one point, as JSON")
    p.add_argument("--cdf", required=True, help='spec JSON with "kind": "cdf"')
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("probe", help="sharpness ratio table as CSV")
    p.add_argument("--family", choices=harness.PROBE_FAMILIES, required=True)
    p.add_argument("--eps", type=_float_list, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("discrepancy", help="remainder via oracle, corrected and printed kernels")
    p.add_argument("--fn", required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_discrepancy)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BVError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
