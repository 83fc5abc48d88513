"""Command-line interface.

Commands:
  analyze <file> [--json]                  full structure report for one table
  verify --suite <name> [--max-n K]        run a property-verification suite
  enumerate --n K --class C [--up-to-iso] [--emit DIR]
  classify-medial-racks --n K

Table files (.lqt) are plain text: '#' comment lines, then the order n, then
n rows of n whitespace-separated 1-based entries (row a lists a*b for b
across the columns).  All user-facing element labels are 1-based; internals
are 0-based.

Exit codes: 0 success, 1 input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .commutator import center_congruence, series_and_class
from .congruence import congruence_lattice, norm_admissible
from .constructions import (
    classify_connected_medial_racks,
    spelling_search,
    to_quandle,
)
from .core import LeftQuasigroup, cayley_kernel, identity_profile
from .enumeration import EnumSpec, enumerate_tables
from .errors import LqError, NotLeftQuasigroup
from .partition import Partition
from .suites import run_suite

CON_REPORT_CAP = 8


def parse_lqt(text: str) -> LeftQuasigroup:
    """Parse the .lqt format (1-based entries) into a table."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise LqError("empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise LqError(f"first line must be the order, got {lines[0]!r}") from None
    if n < 1:
        raise LqError("order must be positive")
    if len(lines) < n + 1:
        raise LqError(f"expected {n} table rows, found {len(lines) - 1}")
    table = []
    for i, ln in enumerate(lines[1:n + 1]):
        entries = ln.split()
        if len(entries) != n:
            raise NotLeftQuasigroup(i)
        try:
            row = [int(e) - 1 for e in entries]
        except ValueError:
            raise NotLeftQuasigroup(i) from None
        if any(not 0 <= v < n for v in row):
            raise NotLeftQuasigroup(i)
        table.append(row)
    return LeftQuasigroup(table)


def format_lqt(q: LeftQuasigroup, comment: str | None = None) -> str:
    out = []
    if comment:
        out.append(f"# {comment}")
    out.append(str(q.n))
    for row in q.rows:
        out.append(" ".join(str(v + 1) for v in row))
    return "\n".join(out) + "\n"


def _blocks_1based(p: Partition) -> list[list[int]]:
    return [[x + 1 for x in block] for block in p.blocks()]


def build_report(q: LeftQuasigroup) -> dict:
    """Every analyzable field for one table, in a fixed key order."""
    prof = identity_profile(q)
    report: dict = {"order": q.n}
    report["profile"] = prof.flags()
    report["lmlt_order"] = q.lmlt.order
    report["dis_order"] = q.dis.order
    lam = cayley_kernel(q)
    report["cayley_kernel"] = _blocks_1based(lam)
    if q.n <= CON_REPORT_CAP:
        con = congruence_lattice(q)
        report["con_size"] = len(con)
        report["congruences"] = [_blocks_1based(p) for p in con]
        report["norm_size"] = len(norm_admissible(q))
        report["center"] = _blocks_1based(center_congruence(q))
        series = series_and_class(q)
        report["is_solvable"] = series.is_solvable
        report["is_nilpotent"] = series.is_nilpotent
        report["solvable_length"] = series.solvable_length
        report["nilpotent_length"] = series.nilpotent_length
        if prof.is_medial and series.is_nilpotent and series.nilpotent_length > 2:
            raise LqError("inconsistent report: medial table with nilpotence "
                          "length above 2")
    else:
        report["con_size"] = None
        report["congruences"] = None
        report["norm_size"] = None
        report["center"] = None
        report["is_solvable"] = None
        report["is_nilpotent"] = None
        report["solvable_length"] = None
        report["nilpotent_length"] = None
    report["multipotency_class"] = prof.multipotency_class
    report["reductivity_level"] = prof.reductivity_level
    witness = spelling_search(q, max_len=6) if q.n <= 6 else None
    report["spelling_witness"] = (
        {"wplus": list(witness.wplus), "wminus": list(witness.wminus)}
        if witness else None)
    if prof.is_semimedial and prof.is_2_divisible:
        pair = to_quandle(q)
        report["associated_quandle"] = [[v + 1 for v in row]
                                        for row in pair.quandle.table()]
        report["squaring_automorphism"] = [v + 1 for v in pair.f]
    else:
        report["associated_quandle"] = None
        report["squaring_automorphism"] = None
    return report


def render_text(report: dict) -> str:
    lines = [f"order: {report['order']}"]
    flags = [k for k, v in report["profile"].items() if v is True]
    lines.append("profile: " + (", ".join(flags) if flags else "(none)"))
    for key in ("multipotency_class", "reductivity_level"):
        if report["profile"][key] is not None:
            lines.append(f"{key}: {report['profile'][key]}")
    lines.append(f"lmlt_order: {report['lmlt_order']}")
    lines.append(f"dis_order: {report['dis_order']}")
    lines.append(f"cayley_kernel: {report['cayley_kernel']}")
    if report["con_size"] is not None:
        lines.append(f"con_size: {report['con_size']}")
        lines.append(f"congruences: {report['congruences']}")
        lines.append(f"norm_size: {report['norm_size']}")
        lines.append(f"center: {report['center']}")
        lines.append(f"is_solvable: {report['is_solvable']} "
                     f"(length {report['solvable_length']})")
        lines.append(f"is_nilpotent: {report['is_nilpotent']} "
                     f"(length {report['nilpotent_length']})")
    if report["spelling_witness"]:
        lines.append(f"spelling_witness: {report['spelling_witness']}")
    if report["associated_quandle"] is not None:
        lines.append(f"associated_quandle: {report['associated_quandle']}")
        lines.append(f"squaring_automorphism: {report['squaring_automorphism']}")
    return "\n".join(lines)


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        q = parse_lqt(Path(args.file).read_text())
        report = build_report(q)
    except FileNotFoundError:
        print(f"no such file: {args.file}", file=sys.stderr)
        return 1
    except LqError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        results = run_suite(args.suite, args.max_n)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    for res in results:
        print(res.line())
    return 0 if all(r.passed for r in results) else 2


def cmd_enumerate(args: argparse.Namespace) -> int:
    try:
        spec = EnumSpec(args.n, args.klass, args.up_to_iso, args.limit)
        tables = list(enumerate_tables(spec))
    except (LqError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    label = "isomorphism classes" if args.up_to_iso else "tables"
    print(f"{len(tables)} {label} of order {args.n}, class {args.klass}")
    if args.emit:
        outdir = Path(args.emit)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, q in enumerate(tables):
            name = outdir / f"{args.klass}_{args.n}_{i:05d}.lqt"
            name.write_text(format_lqt(q, comment=f"class={args.klass} n={args.n}"))
        print(f"wrote {len(tables)} files to {outdir}")
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    try:
        classes = classify_connected_medial_racks(args.n)
    except LqError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    print(f"{len(classes)} connected medial racks of order {args.n} "
          "up to isomorphism")
    for q in classes:
        print("  " + "; ".join(" ".join(str(v + 1) for v in row)
                               for row in q.rows))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lquasi",
        description="Finite left quasigroup analyzer (Cayley tables)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a .lqt table file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True,
                   choices=["galois", "commutator", "semimedial", "medial",
                            "functor", "classification", "spelling", "all"])
    p.add_argument("--max-n", type=int, default=None, dest="max_n")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="enumerate tables of one order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="klass", default="all",
                   choices=["all", "rack", "quandle", "semimedial", "medial",
                            "2-divisible-semimedial", "latin"])
    p.add_argument("--up-to-iso", action="store_true", dest="up_to_iso")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--emit", default=None, metavar="DIR")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify-medial-racks",
                       help="connected medial racks of one order")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
