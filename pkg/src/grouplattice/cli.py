"""Command-line interface.

Exit status: 0 on success, 1 when a verification finds a mismatch, 2 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict
from typing import Sequence

from .catalog import (
    CatalogIntegrityError,
    CatalogParseError,
    census,
    compare_census,
    default_extra_paths,
    load_embedded,
    load_file,
    tilde_inventory,
)
from .formulas import cross_validate
from .groups import MAX_ORDER
from .groupspec import SpecSemanticError, SpecSyntaxError, group_from_spec
from .lattice import all_subgroups, dot_export, lattice_json
from .similarity import class_sequence, enumerate_classes, similar, tilde_sequence

MAX_TERMS = 12


class UsageError(Exception):
    pass


def _group(text: str, max_order: int = MAX_ORDER):
    try:
        return group_from_spec(text, max_order=max_order)
    except SpecSyntaxError as exc:
        raise UsageError(f"syntax error: {exc}") from exc
    except SpecSemanticError as exc:
        raise UsageError(f"invalid group: {exc}") from exc


def cmd_count(args, out) -> int:
    g = _group(args.spec, args.max_order)
    print(all_subgroups(g).count, file=out)
    return 0


def cmd_lattice(args, out) -> int:
    lat = all_subgroups(_group(args.spec))
    out.write(lattice_json(lat) if args.json else dot_export(lat))
    return 0


def cmd_verify_formulas(args, out) -> int:
    report = cross_validate(args.max_order)
    print(f"{'family':<10} {'parameters':<22} {'order':>6} {'table':>6} {'formula':>8} {'lattice':>8}  status", file=out)
    for c in report:
        enum = "-" if c.enumerated is None else str(c.enumerated)
        print(
            f"{c.family:<10} {c.params:<22} {c.order:>6} {c.expected:>6} {c.formula:>8} {enum:>8}  {c.status}",
            file=out,
        )
    failed = sum(c.status == "FAIL" for c in report)
    checked = sum(c.status == "ok" for c in report)
    skipped = sum(c.status == "skipped" for c in report)
    print(f"# {checked} ok, {failed} failed, {skipped} skipped (order > {args.max_order})", file=out)
    return 1 if failed else 0


def cmd_census(args, out) -> int:
    entries = [e for e in load_embedded()]
    extra = args.extra if args.extra else [str(p) for p in default_extra_paths()]
    try:
        for path in extra:
            entries.extend(load_file(path))
    except OSError as exc:
        raise UsageError(f"cannot read catalog: {exc}") from exc
    entries = [e for e in entries if e.order <= args.max_order]
    rows = census(entries)
    print("order\tindex\tname\tsubgroups\ttilde_fixed", file=out)
    for r in rows:
        print(f"{r.entry.order}\t{r.entry.index}\t{r.entry.name}\t{r.subgroup_count}\t{str(r.tilde_fixed).lower()}", file=out)

    print("# per order: groups, tilde-fixed with <= 12 subgroups, fewest subgroups among non-abelian", file=out)
    by_order = defaultdict(list)
    for r in rows:
        by_order[r.entry.order].append(r)
    for order, rs in sorted(by_order.items()):
        small = sum(r.tilde_fixed and r.subgroup_count <= 12 for r in rs)
        nonab = [r.subgroup_count for r in rs if not r.entry.group().is_abelian]
        fewest = min(nonab) if nonab else "-"
        print(f"# {order}\t{len(rs)}\t{small}\t{fewest}", file=out)

    cmp = compare_census(rows)
    print("# reference comparison (tilde-fixed, <= 12 subgroups)", file=out)
    for spec, r in cmp.matched:
        print(f"matched\t{spec}\t{r.entry.name}\t{r.subgroup_count}", file=out)
    for spec, count in cmp.missing:
        print(f"missing\t{spec}\t-\t{count}", file=out)
    for r in cmp.unexpected:
        print(f"unexpected\t-\t{r.entry.name}\t{r.subgroup_count}", file=out)
    for spec, count, r in cmp.count_mismatch:
        print(f"count-mismatch\t{spec}\t{r.entry.name}\t{r.subgroup_count} (reference {count})", file=out)
    return 0 if cmp.ok else 1


def _check_terms(n: int) -> None:
    if not 1 <= n <= MAX_TERMS:
        raise UsageError(f"the inventory covers subgroup counts 1..{MAX_TERMS}, got {n}")


def cmd_sequence(args, out) -> int:
    _check_terms(args.terms)
    inv = tilde_inventory(MAX_TERMS)
    seq = tilde_sequence(inv, args.terms) if args.tilde else class_sequence(inv, args.terms)
    print(" ".join(map(str, seq)), file=out)
    return 0


def cmd_classes(args, out) -> int:
    _check_terms(args.n)
    classes = enumerate_classes(args.n, tilde_inventory(MAX_TERMS))
    if args.json:
        json.dump([c.as_dict() for c in classes], out, indent=2)
        out.write("\n")
        return 0
    print("class\trepresentative\tsubgroups", file=out)
    for c in classes:
        print(f"{c.display_name}\t{c.concrete_spec}\t{c.subgroup_count}", file=out)
    return 0


def cmd_similar(args, out) -> int:
    print(str(similar(_group(args.first), _group(args.second))).lower(), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="grouplattice",
        description="Subgroup lattices, tilde reduction and similarity classes of small groups.",
        epilog="Group specs: C12, D8 (order 8), Q16, A4 (degree 4), S3, E27, M16, "
        "C4:C3[2] (C4 acting on C3 by x -> x^2), products joined with 'x'.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="print the number of subgroups")
    p.add_argument("spec")
    p.add_argument("--max-order", type=int, default=MAX_ORDER)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("lattice", help="emit the subgroup lattice as DOT or JSON")
    p.add_argument("spec")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="Hasse diagram (default)")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("verify-formulas", help="check closed-form counts against enumeration")
    p.add_argument("--max-order", type=int, default=MAX_ORDER)
    p.set_defaults(func=cmd_verify_formulas)

    p = sub.add_parser("census", help="subgroup counts over the catalog, compared with the reference list")
    p.add_argument("--max-order", type=int, default=10**6)
    p.add_argument("--extra", action="append", metavar="FILE", help="additional catalog file (repeatable)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("sequence", help="print the class sequence (or --tilde: tilde-fixed group counts)")
    p.add_argument("--terms", type=int, default=MAX_TERMS)
    p.add_argument("--tilde", action="store_true")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("classes", help="list similarity classes with exactly N subgroups")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("similar", help="print whether two groups are similar")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_similar)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, CatalogParseError, CatalogIntegrityError) as exc:
        print(f"grouplattice: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
