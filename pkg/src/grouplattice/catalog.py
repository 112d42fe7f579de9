"""Inventory of small groups given by permutation generators, and the census over it.

Catalog files are line-oriented UTF-8.  Each non-blank, non-comment line is::

    <order> <index> <name> <degree>; <gen>; <gen>; ...

``<gen>`` is a permutation of ``0 .. degree-1`` in disjoint cycle notation,
e.g. ``(0 1 2)(3 4)``; the identity is ``()``.  Lines starting with ``#`` are
comments.  ``<name>`` contains no whitespace or ``;``.
"""

from __future__ import annotations

import os
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .groups import MAX_ORDER, Group, GroupError, are_isomorphic, from_permutations, invariant_key
from .groupspec import group_from_spec
from .lattice import count_subgroups
from .structure import is_tilde_fixed

EXTRA_CATALOG_ENV = "GROUPLATTICE_EXTRA_CATALOG"

# number of isomorphism types of groups of each order
KNOWN_GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
    13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2,
    23: 1, 24: 15, 27: 5, 32: 51, 81: 15,
}

EMBEDDED_ORDERS = tuple(range(1, 25)) + (27,)

# Published list of groups with no cyclic central Sylow subgroup and at most
# 12 subgroups, as (spec, subgroup count).  D8 (10 subgroups) is absent from
# it although it qualifies; the census reports it as unexpected.
REFERENCE_TILDE_FIXED = (
    ("C1", 1),
    ("C2xC2", 5),
    ("C3xC3", 6),
    ("S3", 6),
    ("Q8", 6),
    ("C2xC4", 8),
    ("C5xC5", 8),
    ("D10", 8),
    ("C4:C3[2]", 8),
    ("C3xC9", 10),
    ("C7xC7", 10),
    ("D14", 10),
    ("A4", 10),
    ("C3:C7[2]", 10),
    ("C4:C5[4]", 10),
    ("C8:C3[2]", 10),
    ("E27", 10),
    ("C2xC8", 11),
    ("Q16", 11),
    ("M16", 11),
    ("C4:C7[6]", 12),
    ("C9:C7[2]", 12),
    ("C8:C5[4]", 12),
    ("C16:C3[2]", 12),
)


class CatalogParseError(ValueError):
    def __init__(self, message: str, line: int, source: str = "<catalog>"):
        super().__init__(f"{source}:{line}: {message}")
        self.line = line


class CatalogIntegrityError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    order: int
    index: int
    name: str
    degree: int
    generators: tuple[tuple[int, ...], ...]

    def group(self) -> Group:
        return _entry_group(self)

    def to_line(self) -> str:
        gens = "; ".join(format_cycles(g) for g in self.generators)
        head = f"{self.order} {self.index} {self.name} {self.degree}"
        return f"{head}; {gens}" if gens else head


@lru_cache(maxsize=None)
def _entry_group(entry: CatalogEntry) -> Group:
    return from_permutations(
        entry.degree, entry.generators, label=entry.name, max_order=max(MAX_ORDER, entry.order)
    )


@dataclass(frozen=True)
class CensusRow:
    entry: CatalogEntry
    subgroup_count: int
    tilde_fixed: bool


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    text = text.strip()
    if not text or _CYCLE.sub("", text).strip():
        raise ValueError(f"malformed permutation {text!r}")
    perm = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE.findall(text):
        pts = [int(v) for v in body.replace(",", " ").split()]
        for v in pts:
            if not 0 <= v < degree:
                raise ValueError(f"point {v} outside 0..{degree - 1}")
            if v in seen:
                raise ValueError(f"point {v} repeated in {text!r}")
            seen.add(v)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


def format_cycles(perm: Sequence[int]) -> str:
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def parse_catalog(text: str, source: str = "<catalog>") -> list[CatalogEntry]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *gens = line.split(";")
        fields = head.split()
        if len(fields) != 4:
            raise CatalogParseError("expected '<order> <index> <name> <degree>'", lineno, source)
        try:
            order, index, degree = int(fields[0]), int(fields[1]), int(fields[3])
        except ValueError:
            raise CatalogParseError("order, index and degree must be integers", lineno, source) from None
        if order < 1 or degree < 1:
            raise CatalogParseError("order and degree must be positive", lineno, source)
        try:
            perms = tuple(parse_cycles(g, degree) for g in gens if g.strip())
        except ValueError as exc:
            raise CatalogParseError(str(exc), lineno, source) from None
        entries.append(CatalogEntry(order, index, fields[2], degree, perms))
    return entries


def check_integrity(entries: Iterable[CatalogEntry], *, expected_counts: dict[int, int] | None = None) -> None:
    """Closure sizes, unique keys, and pairwise non-isomorphism within each order."""
    by_order: dict[int, list[CatalogEntry]] = defaultdict(list)
    keys = set()
    for e in entries:
        if (e.order, e.index) in keys:
            raise CatalogIntegrityError(f"duplicate key ({e.order}, {e.index}) for {e.name}")
        keys.add((e.order, e.index))
        try:
            g = e.group()
        except GroupError as exc:
            raise CatalogIntegrityError(f"{e.name}: {exc}") from exc
        if g.order != e.order:
            raise CatalogIntegrityError(f"{e.name}: generators give order {g.order}, declared {e.order}")
        by_order[e.order].append(e)
    for order, group_entries in by_order.items():
        buckets: dict[tuple, list[CatalogEntry]] = defaultdict(list)
        for e in group_entries:
            key = invariant_key(e.group())
            for other in buckets[key]:
                if are_isomorphic(e.group(), other.group()):
                    raise CatalogIntegrityError(f"{e.name} is isomorphic to {other.name} (order {order})")
            buckets[key].append(e)
    if expected_counts is not None:
        for order, n in sorted(expected_counts.items()):
            have = len(by_order.get(order, []))
            if have != n:
                raise CatalogIntegrityError(f"order {order}: {have} groups, expected {n}")


@lru_cache(maxsize=1)
def _embedded() -> tuple[CatalogEntry, ...]:
    text = resources.files("grouplattice").joinpath("data/embedded.txt").read_text("utf-8")
    entries = parse_catalog(text, "embedded.txt")
    check_integrity(entries, expected_counts={k: KNOWN_GROUP_COUNTS[k] for k in EMBEDDED_ORDERS})
    return tuple(sorted(entries, key=lambda e: (e.order, e.index)))


def load_embedded() -> list[CatalogEntry]:
    """All groups of order 1..24 and 27, integrity-checked on first load."""
    return list(_embedded())


def load_file(path: str | os.PathLike) -> list[CatalogEntry]:
    path = Path(path)
    entries = parse_catalog(path.read_text("utf-8"), str(path))
    check_integrity(entries)
    return sorted(entries, key=lambda e: (e.order, e.index))


def default_extra_paths() -> list[Path]:
    """Extra catalog files named by the environment variable (os.pathsep separated)."""
    value = os.environ.get(EXTRA_CATALOG_ENV, "")
    return [Path(p) for p in value.split(os.pathsep) if p]


def census(entries: Iterable[CatalogEntry]) -> list[CensusRow]:
    rows = []
    for e in sorted(entries, key=lambda e: (e.order, e.index)):
        g = e.group()
        rows.append(CensusRow(e, count_subgroups(g), is_tilde_fixed(g)))
    return rows


@dataclass(frozen=True)
class InventoryItem:
    """A group with no cyclic central Sylow subgroup, with its subgroup count."""

    name: str
    group: Group
    count: int


@dataclass(frozen=True)
class CensusComparison:
    matched: tuple[tuple[str, CensusRow], ...]
    missing: tuple[tuple[str, int], ...]
    unexpected: tuple[CensusRow, ...]
    count_mismatch: tuple[tuple[str, int, CensusRow], ...]

    @property
    def ok(self) -> bool:
        return not (self.missing or self.unexpected or self.count_mismatch)


@lru_cache(maxsize=None)
def _known_group(spec: str) -> Group:
    return group_from_spec(spec)


def compare_census(rows: Sequence[CensusRow], max_count: int = 12) -> CensusComparison:
    """Match tilde-fixed census rows with at most ``max_count`` subgroups to the reference list.

    Only reference groups whose order occurs among the census rows are expected.
    """
    orders = {r.entry.order for r in rows}
    expected = [(s, c) for s, c in REFERENCE_TILDE_FIXED if c <= max_count and _known_group(s).order in orders]
    found = [r for r in rows if r.tilde_fixed and r.subgroup_count <= max_count]
    matched, unexpected, mismatch = [], [], []
    remaining = list(expected)
    for r in found:
        g = r.entry.group()
        hit = next((sc for sc in remaining if are_isomorphic(_known_group(sc[0]), g)), None)
        if hit is None:
            unexpected.append(r)
            continue
        remaining.remove(hit)
        if hit[1] != r.subgroup_count:
            mismatch.append((hit[0], hit[1], r))
        else:
            matched.append((hit[0], r))
    return CensusComparison(tuple(matched), tuple(remaining), tuple(unexpected), tuple(mismatch))


@lru_cache(maxsize=None)
def tilde_inventory(max_count: int = 12) -> tuple[InventoryItem, ...]:
    """All groups equal to their own tilde group with at most ``max_count`` subgroups.

    Orders covered by the embedded catalog come from an exhaustive census.  The
    reference groups outside the catalog's orders are built from their specs
    and re-verified (tilde-fixed, subgroup count) one by one.
    """
    rows = census(load_embedded())
    items = [
        InventoryItem(r.entry.name, r.entry.group(), r.subgroup_count)
        for r in rows
        if r.tilde_fixed and r.subgroup_count <= max_count
    ]
    covered = {r.entry.order for r in rows}
    for spec, expected in REFERENCE_TILDE_FIXED:
        g = _known_group(spec)
        if g.order in covered or expected > max_count:
            continue
        count = count_subgroups(g)
        if count != expected or not is_tilde_fixed(g):
            raise CatalogIntegrityError(f"{spec}: expected a tilde-fixed group with {expected} subgroups")
        items.append(InventoryItem(spec, g, count))
    return tuple(sorted(items, key=lambda it: (it.count, it.group.order, it.name)))


def per_order_counts(entries: Iterable[CatalogEntry]) -> dict[int, int]:
    return dict(sorted(Counter(e.order for e in entries).items()))
