"""Complete subgroup lattices of small groups.

Subgroups are bitsets over the parent's element indices (Python ints).  The
lattice is built by collecting all cyclic subgroups and joining every known
subgroup with every cyclic subgroup until nothing new appears.  Every subgroup
is a join of cyclic subgroups, so this fixpoint is the full lattice.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .groups import Group, _closure_mask


def _mask_to_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def _bits_to_mask(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group = field(repr=False)
    members: int
    order: int
    gens: tuple[int, ...] = ()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def __le__(self, other: Subgroup) -> bool:
        return self.members & ~other.members == 0

    def __lt__(self, other: Subgroup) -> bool:
        return self.members != other.members and self <= other

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(np.flatnonzero(self.mask).tolist())

    @property
    def mask(self) -> np.ndarray:
        return _bits_to_mask(self.members, self.parent.order)

    def sort_key(self) -> tuple:
        return (self.order, self.elements)

    def as_group(self, label: str | None = None) -> Group:
        return self.parent.induced(self.elements, label)

    def is_cyclic(self) -> bool:
        orders = self.parent.element_orders
        return bool(orders[list(self.elements)].max() == self.order)


def _subgroup(g: Group, mask: np.ndarray, gens: Iterable[int]) -> Subgroup:
    return Subgroup(g, _mask_to_bits(mask), int(mask.sum()), tuple(gens))


def closure(g: Group, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``g`` containing ``seed``."""
    seed = [int(s) for s in seed]
    for s in seed:
        if not 0 <= s < g.order:
            raise ValueError(f"{s} is not an element of {g.label}")
    gens = tuple(sorted(set(s for s in seed if s != 0)))
    return _subgroup(g, _closure_mask(g.table, gens), gens)


def cyclic_subgroups(g: Group) -> list[Subgroup]:
    """All distinct cyclic subgroups, each found once."""
    n = g.order
    covered = np.zeros(n, dtype=bool)
    out = []
    orders = g.element_orders
    rows = g.table
    for x in range(n):
        if covered[x]:
            continue
        o = int(orders[x])
        powers = [0]
        p = 0
        for _ in range(o - 1):
            p = int(rows[p, x])
            powers.append(p)
        # x^k generates the same subgroup when gcd(k, o) = 1
        for k in range(1, o + 1):
            if math.gcd(k, o) == 1:
                covered[powers[k % o]] = True
        mask = np.zeros(n, dtype=bool)
        mask[powers] = True
        out.append(_subgroup(g, mask, (x,) if x else ()))
    return out


@dataclass(frozen=True)
class SubgroupLattice:
    parent: Group
    subgroups: tuple[Subgroup, ...]

    @property
    def count(self) -> int:
        return len(self.subgroups)

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def index(self, h: Subgroup) -> int:
        return self.subgroups.index(h)

    def of_order(self, k: int) -> list[Subgroup]:
        return [h for h in self.subgroups if h.order == k]

    def covering_pairs(self) -> list[tuple[int, int]]:
        """Index pairs ``(i, j)`` where subgroup j covers subgroup i."""
        subs = self.subgroups
        edges = []
        for j, big in enumerate(subs):
            maximal: list[int] = []
            # canonical order sorts by subgroup order, so walking backwards
            # meets every container before anything it contains
            for i in range(j - 1, -1, -1):
                h = subs[i]
                if h.order < big.order and h <= big and not any(h <= subs[k] for k in maximal):
                    maximal.append(i)
            edges.extend((i, j) for i in sorted(maximal))
        return edges


def _join(g: Group, h: Subgroup, c: Subgroup) -> np.ndarray:
    t = g.table
    hm = h.mask
    he = np.flatnonzero(hm)
    x = c.gens[0]
    # if x normalizes h, the join is the product set h<x>
    if hm[t[t[g.inverses[x], he], x]].all():
        mask = np.zeros(g.order, dtype=bool)
        mask[t[np.ix_(he, np.flatnonzero(c.mask))].ravel()] = True
        return mask
    rows = g.rows
    gens = h.gens + c.gens
    seen = set(he.tolist())
    seen.update(c.elements)
    queue = list(seen)
    for y in queue:
        row = rows[y]
        for s in gens:
            z = row[s]
            if z not in seen:
                seen.add(z)
                queue.append(z)
    mask = np.zeros(g.order, dtype=bool)
    mask[queue] = True
    return mask


def all_subgroups(g: Group) -> SubgroupLattice:
    cyc = cyclic_subgroups(g)
    found: dict[int, Subgroup] = {h.members: h for h in cyc}
    work = deque(cyc)
    while work:
        h = work.popleft()
        for c in cyc:
            if c.members & ~h.members == 0 or h.members & ~c.members == 0:
                continue
            mask = _join(g, h, c)
            bits = _mask_to_bits(mask)
            if bits not in found:
                j = Subgroup(g, bits, int(mask.sum()), h.gens + c.gens)
                found[bits] = j
                work.append(j)
    subs = sorted(found.values(), key=Subgroup.sort_key)
    return SubgroupLattice(g, tuple(subs))


def count_subgroups(g: Group) -> int:
    return all_subgroups(g).count


def is_normal(g: Group, h: Subgroup) -> bool:
    if h.parent is not g and not (
        h.parent.order == g.order and np.array_equal(h.parent.table, g.table)
    ):
        raise ValueError("subgroup does not belong to this group")
    members = np.array(h.elements, dtype=np.int64)
    t = g.table
    inv = g.inverses
    mask = h.mask
    for s in g.generators:
        conj = t[t[inv[s], members], s]
        if not mask[conj].all():
            return False
    return True


def dot_export(lat: SubgroupLattice) -> str:
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for i, h in enumerate(lat.subgroups):
        lines.append(f'  s{i} [label="order={h.order}"];')
    for i, j in lat.covering_pairs():
        lines.append(f"  s{i} -> s{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_json(lat: SubgroupLattice) -> str:
    g = lat.parent
    doc = {
        "group": g.label,
        "order": g.order,
        "subgroups": [
            {"order": h.order, "members": list(h.elements), "normal": is_normal(g, h)}
            for h in lat.subgroups
        ],
    }
    return json.dumps(doc, indent=2) + "\n"
