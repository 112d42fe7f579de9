"""Similarity of groups and the classes with a given number of subgroups.

Two groups are similar when their tilde groups are isomorphic and the
stripped cyclic central Sylow factors have the same multiset of exponents.
Similar groups have the same number of subgroups, since a coprime cyclic
factor of order p^k multiplies the count by k + 1.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .catalog import InventoryItem
from .groups import Group, are_isomorphic
from .lattice import count_subgroups
from .structure import decompose, is_prime, is_tilde_fixed, prime_factorization

PLACEHOLDERS = "pqrstuvw"


class InventoryError(ValueError):
    pass


@dataclass(frozen=True)
class SimilaritySignature:
    tilde_key: tuple
    exponents: tuple[int, ...]
    tilde: Group = field(compare=False, repr=False)

    def matches(self, other: SimilaritySignature) -> bool:
        """Exact similarity test; the key is only a prefilter."""
        return (
            self.tilde_key == other.tilde_key
            and self.exponents == other.exponents
            and are_isomorphic(self.tilde, other.tilde)
        )


def tilde_key(g: Group) -> tuple:
    return (g.order, g.order_profile(), count_subgroups(g), not g.is_abelian)


def signature(g: Group) -> SimilaritySignature:
    d = decompose(g)
    return SimilaritySignature(tilde_key(d.tilde), d.exponents, d.tilde)


def similar(g: Group, h: Group) -> bool:
    dg, dh = decompose(g), decompose(h)
    return (
        len(dg.stripped) == len(dh.stripped)
        and dg.exponents == dh.exponents
        and are_isomorphic(dg.tilde, dh.tilde)
    )


@dataclass(frozen=True)
class ClassDescriptor:
    tilde_name: str
    tilde_rep: Group = field(repr=False, compare=False)
    tilde_count: int
    exponents: tuple[int, ...]
    subgroup_count: int
    display_name: str
    concrete_spec: str
    concrete_order: int

    def as_dict(self) -> dict:
        return {
            "class": self.display_name,
            "tilde": self.tilde_name,
            "tilde_subgroups": self.tilde_count,
            "exponents": list(self.exponents),
            "subgroups": self.subgroup_count,
            "representative": self.concrete_spec,
            "representative_order": self.concrete_order,
        }


def class_count(desc: ClassDescriptor) -> int:
    return desc.tilde_count * math.prod(n + 1 for n in desc.exponents)


def multiplicative_partitions(n: int, smallest: int = 2) -> list[tuple[int, ...]]:
    """Unordered factorizations of ``n`` into factors >= ``smallest`` (nondecreasing)."""
    if n == 1:
        return [()]
    out = []
    for f in range(smallest, n + 1):
        if n % f == 0:
            out.extend((f,) + rest for rest in multiplicative_partitions(n // f, f))
    return out


def fresh_primes(avoid: int, count: int) -> list[int]:
    bad = set(prime_factorization(avoid))
    out, p = [], 2
    while len(out) < count:
        if is_prime(p) and p not in bad:
            out.append(p)
        p += 1
    return out


def _cyclic_part(exponents: Sequence[int], bases: Sequence[str]) -> list[str]:
    return [f"C_{b}" if e == 1 else f"C_{b}^{e}" for b, e in zip(bases, exponents)]


def describe(item: InventoryItem, exponents: Sequence[int]) -> ClassDescriptor:
    exps = tuple(sorted(exponents))
    primes = fresh_primes(item.group.order, len(exps))
    trivial = item.group.order == 1
    placeholder = _cyclic_part(exps, PLACEHOLDERS)
    concrete = [f"C{p ** e}" for p, e in zip(primes, exps)]
    head = [] if trivial and exps else [item.name]
    display = "x".join(head + placeholder)
    spec = "x".join(head + concrete)
    order = item.group.order * math.prod(p**e for p, e in zip(primes, exps))
    return ClassDescriptor(
        tilde_name=item.name,
        tilde_rep=item.group,
        tilde_count=item.count,
        exponents=exps,
        subgroup_count=item.count * math.prod(e + 1 for e in exps),
        display_name=display,
        concrete_spec=spec,
        concrete_order=order,
    )


def check_inventory(inventory: Iterable[InventoryItem]) -> None:
    for it in inventory:
        if not is_tilde_fixed(it.group):
            raise InventoryError(f"{it.name} has a cyclic central Sylow subgroup")


def enumerate_classes(n: int, inventory: Sequence[InventoryItem]) -> list[ClassDescriptor]:
    """Every similarity class with exactly ``n`` subgroups.

    A class is a tilde group T from the inventory together with exponents
    n_i >= 1 such that count(T) * prod(n_i + 1) = n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    check_inventory(inventory)
    out = []
    for it in inventory:
        if n % it.count:
            continue
        for factors in multiplicative_partitions(n // it.count):
            out.append(describe(it, [f - 1 for f in factors]))
    out.sort(key=lambda d: (d.tilde_rep.order, d.tilde_name, len(d.exponents), d.exponents))
    return out


def tilde_sequence(inventory: Sequence[InventoryItem], terms: int = 12) -> list[int]:
    check_inventory(inventory)
    counts = Counter(it.count for it in inventory)
    return [counts.get(n, 0) for n in range(1, terms + 1)]


def class_sequence(inventory: Sequence[InventoryItem], terms: int = 12) -> list[int]:
    return [len(enumerate_classes(n, inventory)) for n in range(1, terms + 1)]
