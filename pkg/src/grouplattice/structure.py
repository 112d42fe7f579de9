"""Sylow subgroups, centers, and stripping of cyclic central Sylow factors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import Group
from .lattice import Subgroup, SubgroupLattice, all_subgroups, closure


def prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factorization(n) == {n: 1}


@dataclass(frozen=True)
class SylowInfo:
    prime: int
    order: int
    exponent: int
    count: int
    is_cyclic: bool
    is_central: bool
    representative: Subgroup


@dataclass(frozen=True)
class Decomposition:
    stripped: tuple[tuple[int, int], ...]
    tilde: Group
    original_order: int

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(sorted(n for _, n in self.stripped))


def center(g: Group) -> Subgroup:
    t = g.table
    mask = (t == t.T).all(axis=1)
    return closure(g, np.flatnonzero(mask).tolist())


def sylow(g: Group, p: int, lattice: SubgroupLattice | None = None) -> SylowInfo:
    """Sylow ``p``-subgroup data read off the subgroup lattice."""
    exps = prime_factorization(g.order)
    if p not in exps:
        raise ValueError(f"{p} does not divide |{g.label}| = {g.order}")
    lat = lattice if lattice is not None else all_subgroups(g)
    order = p ** exps[p]
    members = lat.of_order(order)
    rep = members[0]
    z = center(g)
    return SylowInfo(
        prime=p,
        order=order,
        exponent=exps[p],
        count=len(members),
        is_cyclic=rep.is_cyclic(),
        is_central=rep <= z,
        representative=rep,
    )


def cyclic_central_primes(g: Group) -> dict[int, int]:
    """Primes whose Sylow subgroup is cyclic and central, with their exponents.

    The Sylow p-subgroup is cyclic and central exactly when some central
    element has order equal to the full p-part of |G|, so no lattice is needed.
    """
    t = g.table
    central = (t == t.T).all(axis=1)
    zorders = set(g.element_orders[central].tolist())
    return {
        p: e for p, e in sorted(prime_factorization(g.order).items()) if p**e in zorders
    }


def decompose(g: Group) -> Decomposition:
    pi = cyclic_central_primes(g)
    strip = math.prod(pi)
    keep = [x for x, o in enumerate(g.element_orders.tolist()) if math.gcd(o, strip) == 1]
    tilde = g.induced(keep, f"~{g.label}") if pi else g
    return Decomposition(tuple(pi.items()), tilde, g.order)


def is_tilde_fixed(g: Group) -> bool:
    return not cyclic_central_primes(g)


def sylow_counts(g: Group, lattice: SubgroupLattice | None = None) -> dict[int, int]:
    lat = lattice if lattice is not None else all_subgroups(g)
    return {p: sylow(g, p, lat).count for p in prime_factorization(g.order)}


__all__ = [
    "Decomposition",
    "SylowInfo",
    "center",
    "cyclic_central_primes",
    "decompose",
    "is_prime",
    "is_tilde_fixed",
    "prime_factorization",
    "sylow",
    "sylow_counts",
]
