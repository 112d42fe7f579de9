"""Finite groups stored as Cayley tables, with constructors and isomorphism testing.

Elements are the integers ``0 .. order-1`` and element 0 is always the identity.
The product ``x * y`` is ``table[x, y]``.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 512


class GroupError(ValueError):
    """Raised when a group cannot be constructed."""


class SizeCapError(GroupError):
    """The requested group is larger than the allowed order."""


class InvalidMultiplierError(GroupError):
    """A semidirect multiplier does not define an action of the actor on the base."""


def _check_cap(order: int, max_order: int) -> None:
    if order > max_order:
        raise SizeCapError(f"group of order {order} exceeds the size cap {max_order}")


class Group:
    """A finite group given by its multiplication table.

    The table is validated on construction: identity at index 0, Latin square,
    generators close to the whole group, and associativity.  Associativity is
    checked with Light's test against the generators, which is exact once the
    generators are known to generate.
    """

    def __init__(
        self,
        table: np.ndarray | Sequence[Sequence[int]],
        generators: Iterable[int] | None = None,
        label: str = "G",
        *,
        check: bool = True,
    ):
        t = np.array(table, dtype=np.int32)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupError("table must be a non-empty square array")
        if t.min() < 0 or t.max() >= t.shape[0]:
            raise GroupError(f"{label}: table entries out of range")
        t.setflags(write=False)
        self.table = t
        self.label = label
        if generators is None:
            generators = _greedy_generators(t)
        self.generators = tuple(int(x) for x in generators if int(x) != 0)
        if check:
            self._validate()

    def _validate(self) -> None:
        t, n = self.table, self.order
        ident = np.arange(n)
        if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
            raise GroupError(f"{self.label}: element 0 is not the identity")
        if not (np.all(np.sort(t, axis=1) == ident) and np.all(np.sort(t, axis=0) == ident[:, None])):
            raise GroupError(f"{self.label}: table is not a Latin square")
        reached = _closure_mask(t, self.generators)
        if not reached.all():
            raise GroupError(f"{self.label}: generators do not generate the group")
        for a in self.generators:
            if not np.array_equal(t[t[:, a], :], t[:, t[a, :]]):
                raise GroupError(f"{self.label}: table is not associative")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group({self.label!r}, order={self.order})"

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmin(self.table, axis=1).astype(np.int32)
        inv.setflags(write=False)
        return inv

    def inv(self, x: int) -> int:
        return int(self.inverses[x])

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = idx.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.table[cur, idx]
            k += 1
        orders.setflags(write=False)
        return orders

    def element_order(self, x: int) -> int:
        return int(self.element_orders[x])

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def rows(self) -> list[list[int]]:
        # plain lists are much faster than numpy scalars in tight Python loops
        return self.table.tolist()

    def power(self, x: int, k: int) -> int:
        k %= self.element_order(x)
        result, base = 0, x
        while k:
            if k & 1:
                result = int(self.table[result, base])
            base = int(self.table[base, base])
            k >>= 1
        return result

    def order_profile(self) -> tuple[tuple[int, int], ...]:
        """Sorted (element order, multiplicity) pairs."""
        return tuple(sorted(Counter(self.element_orders.tolist()).items()))

    def induced(self, elements: Iterable[int], label: str | None = None) -> Group:
        """Re-index a closed subset of elements as a standalone group."""
        elems = sorted(set(int(x) for x in elements) | {0})
        pos = np.full(self.order, -1, dtype=np.int64)
        pos[elems] = np.arange(len(elems))
        sub = self.table[np.ix_(elems, elems)]
        mapped = pos[sub]
        if (mapped < 0).any():
            raise GroupError(f"subset of {self.label} is not closed under multiplication")
        return Group(mapped, None, label or f"sub({self.label})")


def _closure_mask(table: np.ndarray, seed: Iterable[int]) -> np.ndarray:
    """Boolean mask of the subgroup generated by ``seed``.

    Breadth-first saturation by right multiplication.  Repeated squares of the
    seed are added as extra steps so long cycles are covered in logarithmically
    many rounds.
    """
    n = table.shape[0]
    steps: list[int] = []
    for g in set(int(s) for s in seed):
        x = g
        while x != 0 and x not in steps:
            steps.append(x)
            x = int(table[x, x])
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    if not steps:
        return mask
    step_arr = np.array(steps, dtype=np.int64)
    mask[step_arr] = True
    frontier = np.unique(np.concatenate(([0], step_arr)))
    while frontier.size:
        nxt = table[frontier][:, step_arr].ravel()
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return mask


def _greedy_generators(table: np.ndarray) -> list[int]:
    n = table.shape[0]
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    for x in range(1, n):
        if not mask[x]:
            gens.append(x)
            mask = _closure_mask(table, gens)
            if mask.all():
                break
    return gens


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int, *, max_order: int = MAX_ORDER) -> Group:
    if n < 1:
        raise GroupError(f"cyclic group order must be positive, got {n}")
    _check_cap(n, max_order)
    i = np.arange(n)
    return Group((i[:, None] + i[None, :]) % n, [1] if n > 1 else [], f"C{n}")


def trivial() -> Group:
    return cyclic(1)


def direct_product(g: Group, h: Group, *, max_order: int = MAX_ORDER, label: str | None = None) -> Group:
    """Direct product; element ``(i, j)`` has index ``i * |h| + j``."""
    _check_cap(g.order * h.order, max_order)
    m = h.order
    gi = g.table[:, None, :, None]
    hj = h.table[None, :, None, :]
    t = (gi * m + hj).reshape(g.order * m, g.order * m)
    gens = [a * m for a in g.generators] + list(h.generators)
    return Group(t, gens, label or f"{g.label}x{h.label}")


def semidirect_cyclic(n: int, m: int, k: int, *, max_order: int = MAX_ORDER, label: str | None = None) -> Group:
    """``<a, b | a^n, b^m, b^-1 a b = a^k>``: C_m acting on C_n by x -> x^k.

    Elements are ``b^y a^x`` with index ``y * n + x``.
    """
    if n < 1 or m < 1:
        raise GroupError("semidirect factors must have positive order")
    if n > 1 and (math.gcd(k, n) != 1 or pow(k, m, n) != 1 % n):
        raise InvalidMultiplierError(
            f"x -> x^{k} is not an automorphism of C{n} of order dividing {m}"
        )
    _check_cap(n * m, max_order)
    y = np.arange(m)
    x = np.arange(n)
    kpow = np.array([pow(k, int(v), n) for v in y], dtype=np.int64)
    # (y1, x1) * (y2, x2) = (y1 + y2, x1 * k^y2 + x2)
    Y = (y[:, None, None, None] + y[None, None, :, None]) % m
    X = (x[None, :, None, None] * kpow[None, None, :, None] + x[None, None, None, :]) % n
    t = (Y * n + X).reshape(n * m, n * m)
    gens = ([1] if n > 1 else []) + ([n] if m > 1 else [])
    return Group(t, gens, label or f"C{m}:C{n}[{k % n if n > 1 else k}]")


def dihedral(n: int, *, max_order: int = MAX_ORDER) -> Group:
    """Dihedral group of order ``n``."""
    if n < 4 or n % 2:
        raise GroupError(f"dihedral group order must be even and at least 4, got {n}")
    _check_cap(n, max_order)
    half = n // 2
    return semidirect_cyclic(half, 2, half - 1, max_order=max_order, label=f"D{n}")


def quaternion(n: int, *, max_order: int = MAX_ORDER) -> Group:
    """Generalized quaternion group of order ``n`` (a power of two, at least 8)."""
    if n < 8 or n & (n - 1):
        raise GroupError(f"quaternion group order must be a power of 2 and at least 8, got {n}")
    _check_cap(n, max_order)
    m = n // 4
    r = 2 * m
    # elements b^y a^x, index y * r + x; b^2 = a^m, b^-1 a b = a^-1
    y = np.arange(2)
    x = np.arange(r)
    Y1 = y[:, None, None, None]
    X1 = x[None, :, None, None]
    Y2 = y[None, None, :, None]
    X2 = x[None, None, None, :]
    sign = np.where(Y2 == 1, -1, 1)
    s = Y1 + Y2
    X = (X1 * sign + X2 + np.where(s == 2, m, 0)) % r
    t = ((s % 2) * r + X).reshape(n, n)
    return Group(t, [1, r], f"Q{n}")


def named(which: str) -> Group:
    if which == "M16":
        return semidirect_cyclic(8, 2, 5, label="M16")
    if which == "E27":
        return semidirect_cyclic(9, 3, 4, label="E27")
    raise GroupError(f"unknown named group {which!r}")


def from_permutations(
    degree: int,
    gens: Iterable[Sequence[int]],
    *,
    label: str = "perm",
    max_order: int = MAX_ORDER,
) -> Group:
    """Group generated by permutations of ``range(degree)``, given as image lists.

    The product ``x * y`` applies ``x`` first, then ``y``.  Elements are
    indexed in breadth-first order from the identity.
    """
    if degree < 1:
        raise GroupError("permutation degree must be positive")
    perms = []
    for g in gens:
        p = tuple(int(v) for v in g)
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise GroupError(f"{p} is not a permutation of range({degree})")
        perms.append(p)
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    gen_idx = []
    for p in perms:
        if p not in index:
            index[p] = len(elements)
            elements.append(p)
        gen_idx.append(index[p])
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for p in perms:
            y = tuple(p[v] for v in x)
            if y not in index:
                if len(elements) >= max_order:
                    raise SizeCapError(f"permutation group {label} exceeds the size cap {max_order}")
                index[y] = len(elements)
                elements.append(y)
    P = np.array(elements, dtype=np.int16 if degree < 32000 else np.int32)
    lookup = {row.tobytes(): i for i, row in enumerate(P)}
    n = len(elements)
    t = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        prod = P[:, P[i]]  # row j: apply i, then j
        t[i] = [lookup[r.tobytes()] for r in prod]
    return Group(t, gen_idx, label)


def symmetric(n: int, *, max_order: int = MAX_ORDER) -> Group:
    if n < 1:
        raise GroupError("symmetric group degree must be positive")
    _check_cap(math.factorial(n), max_order)
    gens = []
    if n > 1:
        gens.append([1, 0] + list(range(2, n)))
        gens.append(list(range(1, n)) + [0])
    return from_permutations(n, gens, label=f"S{n}", max_order=max_order)


def alternating(n: int, *, max_order: int = MAX_ORDER) -> Group:
    if n < 1:
        raise GroupError("alternating group degree must be positive")
    _check_cap(max(1, math.factorial(n) // 2), max_order)
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(p)
    return from_permutations(n, gens, label=f"A{n}", max_order=max_order)


# ---------------------------------------------------------------------------
# isomorphism


def element_labels(g: Group) -> list[tuple[int, int, int]]:
    """Isomorphism-invariant label per element: (order, centralizer size, number of square roots)."""
    t = g.table
    central = (t == t.T).sum(axis=1)
    roots = np.bincount(np.diagonal(t), minlength=g.order)
    return list(zip(g.element_orders.tolist(), central.tolist(), roots.tolist()))


def invariant_key(g: Group) -> tuple:
    """Cheap isomorphism invariant: order and multiset of element labels."""
    return (g.order, tuple(sorted(Counter(element_labels(g)).items())))


def _search_generators(g: Group, labels: list) -> list[int]:
    freq = Counter(labels)
    candidates = sorted(range(1, g.order), key=lambda x: (freq[labels[x]], -labels[x][0], x))
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    for x in candidates:
        if mask.all():
            break
        if not mask[x]:
            gens.append(x)
            mask = _closure_mask(g.table, gens)
    return gens


def find_isomorphism(g: Group, h: Group) -> list[int] | None:
    """Return an isomorphism ``g -> h`` as an image list, or None.

    Backtracks over images of a generating set of ``g``.  Generators are taken
    rarest label first, candidate images must carry the same label, and each
    partial assignment is immediately extended to the subgroup it generates so
    inconsistencies are caught early.
    """
    if g.order != h.order:
        return None
    if g.order_profile() != h.order_profile():
        return None
    lg, lh = element_labels(g), element_labels(h)
    if Counter(lg) != Counter(lh):
        return None
    n = g.order
    gens = _search_generators(g, lg)
    by_label: dict[tuple, list[int]] = {}
    for y, lab in enumerate(lh):
        by_label.setdefault(lab, []).append(y)
    cands = [by_label[lg[s]] for s in gens]
    G, H = g.rows, h.rows
    phi = [-1] * n
    used = [False] * n
    phi[0] = 0
    used[0] = True
    domain = [0]
    images: list[int] = []

    def extend(i: int, c: int) -> list[int] | None:
        s = gens[i]
        added: list[int] = []

        def put(y: int, im: int) -> bool:
            if phi[y] == -1:
                if used[im]:
                    return False
                phi[y] = im
                used[im] = True
                added.append(y)
                return True
            return phi[y] == im

        ok = True
        for x in domain:
            if not put(G[x][s], H[phi[x]][c]):
                ok = False
                break
        j = 0
        while ok and j < len(added):
            x = added[j]
            j += 1
            for t, ti in zip(gens[: i + 1], images + [c]):
                if not put(G[x][t], H[phi[x]][ti]):
                    ok = False
                    break
        if not ok:
            for y in added:
                used[phi[y]] = False
                phi[y] = -1
            return None
        return added

    def search(i: int) -> bool:
        if i == len(gens):
            return len(domain) == n
        for c in cands[i]:
            if used[c]:
                continue
            added = extend(i, c)
            if added is None:
                continue
            domain.extend(added)
            images.append(c)
            if search(i + 1):
                return True
            images.pop()
            del domain[len(domain) - len(added):]
            for y in added:
                used[phi[y]] = False
                phi[y] = -1
        return False

    if not search(0):
        return None
    m = np.array(phi, dtype=np.int64)
    if not np.array_equal(h.table[m[:, None], m[None, :]], m[g.table]):
        raise AssertionError("isomorphism search produced a non-homomorphism")
    return phi


def are_isomorphic(g: Group, h: Group) -> bool:
    return find_isomorphism(g, h) is not None
