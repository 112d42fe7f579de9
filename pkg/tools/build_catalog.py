"""Author the catalog data files.

Dev-time only; the package never imports this.  Every group of the requested
orders is produced as an extension of an elementary abelian module V = F_p^k
(k <= 2) by a smaller group H, one per cohomology class in H^2(H, V) for
each action of H on V.  All groups of the orders used here are solvable with a
minimal normal subgroup of rank at most 2, so this reaches every isomorphism
type.  Candidates are deduplicated up to isomorphism, and the per-order counts
are checked against the known values.  Each group is then written as
permutation generators, using the smallest faithful transitive coset action
found in its subgroup lattice.

Usage::

    python tools/build_catalog.py            # writes all catalog files
"""

from __future__ import annotations

import argparse
import itertools
import sys
from collections import defaultdict
from pathlib import Path

import numpy as np

from grouplattice.catalog import KNOWN_GROUP_COUNTS, CatalogEntry, format_cycles
from grouplattice.groups import Group, are_isomorphic, invariant_key
from grouplattice.groupspec import SpecSemanticError, group_from_spec
from grouplattice.lattice import all_subgroups, count_subgroups, is_normal
from grouplattice.structure import prime_factorization

ROOT = Path(__file__).resolve().parent.parent


# --- linear algebra over F_p -------------------------------------------------


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = a.copy() % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        nz = np.flatnonzero(a[r:, c])
        if not nz.size:
            continue
        piv = r + nz[0]
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    cols = a.shape[1]
    red, pivots = rref_mod(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-red[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def complement_mod(sub: np.ndarray, space: np.ndarray, p: int) -> np.ndarray:
    """Vectors of ``space`` extending a basis of ``sub`` (sub inside span(space))."""
    chosen = [v for v in sub]
    rank = len(rref_mod(np.array(chosen), p)[1]) if chosen else 0
    out = []
    for v in space:
        trial = np.array(chosen + [v])
        r = len(rref_mod(trial, p)[1])
        if r > rank:
            chosen.append(v)
            out.append(v)
            rank = r
    return np.array(out, dtype=np.int64).reshape(len(out), space.shape[1])


# --- modules and extensions ------------------------------------------------------


def gl_elements(k: int, p: int) -> list[np.ndarray]:
    out = []
    for entries in itertools.product(range(p), repeat=k * k):
        m = np.array(entries, dtype=np.int64).reshape(k, k)
        if round(np.linalg.det(m)) % p:
            out.append(m)
    return out


def actions(h: Group, k: int, p: int) -> list[list[np.ndarray]]:
    """All homomorphisms H -> GL(k, p), as a matrix per element of H."""
    mats = gl_elements(k, p)
    ident = np.eye(k, dtype=np.int64)
    gens = list(h.generators)
    found = []
    for imgs in itertools.product(range(len(mats)), repeat=len(gens)):
        rho: list[np.ndarray | None] = [None] * h.order
        rho[0] = ident
        queue = [0]
        ok = True
        while queue and ok:
            x = queue.pop()
            for s, i in zip(gens, imgs):
                y = h.mul(x, s)
                m = (rho[x] @ mats[i]) % p
                if rho[y] is None:
                    rho[y] = m
                    queue.append(y)
                elif not np.array_equal(rho[y], m):
                    ok = False
                    break
        if ok:
            found.append(rho)
    return found


def is_irreducible(rho: list[np.ndarray], k: int, p: int) -> bool:
    if k == 1:
        return True
    # k == 2: reducible iff some line is invariant under every matrix
    for v in itertools.product(range(p), repeat=2):
        if not any(v):
            continue
        v = np.array(v)
        for m in rho:
            w = (m @ v) % p
            if (w[0] * v[1] - w[1] * v[0]) % p:
                break
        else:
            return False
    return True


def extensions(h: Group, k: int, p: int) -> list[Group]:
    n = h.order
    q = p**k
    t = h.rows
    vecs = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    code = {tuple(v): i for i, v in enumerate(vecs.tolist())}
    out = []
    for rho in actions(h, k, p):
        if not is_irreducible(rho, k, p):
            continue
        nz = list(range(1, n))
        var = {(a, b): i for i, (a, b) in enumerate(itertools.product(nz, nz))}
        nv = len(var) * k

        def put(row, a, b, coeff):
            if a == 0 or b == 0:
                return
            base = var[(a, b)] * k
            row[:, base:base + k] = (row[:, base:base + k] + coeff) % p

        # rho(a) f(b, c) - f(ab, c) + f(a, bc) - f(a, b) = 0, k equations each
        eqs = []
        for a, b, c in itertools.product(nz, nz, nz):
            row = np.zeros((k, nv), dtype=np.int64)
            put(row, b, c, rho[a])
            put(row, t[a][b], c, -np.eye(k, dtype=np.int64))
            put(row, a, t[b][c], np.eye(k, dtype=np.int64))
            put(row, a, b, -np.eye(k, dtype=np.int64))
            eqs.append(row)
        cocycles = nullspace_mod(np.unique(np.vstack(eqs) % p, axis=0), p) if eqs else np.zeros((0, nv), dtype=np.int64)
        # coboundaries (delta c)(a, b) = rho(a) c(b) - c(ab) + c(a)
        cob = []
        for x in nz:
            for j in range(k):
                f = np.zeros(nv, dtype=np.int64)
                e = np.zeros(k, dtype=np.int64)
                e[j] = 1
                for a, b in itertools.product(nz, nz):
                    val = np.zeros(k, dtype=np.int64)
                    if b == x:
                        val += rho[a] @ e
                    if t[a][b] == x:
                        val -= e
                    if a == x:
                        val += e
                    base = var[(a, b)] * k
                    f[base:base + k] = val % p
                cob.append(f)
        cob = np.array(cob, dtype=np.int64).reshape(len(cob), nv)
        if cob.size:
            red, piv = rref_mod(cob, p)
            cob = red
        reps = complement_mod(cob, cocycles, p) if cocycles.size else np.zeros((0, nv), dtype=np.int64)
        for coeffs in itertools.product(range(p), repeat=len(reps)):
            f = (np.array(coeffs) @ reps) % p if len(reps) else np.zeros(nv, dtype=np.int64)
            out.append(_build_extension(h, rho, f, var, vecs, code, k, p))
    return out


def _build_extension(h, rho, f, var, vecs, code, k, p) -> Group:
    n, q = h.order, len(vecs)
    cocycle = np.zeros((n, n, k), dtype=np.int64)
    for (a, b), i in var.items():
        cocycle[a, b] = f[i * k:(i + 1) * k]
    # element (x, v) has index x * q + v; (x, v)(y, w) = (xy, v + rho(x) w + f(x, y))
    table = np.empty((n * q, n * q), dtype=np.int64)
    acted = np.stack([(vecs @ r.T) % p for r in rho])  # acted[x][w] = rho(x) w
    weights = p ** np.arange(k - 1, -1, -1)
    for x in range(n):
        for vi, v in enumerate(vecs):
            left = x * q + vi
            for y in range(n):
                w = (v + acted[x] + cocycle[x, y]) % p
                table[left, y * q:(y + 1) * q] = h.mul(x, y) * q + w @ weights
    return Group(table, None, "ext")


# --- enumeration --------------------------------------------------------------------


def dedupe(cands: list[Group]) -> list[Group]:
    reps: dict[tuple, list[Group]] = defaultdict(list)
    out = []
    for g in cands:
        key = invariant_key(g)
        if any(are_isomorphic(g, r) for r in reps[key]):
            continue
        reps[key].append(g)
        out.append(g)
    return out


def all_groups(order: int, cache: dict[int, list[Group]]) -> list[Group]:
    if order in cache:
        return cache[order]
    if order == 1:
        cache[1] = [group_from_spec("C1")]
        return cache[1]
    cands = []
    for p, e in prime_factorization(order).items():
        for k in (1, 2):
            if k > e:
                continue
            for h in all_groups(order // p**k, cache):
                cands.extend(extensions(h, k, p))
    cache[order] = dedupe(cands)
    return cache[order]


# --- naming -------------------------------------------------------------------------

def candidate_specs(order: int) -> list[str]:
    atoms: list[tuple[str, int]] = [(f"C{n}", n) for n in range(2, order + 1) if order % n == 0]
    for n in range(6, order + 1, 2):
        if order % n == 0:
            atoms.append((f"D{n}", n))
    for n in (8, 16, 32, 64):
        if order % n == 0:
            atoms.append((f"Q{n}", n))
    for s, n in (("S3", 6), ("A4", 12), ("S4", 24), ("E27", 27), ("M16", 16)):
        if order % n == 0:
            atoms.append((s, n))
    for m in range(2, order + 1):
        for n in range(3, order // m + 1):
            if order % (m * n):
                continue
            for kk in range(2, n):
                if pow(kk, m, n) == 1 and np.gcd(kk, n) == 1:
                    atoms.append((f"C{m}:C{n}[{kk}]", m * n))
    specs = []

    def rec(start: int, remaining: int, chosen: list[str]):
        if remaining == 1:
            specs.append("x".join(chosen) if chosen else "C1")
            return
        for i in range(start, len(atoms)):
            name, n = atoms[i]
            if remaining % n == 0:
                rec(i, remaining // n, chosen + [name])

    rec(0, order, [])
    return specs


def spec_rank(spec: str) -> tuple:
    # prefer few factors, named atoms over semidirect notation, then short text
    return (spec.count("x"), spec.count(":"), spec not in ("S3", "A4", "S4"), len(spec), spec)


def hand_name(order: int, g: Group) -> str | None:
    """Names for the few embedded groups the spec grammar cannot express."""
    t = g.table
    center = int((t == t.T).all(axis=1).sum())
    orders = g.element_orders
    involutions = int((orders == 2).sum())
    if order == 16:
        cyclic_center = int(orders[(t == t.T).all(axis=1)].max()) == center
        return "C4oD8" if cyclic_center else "C2^2:C4"
    if order == 18:
        return "C3^2:C2"
    if order == 24:
        if orders.max() == 12:
            return "C3:Q8"
        return "SL(2,3)" if involutions == 1 else "C3:D8"
    if order == 27:
        return "Heis27"
    return None


def name_groups(order: int, gs: list[Group]) -> list[str]:
    names: list[str | None] = [None] * len(gs)
    keys = [invariant_key(g) for g in gs]
    for spec in sorted(candidate_specs(order), key=spec_rank):
        try:
            c = group_from_spec(spec)
        except SpecSemanticError:
            continue
        ck = invariant_key(c)
        for i, g in enumerate(gs):
            if names[i] is None and keys[i] == ck and are_isomorphic(c, g):
                names[i] = spec
                break
        if all(names):
            break
    for i, g in enumerate(gs):
        if names[i] is None:
            names[i] = hand_name(order, g) or f"G{order}_{i + 1}"
    return names  # type: ignore[return-value]


# --- permutation representations -------------------------------------------------


def coset_action(g: Group, h_elems: list[int]) -> list[tuple[int, ...]]:
    """Right-coset action of ``g`` on ``H\\g``; images of g's generators."""
    hset = set(h_elems)
    coset_of = {}
    reps = []
    for x in range(g.order):
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for y in h_elems:
            coset_of[g.mul(y, x)] = idx
    perms = []
    for s in g.generators:
        perms.append(tuple(coset_of[g.mul(r, s)] for r in reps))
    del hset
    return perms


def small_generators(g: Group) -> list[int]:
    """A short generating set: greedily pick the element that enlarges the closure most."""
    from grouplattice.lattice import closure

    gens: list[int] = []
    cur = closure(g, [])
    while cur.order < g.order:
        best = max(range(g.order), key=lambda x: (closure(g, gens + [x]).order, -x))
        gens.append(best)
        cur = closure(g, gens)
    return gens


def permutation_entry(order: int, index: int, name: str, g: Group) -> CatalogEntry:
    gens = small_generators(g)
    g = Group(g.table, gens, name)
    lat = all_subgroups(g)
    normal_nontrivial = [n for n in lat if n.order > 1 and is_normal(g, n)]
    best = None
    for h in reversed(lat.subgroups):
        if h.order == g.order:
            continue
        if any(n <= h for n in normal_nontrivial):
            continue
        best = h
        break
    h_elems = list(best.elements) if best is not None else [0]
    perms = coset_action(g, h_elems)
    degree = g.order // len(h_elems)
    return CatalogEntry(order, index, name, degree, tuple(perms))


def build_entries(orders: list[int], cache: dict[int, list[Group]]) -> list[CatalogEntry]:
    entries = []
    for order in orders:
        gs = all_groups(order, cache)
        want = KNOWN_GROUP_COUNTS[order]
        if len(gs) != want:
            raise SystemExit(f"order {order}: found {len(gs)} groups, expected {want}")
        gs = sorted(gs, key=lambda g: (count_subgroups(g), invariant_key(g)))
        names = name_groups(order, gs)
        for i, (g, name) in enumerate(zip(gs, names), start=1):
            entries.append(permutation_entry(order, i, name, g))
        print(f"order {order}: {len(gs)} groups", file=sys.stderr)
    return entries


def write(path: Path, header: str, entries: list[CatalogEntry]) -> None:
    lines = [f"# {line}" if line else "#" for line in header.splitlines()]
    lines += [e.to_line() for e in entries]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(entries)} entries)", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--skip-extended", action="store_true", help="only write the embedded catalog")
    args = ap.parse_args(argv)
    cache: dict[int, list[Group]] = {}
    embedded = build_entries(list(range(1, 25)) + [27], cache)
    write(
        ROOT / "src" / "grouplattice" / "data" / "embedded.txt",
        "All groups of order 1..24 and 27.\nFormat: <order> <index> <name> <degree>; <gen>; ...",
        embedded,
    )
    if not args.skip_extended:
        for order in (32, 81):
            write(
                ROOT / "data" / f"order{order}.txt",
                f"All groups of order {order}.\nFormat: <order> <index> <name> <degree>; <gen>; ...",
                build_entries([order], cache),
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
