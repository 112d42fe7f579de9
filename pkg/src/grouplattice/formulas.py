"""Closed-form subgroup counts and their cross-check against lattice enumeration."""

from __future__ import annotations

from dataclasses import dataclass

from . import groups
from .groups import MAX_ORDER, Group
from .lattice import count_subgroups
from .structure import is_prime


class UnrealizableError(ValueError):
    """No action of the requested order exists for these primes."""


class UnsupportedShapeError(ValueError):
    pass


@dataclass(frozen=True)
class TwoPrimeParams:
    """C_{p^a} acting on C_{q^b} through an automorphism of order p."""

    p: int
    q: int
    a: int
    b: int

    def __post_init__(self):
        if not (is_prime(self.p) and is_prime(self.q)) or self.p == self.q:
            raise ValueError(f"p={self.p}, q={self.q} must be distinct primes")
        if self.a < 1 or self.b < 1:
            raise ValueError("exponents must be at least 1")

    @property
    def order(self) -> int:
        return self.p**self.a * self.q**self.b


def two_prime_count(params: TwoPrimeParams) -> int:
    p, q, a, b = params.p, params.q, params.a, params.b
    if (q - 1) % p:
        raise UnrealizableError(f"C{q**b} has no automorphism of order {p}")
    return q**b + (q**b - q) // (q - 1) + a * (b + 1) + 1


def action_multiplier(p: int, modulus: int) -> int:
    """Smallest k with x -> x^k an automorphism of order exactly p on C_modulus."""
    for k in range(2, modulus):
        if pow(k, p, modulus) == 1 and all(pow(k, d, modulus) != 1 for d in range(1, p)):
            return k
    raise UnrealizableError(f"C{modulus} has no automorphism of order {p}")


def two_prime_group(params: TwoPrimeParams, *, max_order: int = MAX_ORDER) -> Group:
    base = params.q**params.b
    actor = params.p**params.a
    k = action_multiplier(params.p, base)
    return groups.semidirect_cyclic(base, actor, k, max_order=max_order)


ABELIAN_SHAPES = ((1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (1, 1, 1))


def abelian_count(shape: tuple[int, ...], p: int) -> int:
    """Subgroup count of C_{p^r} x C_p for r <= 4, C_{p^2} x C_{p^2}, or C_p^3."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    shape = tuple(shape)
    if shape == (1, 1, 1):
        return 2 * p * p + 2 * p + 4
    if shape == (2, 2):
        return p * p + 3 * p + 5
    if len(shape) == 2 and shape[1] == 1 and 1 <= shape[0] <= 4:
        return shape[0] * p + shape[0] + 2
    raise UnsupportedShapeError(f"no closed form for shape {shape}")


def abelian_group(shape: tuple[int, ...], p: int, *, max_order: int = MAX_ORDER) -> Group:
    g = groups.cyclic(p ** shape[0], max_order=max_order)
    for e in shape[1:]:
        g = groups.direct_product(g, groups.cyclic(p**e, max_order=max_order), max_order=max_order)
    return g


# published table values, keyed by q then (a, b); p = 2 throughout, and the
# q = 7 table also holds for p = 3
TWO_PRIME_TABLES = {
    3: {(1, 1): 6, (2, 1): 8, (3, 1): 10, (4, 1): 12, (5, 1): 14,
        (1, 2): 16, (2, 2): 19, (3, 2): 22, (4, 2): 25, (5, 2): 28},
    5: {(1, 1): 8, (2, 1): 10, (3, 1): 12, (4, 1): 14,
        (1, 2): 34, (2, 2): 37, (3, 2): 40, (4, 2): 43},
    7: {(1, 1): 10, (2, 1): 12, (3, 1): 14,
        (1, 2): 60, (2, 2): 63, (3, 2): 66},
}

# C_p x C_{p^(n-2)} keyed by (p, n)
P_GROUP_TABLE = {(2, 3): 5, (2, 4): 8, (2, 5): 11, (3, 3): 6, (3, 4): 10, (3, 5): 14}


@dataclass(frozen=True)
class FormulaCheck:
    family: str
    params: str
    order: int
    expected: int
    formula: int
    enumerated: int | None

    @property
    def status(self) -> str:
        if self.enumerated is None:
            return "skipped"
        if self.expected == self.formula == self.enumerated:
            return "ok"
        return "FAIL"


def formula_instances() -> list[tuple]:
    """(family, params, expected, formula value, builder, order) per checked instance."""
    out = []
    for q, table in TWO_PRIME_TABLES.items():
        for p in (2, 3):
            if (q - 1) % p or (p == 3 and q != 7):
                continue
            for (a, b), value in sorted(table.items(), key=lambda kv: (kv[0][1], kv[0][0])):
                params = TwoPrimeParams(p, q, a, b)
                out.append((
                    "two-prime",
                    f"p={p} q={q} a={a} b={b}",
                    value,
                    two_prime_count(params),
                    lambda mo, params=params: two_prime_group(params, max_order=mo),
                    params.order,
                ))
    for p in (2, 3, 5, 7):
        for shape in ABELIAN_SHAPES:
            value = abelian_count(shape, p)
            out.append((
                "abelian",
                f"shape={'x'.join(map(str, shape))} p={p}",
                value,
                value,
                lambda mo, shape=shape, p=p: abelian_group(shape, p, max_order=mo),
                p ** sum(shape),
            ))
    for (p, n), value in sorted(P_GROUP_TABLE.items()):
        shape = (n - 2, 1)
        out.append((
            "p-group",
            f"p={p} n={n}",
            value,
            abelian_count(shape, p),
            lambda mo, shape=shape, p=p: abelian_group(shape, p, max_order=mo),
            p**(n - 1),
        ))
    out.append((
        "faithful",
        "C4 on C5",
        14,
        14,
        lambda mo: groups.semidirect_cyclic(5, 4, 2, max_order=mo),
        20,
    ))
    return out


def cross_validate(max_order: int = MAX_ORDER) -> list[FormulaCheck]:
    """Build each formula instance of order <= ``max_order`` and enumerate its subgroups."""
    report = []
    for family, params, expected, formula, build, order in formula_instances():
        enumerated = count_subgroups(build(max_order)) if order <= max_order else None
        report.append(FormulaCheck(family, params, order, expected, formula, enumerated))
    return report
