"""Group specifications: a small grammar mirroring the usual notation.

::

    spec       := term ('x' term)*
    term       := 'C' INT | 'D' INT | 'Q' INT | 'A' INT | 'S' INT
                | 'E27' | 'M16' | semidirect
    semidirect := 'C' INT ':' 'C' INT '[' INT ']'

``D`` and ``Q`` take the group order (D8, Q16); ``A`` and ``S`` take the
degree (A4, S3).  In ``Cm:Cn[k]`` the left factor is the actor and the right
factor the base: a generator of C_m acts on C_n by ``x -> x^k``.  So
``C2:C3[2]`` is S3 and ``C2:C8[5]`` is M16.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from . import groups
from .groups import MAX_ORDER, Group, GroupError, InvalidMultiplierError, SizeCapError


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position
        self.text = text


class SpecSemanticError(ValueError):
    """Well-formed spec that does not describe a valid group within the cap."""


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class Quaternion:
    n: int


@dataclass(frozen=True)
class Alternating:
    n: int


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Named:
    name: str


@dataclass(frozen=True)
class Semidirect:
    base: Cyclic
    actor: Cyclic
    multiplier: int


@dataclass(frozen=True)
class Product:
    factors: tuple


GroupSpec = Cyclic | Dihedral | Quaternion | Alternating | Symmetric | Named | Semidirect | Product


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise SpecSyntaxError(message, self.pos, self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def spec(self) -> GroupSpec:
        terms = [self.term()]
        while self.peek() == "x":
            self.pos += 1
            terms.append(self.term())
        if self.pos != len(self.text):
            self.error("unexpected character")
        return terms[0] if len(terms) == 1 else Product(tuple(terms))

    def term(self) -> GroupSpec:
        for name in ("E27", "M16"):
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return Named(name)
        ch = self.peek()
        if ch not in "CDQAS" or not ch:
            self.error("expected a group term")
        self.pos += 1
        n = self.integer()
        if ch == "C":
            if self.peek() == ":":
                self.pos += 1
                self.expect("C")
                base = self.integer()
                self.expect("[")
                k = self.integer()
                self.expect("]")
                return Semidirect(Cyclic(base), Cyclic(n), k)
            return Cyclic(n)
        return {"D": Dihedral, "Q": Quaternion, "A": Alternating, "S": Symmetric}[ch](n)


def spec_order(spec: GroupSpec) -> int:
    if isinstance(spec, Cyclic | Dihedral | Quaternion):
        return spec.n
    if isinstance(spec, Alternating):
        return max(1, math.factorial(spec.n) // 2)
    if isinstance(spec, Symmetric):
        return math.factorial(spec.n)
    if isinstance(spec, Named):
        return {"E27": 27, "M16": 16}[spec.name]
    if isinstance(spec, Semidirect):
        return spec.base.n * spec.actor.n
    return math.prod(spec_order(f) for f in spec.factors)


def _validate(spec: GroupSpec, max_order: int) -> None:
    if isinstance(spec, Product):
        for f in spec.factors:
            _validate(f, max_order)
    elif isinstance(spec, Semidirect):
        n, m, k = spec.base.n, spec.actor.n, spec.multiplier
        if n < 1 or m < 1:
            raise SpecSemanticError("semidirect factors must have positive order")
        if n > 1 and (math.gcd(k, n) != 1 or pow(k, m, n) != 1):
            raise SpecSemanticError(f"multiplier {k} does not give an action of C{m} on C{n}")
    elif isinstance(spec, Cyclic | Alternating | Symmetric) and spec.n < 1:
        raise SpecSemanticError(f"{spec} must have positive size")
    elif isinstance(spec, Dihedral) and (spec.n < 4 or spec.n % 2):
        raise SpecSemanticError(f"dihedral order must be even and at least 4, got {spec.n}")
    elif isinstance(spec, Quaternion) and (spec.n < 8 or spec.n & (spec.n - 1)):
        raise SpecSemanticError(f"quaternion order must be a power of 2, at least 8, got {spec.n}")
    if spec_order(spec) > max_order:
        raise SpecSemanticError(f"group of order {spec_order(spec)} exceeds the size cap {max_order}")


def parse_spec(text: str, *, max_order: int = MAX_ORDER) -> GroupSpec:
    """Parse and validate a group specification."""
    spec = _Parser(text.strip()).spec()
    _validate(spec, max_order)
    return spec


def format_spec(spec: GroupSpec) -> str:
    if isinstance(spec, Product):
        return "x".join(format_spec(f) for f in spec.factors)
    if isinstance(spec, Semidirect):
        return f"C{spec.actor.n}:C{spec.base.n}[{spec.multiplier}]"
    if isinstance(spec, Named):
        return spec.name
    prefix = {Cyclic: "C", Dihedral: "D", Quaternion: "Q", Alternating: "A", Symmetric: "S"}[type(spec)]
    return f"{prefix}{spec.n}"


def build(spec: GroupSpec, *, max_order: int = MAX_ORDER) -> Group:
    try:
        return _build(spec, max_order)
    except InvalidMultiplierError as exc:
        raise SpecSemanticError(str(exc)) from exc
    except SizeCapError as exc:
        raise SpecSemanticError(str(exc)) from exc


def _build(spec: GroupSpec, max_order: int) -> Group:
    if isinstance(spec, Cyclic):
        return groups.cyclic(spec.n, max_order=max_order)
    if isinstance(spec, Dihedral):
        return groups.dihedral(spec.n, max_order=max_order)
    if isinstance(spec, Quaternion):
        return groups.quaternion(spec.n, max_order=max_order)
    if isinstance(spec, Alternating):
        return groups.alternating(spec.n, max_order=max_order)
    if isinstance(spec, Symmetric):
        return groups.symmetric(spec.n, max_order=max_order)
    if isinstance(spec, Named):
        return groups.named(spec.name)
    if isinstance(spec, Semidirect):
        return groups.semidirect_cyclic(
            spec.base.n, spec.actor.n, spec.multiplier, max_order=max_order, label=format_spec(spec)
        )
    parts = [_build(f, max_order) for f in spec.factors]
    g = reduce(lambda a, b: groups.direct_product(a, b, max_order=max_order), parts)
    return Group(g.table, g.generators, format_spec(spec), check=False)


def group_from_spec(text: str, *, max_order: int = MAX_ORDER) -> Group:
    return build(parse_spec(text, max_order=max_order), max_order=max_order)


__all__ = [
    "GroupError",
    "GroupSpec",
    "SpecSemanticError",
    "SpecSyntaxError",
    "build",
    "format_spec",
    "group_from_spec",
    "parse_spec",
    "spec_order",
]
