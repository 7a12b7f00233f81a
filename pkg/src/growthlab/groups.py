"""Concrete group backends with exact integer coordinates.

Every backend stores elements as tuples of Python ints.  Each tuple is the
unique global coordinate of the element, so equality and hashing of tuples is
equality in the group.  Python ints never overflow, so no wraparound can
corrupt an enumeration.

The hot paths (``mul``/``inv`` on tuples) live on the group objects.  The
:class:`Element` wrapper carries its group along and is what the public
arithmetic functions accept.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Coords = tuple[int, ...]


class GroupError(ValueError):
    """Malformed group description or element."""


class SpecMismatch(GroupError):
    """Operands belong to different groups."""


class GroupSpec:
    """Base class of the supported backends."""

    #: coordinate length of every element
    dim: int

    def identity(self) -> Coords:
        raise NotImplementedError

    def mul(self, g: Coords, h: Coords) -> Coords:
        raise NotImplementedError

    def inv(self, g: Coords) -> Coords:
        raise NotImplementedError

    def canonical(self, coords: Iterable[int]) -> Coords:
        """Validate ``coords`` and return the canonical tuple."""
        c = tuple(coords)
        if len(c) != self.dim:
            raise GroupError(f"{self.name}: expected {self.dim} coordinates, got {len(c)}")
        for x in c:
            if isinstance(x, bool) or not isinstance(x, int):
                raise GroupError(f"{self.name}: coordinates must be integers, got {x!r}")
        return c

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def is_abelian(self) -> bool:
        return False

    @property
    def name(self) -> str:
        return type(self).__name__

    def random_element(self, rng: random.Random, radius: int = 5) -> Coords:
        return self.canonical(rng.randint(-radius, radius) for _ in range(self.dim))

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class FreeAbelian(GroupSpec):
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise GroupError("FreeAbelian rank must be positive")

    @property
    def dim(self) -> int:
        return self.rank

    @property
    def is_abelian(self) -> bool:
        return True

    def identity(self) -> Coords:
        return (0,) * self.rank

    def mul(self, g: Coords, h: Coords) -> Coords:
        if self.rank == 1:
            return (g[0] + h[0],)
        return tuple(a + b for a, b in zip(g, h))

    def inv(self, g: Coords) -> Coords:
        return tuple(-a for a in g)

    def to_json(self) -> dict:
        return {"type": "free_abelian", "rank": self.rank}


@dataclass(frozen=True)
class CyclicFinite(GroupSpec):
    modulus: int
    dim = 1

    def __post_init__(self):
        if self.modulus < 1:
            raise GroupError("CyclicFinite modulus must be >= 1")

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def is_abelian(self) -> bool:
        return True

    @property
    def order(self) -> int:
        return self.modulus

    def canonical(self, coords: Iterable[int]) -> Coords:
        (x,) = super().canonical(coords)
        return (x % self.modulus,)

    def identity(self) -> Coords:
        return (0,)

    def mul(self, g: Coords, h: Coords) -> Coords:
        return ((g[0] + h[0]) % self.modulus,)

    def inv(self, g: Coords) -> Coords:
        return ((-g[0]) % self.modulus,)

    def random_element(self, rng: random.Random, radius: int = 5) -> Coords:
        return (rng.randrange(self.modulus),)

    def to_json(self) -> dict:
        return {"type": "cyclic", "modulus": self.modulus}


@dataclass(frozen=True)
class Heisenberg3(GroupSpec):
    """Integer triples with (a,b,c)(a',b',c') = (a+a', b+b', c+c'-a'b)."""

    dim = 3

    def identity(self) -> Coords:
        return (0, 0, 0)

    def mul(self, g: Coords, h: Coords) -> Coords:
        a, b, c = g
        a2, b2, c2 = h
        return (a + a2, b + b2, c + c2 - a2 * b)

    def inv(self, g: Coords) -> Coords:
        a, b, c = g
        return (-a, -b, -c - a * b)

    def to_json(self) -> dict:
        return {"type": "heisenberg"}


@dataclass(frozen=True)
class Unitriangular(GroupSpec):
    """n x n upper unitriangular integer matrices.

    Coordinates are the strictly-upper entries in row-major order.
    """

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise GroupError("Unitriangular needs n >= 2")

    @property
    def dim(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def is_abelian(self) -> bool:
        return self.n == 2

    @cached_property
    def _index(self) -> dict[tuple[int, int], int]:
        pos = {}
        for i in range(self.n):
            for j in range(i + 1, self.n):
                pos[(i, j)] = len(pos)
        return pos

    @cached_property
    def _terms(self) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
        # (i,j) entry of a product: g[i,j] + h[i,j] + sum_k g[i,k] h[k,j]
        idx = self._index
        out = []
        for (i, j), p in idx.items():
            out.append((p, tuple((idx[(i, k)], idx[(k, j)]) for k in range(i + 1, j))))
        return tuple(out)

    def identity(self) -> Coords:
        return (0,) * self.dim

    def mul(self, g: Coords, h: Coords) -> Coords:
        return tuple(
            g[p] + h[p] + sum(g[a] * h[b] for a, b in pairs) for p, pairs in self._terms
        )

    def inv(self, g: Coords) -> Coords:
        # Solve g * x = 1 column by column, shortest superdiagonals first.
        idx = self._index
        x = [0] * self.dim
        for span in range(1, self.n):
            for i in range(self.n - span):
                j = i + span
                s = g[idx[(i, j)]]
                for k in range(i + 1, j):
                    s += g[idx[(i, k)]] * x[idx[(k, j)]]
                x[idx[(i, j)]] = -s
        return tuple(x)

    def matrix(self, g: Coords) -> list[list[int]]:
        m = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        for (i, j), p in self._index.items():
            m[i][j] = g[p]
        return m

    def from_matrix(self, m: Sequence[Sequence[int]]) -> Coords:
        for i in range(self.n):
            for j in range(i + 1):
                if m[i][j] != int(i == j):
                    raise GroupError("matrix is not upper unitriangular")
        return tuple(m[i][j] for (i, j) in self._index)

    def to_json(self) -> dict:
        return {"type": "unitriangular", "n": self.n}


def _check_group_table(table: tuple[tuple[int, ...], ...]) -> tuple[int, tuple[int, ...]]:
    """Return (identity, inverses) or raise if ``table`` is not a group table."""
    k = len(table)
    if k == 0:
        raise GroupError("finite table must be non-empty")
    for row in table:
        if len(row) != k or any(not (0 <= x < k) for x in row):
            raise GroupError("finite table must be a square table over 0..k-1")
    ids = [e for e in range(k) if all(table[e][a] == a == table[a][e] for a in range(k))]
    if not ids:
        raise GroupError("finite table has no identity")
    e = ids[0]
    inverses = []
    for a in range(k):
        cands = [b for b in range(k) if table[a][b] == e and table[b][a] == e]
        if not cands:
            raise GroupError(f"finite table: element {a} has no inverse")
        inverses.append(cands[0])
    for a in range(k):
        ta = table[a]
        for b in range(k):
            tab = table[ta[b]]
            tb = table[b]
            for c in range(k):
                if tab[c] != ta[tb[c]]:
                    raise GroupError(f"finite table not associative at ({a},{b},{c})")
    return e, tuple(inverses)


@dataclass(frozen=True)
class FiniteTable(GroupSpec):
    """A finite group given by an explicit multiplication table on 0..k-1."""

    table: tuple[tuple[int, ...], ...]
    _identity: int = field(init=False, repr=False, compare=False)
    _inverses: tuple[int, ...] = field(init=False, repr=False, compare=False)
    dim = 1

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        e, inverses = _check_group_table(table)
        object.__setattr__(self, "_identity", e)
        object.__setattr__(self, "_inverses", inverses)

    @classmethod
    def cyclic(cls, k: int) -> "FiniteTable":
        return cls(tuple(tuple((a + b) % k for b in range(k)) for a in range(k)))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(len(t)) for b in range(a))

    def canonical(self, coords: Iterable[int]) -> Coords:
        (x,) = super().canonical(coords)
        if not 0 <= x < self.order:
            raise GroupError(f"finite index {x} out of range")
        return (x,)

    def identity(self) -> Coords:
        return (self._identity,)

    def mul(self, g: Coords, h: Coords) -> Coords:
        return (self.table[g[0]][h[0]],)

    def inv(self, g: Coords) -> Coords:
        return (self._inverses[g[0]],)

    def random_element(self, rng: random.Random, radius: int = 5) -> Coords:
        return (rng.randrange(self.order),)

    def to_json(self) -> dict:
        return {"type": "finite", "table": [list(r) for r in self.table]}


@dataclass(frozen=True)
class ProductWithFinite(GroupSpec):
    """Direct product base x finite; coordinates are base coords ++ (index,)."""

    base: GroupSpec
    finite: FiniteTable

    def __post_init__(self):
        if not isinstance(self.finite, FiniteTable):
            object.__setattr__(self, "finite", FiniteTable(self.finite))

    @property
    def dim(self) -> int:
        return self.base.dim + 1

    @property
    def is_finite(self) -> bool:
        return self.base.is_finite

    @property
    def is_abelian(self) -> bool:
        return self.base.is_abelian and self.finite.is_abelian

    def canonical(self, coords: Iterable[int]) -> Coords:
        c = super().canonical(coords)
        return self.base.canonical(c[:-1]) + self.finite.canonical(c[-1:])

    def identity(self) -> Coords:
        return self.base.identity() + self.finite.identity()

    def mul(self, g: Coords, h: Coords) -> Coords:
        return self.base.mul(g[:-1], h[:-1]) + (self.finite.table[g[-1]][h[-1]],)

    def inv(self, g: Coords) -> Coords:
        return self.base.inv(g[:-1]) + self.finite.inv(g[-1:])

    def random_element(self, rng: random.Random, radius: int = 5) -> Coords:
        return self.base.random_element(rng, radius) + self.finite.random_element(rng)

    def to_json(self) -> dict:
        return {
            "type": "product_with_finite",
            "base": self.base.to_json(),
            "table": [list(r) for r in self.finite.table],
        }


HEISENBERG = Heisenberg3()


def group_from_json(desc: dict) -> GroupSpec:
    kind = desc.get("type")
    try:
        if kind == "free_abelian":
            return FreeAbelian(int(desc["rank"]))
        if kind == "cyclic":
            return CyclicFinite(int(desc["modulus"]))
        if kind == "heisenberg":
            return HEISENBERG
        if kind == "unitriangular":
            return Unitriangular(int(desc["n"]))
        if kind == "finite":
            return FiniteTable(tuple(tuple(r) for r in desc["table"]))
        if kind == "product_with_finite":
            return ProductWithFinite(
                group_from_json(desc["base"]),
                FiniteTable(tuple(tuple(r) for r in desc["table"])),
            )
    except KeyError as exc:
        raise GroupError(f"group description missing field {exc}") from None
    raise GroupError(f"unknown group type {kind!r}")


@dataclass(frozen=True, slots=True)
class Element:
    group: GroupSpec
    coords: Coords

    @classmethod
    def of(cls, group: GroupSpec, coords: Iterable[int]) -> "Element":
        return cls(group, group.canonical(coords))

    def __mul__(self, other: "Element") -> "Element":
        return mul(self, other)

    def __repr__(self) -> str:
        return f"{self.group.name}{self.coords}"


def _same_group(g: Element, h: Element) -> GroupSpec:
    if g.group != h.group:
        raise SpecMismatch(f"cannot combine elements of {g.group} and {h.group}")
    return g.group


def mul(g: Element, h: Element) -> Element:
    G = _same_group(g, h)
    return Element(G, G.mul(g.coords, h.coords))


def inv(g: Element) -> Element:
    return Element(g.group, g.group.inv(g.coords))


def identity(group: GroupSpec) -> Element:
    return Element(group, group.identity())


def conjugate(group: GroupSpec, f: Coords, u: Coords) -> Coords:
    """f u f^{-1}"""
    return group.mul(group.mul(f, u), group.inv(f))


def word_product(group: GroupSpec, factors: Iterable[Coords]) -> Coords:
    out = group.identity()
    for f in factors:
        out = group.mul(out, f)
    return out
