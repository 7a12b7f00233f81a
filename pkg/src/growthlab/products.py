"""Product sets A^h, word balls B_S(n), growth sequences and degree fits."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .groups import (
    Coords,
    CyclicFinite,
    Element,
    FiniteTable,
    FreeAbelian,
    GroupSpec,
    Heisenberg3,
    ProductWithFinite,
    SpecMismatch,
    Unitriangular,
)

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    """An intermediate or final set grew past the element-count cap."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: {size} elements exceeds budget {budget}")
        self.size = size
        self.budget = budget


def default_budget() -> int:
    env = os.environ.get("GROWTHLAB_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _budget(budget: int | None) -> int:
    return default_budget() if budget is None else budget


class ElementSet:
    """Immutable finite set of canonical elements of one group."""

    __slots__ = ("group", "members")

    def __init__(self, group: GroupSpec, members: Iterable[Coords] = (), *, trusted: bool = False):
        self.group = group
        if trusted:
            self.members = members if isinstance(members, frozenset) else frozenset(members)
        else:
            self.members = frozenset(group.canonical(m) for m in members)

    @classmethod
    def of(cls, group: GroupSpec, *coords: Iterable[int]) -> "ElementSet":
        return cls(group, coords)

    def __contains__(self, g) -> bool:
        if isinstance(g, Element):
            if g.group != self.group:
                raise SpecMismatch("membership test across groups")
            g = g.coords
        return tuple(g) in self.members

    def __iter__(self) -> Iterator[Coords]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.group == other.group and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.group, self.members))

    def __le__(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.members <= other.members

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.group, self.members | other.members, trusted=True)

    def __repr__(self) -> str:
        body = ", ".join(map(str, self.sorted()[:8]))
        more = ", ..." if len(self) > 8 else ""
        return f"ElementSet({self.group.name}, {{{body}{more}}}, size={len(self)})"

    def _check(self, other: "ElementSet") -> None:
        if other.group != self.group:
            raise SpecMismatch(f"{self.group} vs {other.group}")

    def sorted(self) -> list[Coords]:
        """Members in lexicographic coordinate order."""
        return sorted(self.members)

    def elements(self) -> list[Element]:
        return [Element(self.group, c) for c in self.sorted()]

    @property
    def identity_in(self) -> bool:
        return self.group.identity() in self.members

    def inverse(self) -> "ElementSet":
        inv = self.group.inv
        return ElementSet(self.group, {inv(g) for g in self.members}, trusted=True)

    def is_symmetric(self) -> bool:
        inv = self.group.inv
        return all(inv(g) in self.members for g in self.members)

    def with_identity(self) -> "ElementSet":
        return ElementSet(self.group, self.members | {self.group.identity()}, trusted=True)

    def translate(self, x: Coords) -> "ElementSet":
        """Left translate xS."""
        mul = self.group.mul
        return ElementSet(self.group, {mul(x, s) for s in self.members}, trusted=True)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.sorted()]


def product(E: ElementSet, F: ElementSet, budget: int | None = None) -> ElementSet:
    """The product set EF."""
    E._check(F)
    budget = _budget(budget)
    mul = E.group.mul
    out: set[Coords] = set()
    fs = list(F.members)
    for e in E.members:
        out.update(mul(e, f) for f in fs)
        if len(out) > budget:
            raise BudgetExceeded("product set", len(out), budget)
    return ElementSet(E.group, out, trusted=True)


def _step(cur: Iterable[Coords], A: Sequence[Coords], mul, out: set, budget: int, what: str) -> None:
    for g in cur:
        out.update(mul(g, a) for a in A)
        if len(out) > budget:
            raise BudgetExceeded(what, len(out), budget)


def iter_powers(A: ElementSet, budget: int | None = None) -> Iterator[ElementSet]:
    """Yield A, A^2, A^3, ... (products of exactly h factors).

    When e is in A the powers are nested, so only the newest shell needs to be
    multiplied by A at each step.
    """
    if not A.members:
        raise ValueError("power of an empty set")
    budget = _budget(budget)
    mul = A.group.mul
    gens = sorted(A.members)
    cur = set(A.members)
    yield ElementSet(A.group, frozenset(cur), trusted=True)
    if A.identity_in:
        shell = set(cur)
        while True:
            nxt = set(cur)
            _step(shell, gens, mul, nxt, budget, "power")
            shell = nxt - cur
            cur = nxt
            yield ElementSet(A.group, frozenset(cur), trusted=True)
    while True:
        nxt: set[Coords] = set()
        _step(cur, gens, mul, nxt, budget, "power")
        cur = nxt
        yield ElementSet(A.group, frozenset(cur), trusted=True)


def power(A: ElementSet, h: int, budget: int | None = None) -> ElementSet:
    """A^h: all products of exactly ``h`` elements of ``A``."""
    if h < 1:
        raise ValueError("power needs h >= 1")
    for k, P in enumerate(iter_powers(A, budget), start=1):
        if k == h:
            return P
    raise AssertionError("unreachable")


def check_ball_generators(S: ElementSet) -> None:
    if not S.identity_in:
        raise ValueError("ball generating set must contain the identity")
    if not S.is_symmetric():
        raise ValueError("ball generating set must be symmetric")


def iter_balls(S: ElementSet, budget: int | None = None) -> Iterator[ElementSet]:
    """Yield B_S(0), B_S(1), ... by breadth-first shells."""
    check_ball_generators(S)
    yield ElementSet(S.group, {S.group.identity()}, trusted=True)
    yield from iter_powers(S, budget)


def ball(S: ElementSet, n: int, budget: int | None = None) -> ElementSet:
    """B_S(n) = S^n, with S^0 = {e}."""
    if n < 0:
        raise ValueError("radius must be >= 0")
    for k, B in enumerate(iter_balls(S, budget)):
        if k == n:
            return B
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class GrowthRecord:
    n: int
    size: int


@dataclass(frozen=True)
class GrowthEstimate:
    d_hat: float
    c1_hat: float
    c2_hat: float
    window: tuple[int, int]


def growth_sequence(S: ElementSet, n_max: int, budget: int | None = None) -> list[GrowthRecord]:
    records = []
    for n, B in enumerate(iter_balls(S, budget)):
        records.append(GrowthRecord(n, len(B)))
        if n >= n_max:
            break
    return records


def default_window(records: Sequence[GrowthRecord]) -> tuple[int, int]:
    """Drop radii below 4, then keep the upper half of what remains."""
    ns = [r.n for r in records if r.n >= 4]
    if not ns:
        return (0, -1)
    lo = ns[len(ns) // 2] if len(ns) >= 6 else ns[0]
    return (lo, ns[-1])


def estimate_degree(
    records: Sequence[GrowthRecord], window: tuple[int, int] | None = None
) -> GrowthEstimate:
    """Least-squares slope of log|B(n)| against log n over ``window``."""
    if window is None:
        window = default_window(records)
    lo, hi = window
    pts = [r for r in records if lo <= r.n <= hi and r.n >= 2]
    if len(pts) < 3:
        raise ValueError(f"degree fit window {window} holds fewer than 3 radii >= 2")
    x = np.log([r.n for r in pts])
    y = np.log([r.size for r in pts])
    slope = float(np.polyfit(x, y, 1)[0])
    d_hat = max(slope, 0.0)
    ratios = [r.size / r.n**d_hat for r in pts]
    return GrowthEstimate(d_hat, min(ratios), max(ratios), (lo, hi))


def bass_guivarch_degree(group: GroupSpec) -> int:
    """sum_i i * rank(G_i / G_{i+1}) over the lower central series."""
    if isinstance(group, ProductWithFinite):
        return bass_guivarch_degree(group.base)
    if isinstance(group, (CyclicFinite, FiniteTable)):
        return 0
    if isinstance(group, FreeAbelian):
        ranks = [group.rank]
    elif isinstance(group, Heisenberg3):
        ranks = [2, 1]
    elif isinstance(group, Unitriangular):
        # G_i / G_{i+1} is free abelian on the entries of the i-th superdiagonal
        ranks = [group.n - i for i in range(1, group.n)]
    else:
        raise TypeError(f"no degree formula for {group!r}")
    return sum(i * r for i, r in enumerate(ranks, start=1))
