"""Translate covers: Ruzsa's construction, minimum covers, and the
polynomial-growth covering of large balls by small ones."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .groups import Coords
from .products import BudgetExceeded, ElementSet, ball, check_ball_generators, product
from .setcover import exact_cover, greedy_cover

DEFAULT_MAX_CANDIDATES = 20_000
DEFAULT_MAX_UNIVERSE = 50_000


class CoverVerificationError(AssertionError):
    """A constructed cover failed its own membership check."""


@dataclass(frozen=True)
class ExactLimit:
    """Instance caps under which ``min_cover`` attempts an exact solve."""

    max_candidates: int = DEFAULT_MAX_CANDIDATES
    max_universe: int = DEFAULT_MAX_UNIVERSE
    node_limit: int | None = 2_000_000

    @classmethod
    def disabled(cls) -> "ExactLimit":
        return cls(0, 0, 0)


@dataclass
class CoverResult:
    X: ElementSet
    multiplier: ElementSet
    exact: bool = False
    bound: Fraction | None = None
    verified: bool = False
    notes: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.X)

    def to_json(self) -> dict:
        out = {
            "X": self.X.to_json(),
            "size": len(self.X),
            "exact": self.exact,
            "verified": self.verified,
            "multiplier_size": len(self.multiplier),
        }
        if self.bound is not None:
            out["bound"] = f"{self.bound.numerator}/{self.bound.denominator}"
        out.update(self.notes)
        return out


def verify_cover(E: ElementSet, X: ElementSet, F: ElementSet) -> bool:
    """True iff E is contained in XF, by testing x^{-1}e in F."""
    E._check(X)
    E._check(F)
    G = E.group
    inverses = [G.inv(x) for x in X.sorted()]
    fm = F.members
    mul = G.mul
    for e in E.members:
        if not any(mul(xi, e) in fm for xi in inverses):
            return False
    return True


def uncovered(E: ElementSet, X: ElementSet, F: ElementSet) -> list[Coords]:
    G = E.group
    inverses = [G.inv(x) for x in X.sorted()]
    return sorted(e for e in E.members if not any(G.mul(xi, e) in F.members for xi in inverses))


def ruzsa_cover(E: ElementSet, F: ElementSet, budget: int | None = None) -> CoverResult:
    """Maximal disjoint family of left translates xF, x in E, scanned in
    lexicographic order.  Then E is covered by X F F^{-1} and |X| <= |EF|/|F|.
    """
    E._check(F)
    if not E.members or not F.members:
        raise ValueError("ruzsa_cover needs non-empty sets")
    G = E.group
    mul = G.mul
    fs = F.sorted()
    used: set[Coords] = set()
    X = []
    for x in E.sorted():
        translate = [mul(x, f) for f in fs]
        if used.isdisjoint(translate):
            used.update(translate)
            X.append(x)
    Xs = ElementSet(G, X, trusted=True)
    EF = product(E, F, budget)
    bound = Fraction(len(EF), len(F))
    FFinv = product(F, F.inverse(), budget)
    if len(Xs) > bound:
        raise CoverVerificationError(f"|X|={len(Xs)} exceeds |EF|/|F|={bound}")
    if not verify_cover(E, Xs, FFinv):
        raise CoverVerificationError("E is not covered by X F F^{-1}")
    return CoverResult(Xs, FFinv, exact=False, bound=bound, verified=True)


def counting_bound(E: ElementSet, F: ElementSet) -> int:
    return -(-len(E) // len(F))


def min_cover(
    E: ElementSet,
    F: ElementSet,
    exact_limit: ExactLimit | None = None,
    budget: int | None = None,
) -> CoverResult:
    """Fewest left translates of F covering E.

    Candidates are E F^{-1}, since x covers e exactly when x lies in eF^{-1}.
    Small instances are solved exactly; larger ones fall back to greedy.
    """
    E._check(F)
    if not E.members or not F.members:
        raise ValueError("min_cover needs non-empty sets")
    if exact_limit is None:
        exact_limit = ExactLimit()
    G = E.group
    mul = G.mul
    index = {e: i for i, e in enumerate(E.sorted())}
    universe = (1 << len(index)) - 1
    f_inv = [G.inv(f) for f in F.sorted()]
    masks: dict[Coords, int] = {}
    for e, i in index.items():
        bit = 1 << i
        for fi in f_inv:
            x = mul(e, fi)
            masks[x] = masks.get(x, 0) | bit
        if budget is not None and len(masks) > budget:
            raise BudgetExceeded("cover candidates", len(masks), budget)
    cands = sorted(masks.items())
    greedy = greedy_cover(universe, cands)
    chosen, exact, nodes = greedy, False, 0
    within = len(cands) <= exact_limit.max_candidates and len(index) <= exact_limit.max_universe
    if within and exact_limit.node_limit != 0:
        sol = exact_cover(universe, cands, greedy, exact_limit.node_limit)
        chosen, exact, nodes = sol.chosen, sol.optimal, sol.nodes
    X = ElementSet(G, chosen, trusted=True)
    if not verify_cover(E, X, F):
        raise CoverVerificationError("min_cover produced a non-cover")
    lower = counting_bound(E, F)
    if len(X) < lower:
        raise CoverVerificationError(f"|X|={len(X)} below counting bound {lower}")
    notes = {"candidates": len(cands), "greedy_size": len(greedy), "nodes": nodes}
    return CoverResult(X, F, exact=exact, verified=True, notes=notes)


def floor_times(q: Fraction, h: int) -> int:
    return math.floor(Fraction(q) * h)


def polynomial_growth_cover(
    S: ElementSet, R0: Fraction | int, theta: Fraction | int, h: int, budget: int | None = None
) -> CoverResult:
    """Cover B_S(floor(R0 h)) by translates of B_S(floor(theta h)).

    Applies the Ruzsa construction to E = B_S(R_h), F = B_S(q_h) with
    q_h = floor(M_h / 2); since FF^{-1} = B_S(2 q_h) lies in B_S(M_h) the
    resulting X covers E by B_S(M_h).
    """
    R0, theta = Fraction(R0), Fraction(theta)
    if R0 < 1:
        raise ValueError("R0 must be >= 1")
    if not 0 < theta <= 1:
        raise ValueError("theta must lie in (0, 1]")
    check_ball_generators(S)
    R_h = floor_times(R0, h)
    M_h = floor_times(theta, h)
    q_h = M_h // 2
    if q_h < 1:
        raise ValueError(f"h={h} too small: floor(theta*h/2) must be >= 1")
    E = ball(S, R_h, budget)
    F = ball(S, q_h, budget)
    res = ruzsa_cover(E, F, budget)
    B_M = ball(S, M_h, budget)
    if not verify_cover(E, res.X, B_M):
        raise CoverVerificationError("ball inclusion failed")
    notes = {"R_h": R_h, "M_h": M_h, "q_h": q_h, "E_size": len(E), "F_size": len(F)}
    return CoverResult(res.X, B_M, exact=False, bound=res.bound, verified=True, notes=notes)
