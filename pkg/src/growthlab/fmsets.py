"""Finite windows into sets of the form FM, M a finitely generated
subsemigroup normalized by F.

M is infinite in general, so every check runs on truncations
M_L = {e} u {words of length <= L in the generators}.  Truncation lengths
are chosen so each inclusion is a sound statement about the truncations,
and the comparison window is F^h M_L, which grows with L.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .asymptotics import CertificateError
from .covering import CoverResult, ExactLimit, min_cover, verify_cover
from .groups import Coords, GroupSpec, Heisenberg3, conjugate
from .products import ElementSet, iter_powers, power, product


class Verdict(enum.Enum):
    PROVEN = "proven"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SemigroupDesc:
    generators: ElementSet
    includes_identity: bool = True

    def __post_init__(self):
        if not self.generators.members:
            raise ValueError("a subsemigroup needs at least one generator")

    @property
    def group(self) -> GroupSpec:
        return self.generators.group


@dataclass(frozen=True)
class TruncatedSet:
    base: ElementSet
    radius: int


def truncation_levels(M: SemigroupDesc, budget: int | None = None):
    """Yield M_0 = {e}, M_1, M_2, ..."""
    G = M.group
    yield ElementSet(G, {G.identity()}, trusted=True)
    yield from iter_powers(M.generators.with_identity(), budget)


def truncate_semigroup(M: SemigroupDesc, L: int, budget: int | None = None) -> TruncatedSet:
    if L < 0:
        raise ValueError("truncation length must be >= 0")
    for n, T in enumerate(truncation_levels(M, budget)):
        if n == L:
            return TruncatedSet(T, L)
    raise AssertionError("unreachable")


def _in_cone_2d(p: tuple[int, int], vectors: list[tuple[int, int]]) -> bool:
    """Whether p is a non-negative real combination of ``vectors``."""
    if p == (0, 0):
        return True

    def cross(u, v):
        return u[0] * v[1] - u[1] * v[0]

    def dot(u, v):
        return u[0] * v[0] + u[1] * v[1]

    vs = [v for v in vectors if v != (0, 0)]
    for v in vs:
        if cross(v, p) == 0 and dot(v, p) > 0:
            return True
    for i, v in enumerate(vs):
        for w in vs[i + 1 :]:
            d = cross(v, w)
            if d == 0:
                continue
            alpha = Fraction(cross(p, w), d)
            beta = Fraction(cross(v, p), d)
            if alpha >= 0 and beta >= 0:
                return True
    return False


def provably_outside(M: SemigroupDesc, g: Coords) -> bool:
    """Sound (never false-positive) test that g is not in M.

    Heisenberg only: when every generator has a = 0 (or every generator has
    b = 0) the generators live in an abelian subgroup where the law is
    coordinate addition, so M sits inside the cone they span.
    """
    G = M.group
    if not isinstance(G, Heisenberg3):
        return False
    gens = M.generators.sorted()
    for zero_axis, free_axis in ((0, 1), (1, 0)):
        if all(u[zero_axis] == 0 for u in gens):
            if g[zero_axis] != 0:
                return True
            cone = [(u[free_axis], u[2]) for u in gens]
            return not _in_cone_2d((g[free_axis], g[2]), cone)
    return False


@dataclass
class NormalizerReport:
    verdict: Verdict
    depth: int
    #: positive-word length of every conjugate found, keyed by (direction, u)
    lengths: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def slack(self) -> int:
        return max([1, *self.lengths.values()])

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "depth": self.depth,
            "slack": self.slack,
            "reason": self.reason,
            "conjugate_lengths": [
                [d, list(u), n] for (d, u), n in sorted(self.lengths.items())
            ],
        }


def normalizes(f: Coords, M: SemigroupDesc, depth: int, budget: int | None = None) -> NormalizerReport:
    """Decide f M f^{-1} = M as far as a depth-``depth`` truncation allows.

    PROVEN: f u f^{-1} and f^{-1} u f lie in M_depth for every generator u.
    REFUTED: one of them is provably outside M, either by a coordinate
    obstruction or because the truncations stabilized (M is finite).
    """
    G = M.group
    f = G.canonical(f)
    finv = G.inv(f)
    targets = {}
    for u in M.generators.sorted():
        targets[("f u f^-1", u)] = conjugate(G, f, u)
        targets[("f^-1 u f", u)] = conjugate(G, finv, u)
    lengths: dict = {}
    prev_size = None
    stabilized = False
    for n, T in enumerate(truncation_levels(M, budget)):
        for key, g in targets.items():
            if key not in lengths and g in T.members:
                lengths[key] = n
        if len(lengths) == len(targets):
            return NormalizerReport(Verdict.PROVEN, depth, lengths)
        if prev_size == len(T):
            stabilized = True
            break
        prev_size = len(T)
        if n >= depth:
            break
    missing = [k for k in targets if k not in lengths]
    if stabilized:
        return NormalizerReport(
            Verdict.REFUTED, depth, lengths, f"M is finite and misses {missing[0][0]} for u={missing[0][1]}"
        )
    for key in missing:
        if provably_outside(M, targets[key]):
            return NormalizerReport(
                Verdict.REFUTED,
                depth,
                lengths,
                f"{key[0]} = {targets[key]} for u={key[1]} violates a coordinate obstruction",
            )
    return NormalizerReport(Verdict.UNKNOWN, depth, lengths)


def _normalization_slack(F: ElementSet, M: SemigroupDesc, depth: int, budget: int | None) -> int:
    slack = 1
    for f in F.sorted():
        rep = normalizes(f, M, depth, budget)
        if rep.verdict is not Verdict.PROVEN:
            raise CertificateError(f"normalization of M by {f} is {rep.verdict.value} at depth {depth}")
        slack = max(slack, rep.slack)
    return slack


def conjugation_length(L: int, slack: int, factors: int) -> int:
    """Length bound after pushing ``factors`` length-L blocks of M through F.

    Each pass through an element of F multiplies word length by at most
    ``slack``, so the total is L (1 + s + ... + s^{factors-1}).
    """
    return L * sum(slack**j for j in range(factors))


@dataclass
class FMReport:
    holds: bool
    h: int
    L: int
    L_prime: int
    slack: int
    lhs_size: int
    rhs_size: int
    window_size: int
    lhs_in_rhs: bool
    window_in_lhs: bool

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "h": self.h,
            "window": "F^h M_L",
            "L": self.L,
            "L_prime": self.L_prime,
            "slack": self.slack,
            "window_size": self.window_size,
            "lhs_size": self.lhs_size,
            "rhs_size": self.rhs_size,
            "lhs_in_rhs": self.lhs_in_rhs,
            "window_in_lhs": self.window_in_lhs,
        }


def fm_power_check(
    F: ElementSet,
    M: SemigroupDesc,
    h: int,
    L: int,
    budget: int | None = None,
    depth: int = 8,
) -> FMReport:
    """Truncated check of (FM)^h = F^h M.

    Verifies (F M_L)^h within F^h M_{L'} for L' = conjugation_length(L, s, h),
    and the window F^h M_L within (F M_L)^h.
    """
    slack = _normalization_slack(F, M, depth, budget)
    L_prime = conjugation_length(L, slack, h)
    ML = truncate_semigroup(M, L, budget).base
    MLp = truncate_semigroup(M, L_prime, budget).base
    lhs = power(product(F, ML, budget), h, budget)
    Fh = power(F, h, budget)
    rhs = product(Fh, MLp, budget)
    window = product(Fh, ML, budget)
    a = lhs <= rhs
    b = window <= lhs
    return FMReport(a and b, h, L, L_prime, slack, len(lhs), len(rhs), len(window), a, b)


def lift_cover_fm(
    F: ElementSet,
    M: SemigroupDesc,
    r: int,
    h: int,
    L: int,
    exact_limit: ExactLimit | None = None,
    budget: int | None = None,
    depth: int = 8,
) -> CoverResult:
    """Reuse a cover of F^{rh} by F^h for the truncated FM sets.

    With X covering F^{rh} by F^h, checks (F M_L)^{rh} within X F^h M_{L'},
    which lies inside X (F M_{L'})^h.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    slack = _normalization_slack(F, M, depth, budget)
    base = min_cover(power(F, r * h, budget), power(F, h, budget), exact_limit, budget)
    L_prime = conjugation_length(L, slack, r * h)
    ML = truncate_semigroup(M, L, budget).base
    MLp = truncate_semigroup(M, L_prime, budget).base
    lhs = power(product(F, ML, budget), r * h, budget)
    multiplier = product(power(F, h, budget), MLp, budget)
    ok = verify_cover(lhs, base.X, multiplier)
    notes = {"L": L, "L_prime": L_prime, "slack": slack, "lhs_size": len(lhs), "base_exact": base.exact}
    return CoverResult(base.X, multiplier, exact=base.exact, verified=ok, notes=notes)


def thicken_check(
    B: ElementSet,
    A: ElementSet,
    m: int,
    r: int,
    h_range: Iterable[int],
    exact_limit: ExactLimit | None = None,
    budget: int | None = None,
) -> dict[int, bool]:
    """For B in A in B^m: a cover of B^{mrh} by B^h also covers A^{rh} by A^h."""
    if not B <= A:
        raise CertificateError("B is not contained in A")
    if not A <= power(B, m, budget):
        raise CertificateError(f"A is not contained in B^{m}")
    out = {}
    for h in sorted(set(h_range)):
        cover = min_cover(power(B, m * r * h, budget), power(B, h, budget), exact_limit, budget)
        out[h] = verify_cover(power(A, r * h, budget), cover.X, power(A, h, budget))
    return out
