"""Asymptotic approximate-group profiles and the asymmetric-set machinery:
positive word lengths, semigroup certificates, the uniform inverse bound,
identity padding, and the inner-ball covering criterion."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .covering import (
    CoverResult,
    CoverVerificationError,
    ExactLimit,
    floor_times,
    min_cover,
    polynomial_growth_cover,
    verify_cover,
)
from .groups import Coords
from .products import (
    BudgetExceeded,
    ElementSet,
    check_ball_generators,
    iter_balls,
    iter_powers,
    power,
)


class Status(enum.Enum):
    PROVEN = "proven"
    UNKNOWN = "unknown"


class CertificateError(ValueError):
    """A certificate precondition does not hold."""


@dataclass(frozen=True)
class ProfileEntry:
    h: int
    l_h: int
    exact: bool
    verified: bool


@dataclass
class ApproxProfile:
    r: int
    entries: list[ProfileEntry] = field(default_factory=list)
    #: set when the budget ran out before the requested range finished
    truncated_at: int | None = None
    budget_note: str = ""

    def values(self) -> dict[int, int]:
        return {e.h: e.l_h for e in self.entries}

    def empirical_h0(self) -> int | None:
        """Least tested h from which l_h never changes again."""
        if not self.entries:
            return None
        last = self.entries[-1].l_h
        h0 = self.entries[-1].h
        for e in reversed(self.entries):
            if e.l_h != last:
                break
            h0 = e.h
        return h0

    def csv_rows(self) -> list[tuple]:
        return [(self.r, e.h, e.l_h, int(e.exact)) for e in self.entries]


def approx_profile(
    A: ElementSet,
    r: int,
    h_range: Iterable[int],
    exact_limit: ExactLimit | None = None,
    budget: int | None = None,
) -> ApproxProfile:
    """l_h = cov(A^{rh}, A^h) for each h, each cover verified."""
    if not A.members:
        raise ValueError("A must be non-empty")
    if r < 2:
        raise ValueError("r must be >= 2")
    hs = sorted(set(h_range))
    profile = ApproxProfile(r)
    if not hs:
        return profile
    need = {h for h in hs} | {r * h for h in hs}
    powers: dict[int, ElementSet] = {}
    try:
        for k, P in enumerate(iter_powers(A, budget), start=1):
            if k in need:
                powers[k] = P
            if k >= max(need):
                break
    except BudgetExceeded as exc:
        profile.budget_note = str(exc)
    for h in hs:
        if h not in powers or r * h not in powers:
            profile.truncated_at = h
            break
        try:
            res = min_cover(powers[r * h], powers[h], exact_limit, budget)
        except BudgetExceeded as exc:
            profile.truncated_at = h
            profile.budget_note = str(exc)
            break
        profile.entries.append(ProfileEntry(h, len(res.X), res.exact, res.verified))
    return profile


def positive_length(
    A: ElementSet, g: Coords, cutoff: int, budget: int | None = None
) -> int | None:
    """Least n >= 1 with g in A^n, or None if none up to ``cutoff``."""
    g = A.group.canonical(g)
    for n, P in enumerate(iter_powers(A, budget), start=1):
        if n > cutoff:
            return None
        if g in P.members:
            return n
    return None


@dataclass(frozen=True)
class SemigroupCert:
    p: int | None
    inverse_lengths: dict[Coords, int]
    status: Status
    cutoff: int

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "cutoff": self.cutoff,
            "p": self.p,
            "inverse_lengths": [[list(a), n] for a, n in sorted(self.inverse_lengths.items())],
        }


def semigroup_certificate(A: ElementSet, cutoff: int, budget: int | None = None) -> SemigroupCert:
    """Search A, A^2, ... for e and for every a^{-1}, a in A.

    Finding all of them proves A generates <A> as a semigroup.  Running out
    of ``cutoff`` proves nothing and yields ``Status.UNKNOWN``.
    """
    if not A.members:
        raise ValueError("A must be non-empty")
    G = A.group
    e = G.identity()
    pending = {a: G.inv(a) for a in A.sorted()}
    lengths: dict[Coords, int] = {}
    p = None
    if cutoff >= 1:
        for n, P in enumerate(iter_powers(A, budget), start=1):
            if p is None and e in P.members:
                p = n
            for a, ai in list(pending.items()):
                if ai in P.members:
                    lengths[a] = n
                    del pending[a]
            if (p is not None and not pending) or n >= cutoff:
                break
    status = Status.PROVEN if p is not None and not pending else Status.UNKNOWN
    return SemigroupCert(p, lengths, status, cutoff)


@dataclass(frozen=True)
class InverseBoundCert:
    q: int

    def to_json(self) -> dict:
        return {"q": self.q}


def inverse_bound(A: ElementSet, cert: SemigroupCert, budget: int | None = None) -> InverseBoundCert:
    """q = max(1, max_a l+(a^{-1})), with A u A^{-1} inside A^q checked."""
    if cert.status is not Status.PROVEN:
        raise CertificateError("inverse bound needs a proven semigroup certificate")
    if not A.identity_in:
        raise CertificateError("inverse bound needs e in A")
    q = max([1, *cert.inverse_lengths.values()])
    S = A | A.inverse()
    if not S <= power(A, q, budget):
        raise CertificateError(f"A u A^-1 not contained in A^{q}")
    return InverseBoundCert(q)


@dataclass(frozen=True)
class PaddingCert:
    p: int
    reps: tuple[Coords, ...]
    E: ElementSet
    checked: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "reps": [list(w) for w in self.reps],
            "E": self.E.to_json(),
            "checked_h": list(self.checked),
        }


def padding_cert(
    A: ElementSet, p: int, h_check_range: Iterable[int], budget: int | None = None
) -> PaddingCert:
    """E = {w_j^{-1} : 0 <= j < p}, w_j the least element of A^j, w_0 = e.

    Checks (A u {e})^h is inside E A^h for every h in ``h_check_range``.
    """
    G = A.group
    if p < 1:
        raise CertificateError("p must be >= 1")
    hs = sorted(set(h_check_range))
    top = max([p, *hs])
    powers = {}
    for k, P in enumerate(iter_powers(A, budget), start=1):
        powers[k] = P
        if k >= top:
            break
    if G.identity() not in powers[p].members:
        raise CertificateError(f"identity is not in A^{p}")
    reps = [G.identity()] + [min(powers[j].members) for j in range(1, p)]
    E = ElementSet(G, {G.inv(w) for w in reps}, trusted=True)
    Ae_powers = {}
    for k, P in enumerate(iter_powers(A.with_identity(), budget), start=1):
        Ae_powers[k] = P
        if k >= max(hs, default=0):
            break
    for h in hs:
        if not verify_cover(Ae_powers[h], E, powers[h]):
            raise CoverVerificationError(f"padding inclusion failed at h={h}")
    return PaddingCert(p, tuple(reps), E, tuple(hs))


def inner_ball_check(
    A: ElementSet,
    S: ElementSet,
    theta: Fraction | int,
    h_range: Iterable[int],
    budget: int | None = None,
) -> dict[int, bool]:
    """For each h, whether B_S(floor(theta h)) is contained in A^h."""
    check_ball_generators(S)
    theta = Fraction(theta)
    hs = sorted(set(h_range))
    if not hs:
        return {}
    radii = {h: floor_times(theta, h) for h in hs}
    balls = {}
    for n, B in enumerate(iter_balls(S, budget)):
        balls[n] = B
        if n >= max(radii.values()):
            break
    out = {}
    for h, P in zip(range(1, hs[-1] + 1), iter_powers(A, budget)):
        if h in radii:
            out[h] = balls[radii[h]].members <= P.members
    return out


def word_length(S: ElementSet, g: Coords, cutoff: int, budget: int | None = None) -> int | None:
    for n, B in enumerate(iter_balls(S, budget)):
        if g in B.members:
            return n
        if n >= cutoff:
            return None
    return None


def criterion_cover(
    A: ElementSet,
    S: ElementSet,
    theta: Fraction | int,
    r: int,
    h: int,
    budget: int | None = None,
    length_cutoff: int = 64,
) -> CoverResult:
    """Cover A^{rh} by translates of A^h through the word-ball sandwich
    A^{rh} in B_S(C r h) in X B_S(floor(theta h)) in X A^h."""
    if not A.identity_in:
        raise CertificateError("criterion_cover needs e in A")
    theta = Fraction(theta)
    if not inner_ball_check(A, S, theta, [h], budget)[h]:
        raise CertificateError(f"inner ball criterion fails at h={h}")
    C = 1
    for b in A.sorted():
        n = word_length(S, b, length_cutoff, budget)
        if n is None:
            raise CertificateError(f"{b} not reached by S within {length_cutoff}")
        C = max(C, n)
    theta0 = min(theta, Fraction(1))
    ball_cover = polynomial_growth_cover(S, C * r, theta0, h, budget)
    Arh = power(A, r * h, budget)
    Ah = power(A, h, budget)
    if not verify_cover(Arh, ball_cover.X, Ah):
        raise CoverVerificationError("A^{rh} not covered by X A^h")
    notes = dict(ball_cover.notes, C=C, r=r, h=h)
    return CoverResult(ball_cover.X, Ah, exact=False, bound=ball_cover.bound, verified=True, notes=notes)


def power_comparison_holds(
    A: ElementSet, q: int, hs: Sequence[int], budget: int | None = None
) -> bool:
    """A^h within S^h and B_S(floor(h/q)) within A^h, S = A u A^{-1}."""
    S = (A | A.inverse()).with_identity()
    top = max(hs)
    Ah = dict(zip(range(1, top + 1), iter_powers(A, budget)))
    Sb = dict(zip(range(0, top + 1), iter_balls(S, budget)))
    return all(Ah[h] <= Sb[h] and Sb[h // q] <= Ah[h] for h in hs)
