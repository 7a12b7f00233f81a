"""The one-sided Heisenberg family A = {e} u {x y^n : n >= 0}.

A is infinite, so it is never enumerated.  Membership in A^h is decided by a
closed-form test on coordinates: a product of k >= 1 non-identity factors
x y^{n_1} ... x y^{n_k} equals (k, sum n_i, -sum (k-i) n_i).  The weights
k-1, ..., 0 split a total mass B, so the third coordinate reaches exactly the
integers in [-(k-1)B, 0].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groups import HEISENBERG, Coords, Element, GroupSpec, Heisenberg3, word_product
from .products import ElementSet

X_GEN = (1, 0, 0)
Y_GEN = (0, 1, 0)


def _require_heisenberg(group: GroupSpec) -> None:
    if not isinstance(group, Heisenberg3):
        raise TypeError(f"expected the Heisenberg group, got {group!r}")


def xy(n: int) -> Coords:
    """x y^n"""
    return (1, n, 0)


def heis_product(ns: Sequence[int]) -> Coords:
    """(x y^{n_1}) ... (x y^{n_k}) in closed form, checked against iterated mul."""
    if not ns:
        raise ValueError("need at least one factor")
    if any(n < 0 for n in ns):
        raise ValueError("exponents must be >= 0")
    k = len(ns)
    closed = (k, sum(ns), -sum((k - i) * n for i, n in enumerate(ns, start=1)))
    folded = word_product(HEISENBERG, (xy(n) for n in ns))
    if closed != folded:
        raise AssertionError(f"closed form {closed} != product {folded}")
    return closed


def member_Ah(u: Element | Iterable[int], h: int) -> bool:
    """Exact membership of u in A^h."""
    if isinstance(u, Element):
        _require_heisenberg(u.group)
        u = u.coords
    k, B, C = HEISENBERG.canonical(u)
    if (k, B, C) == (0, 0, 0):
        return True
    return 1 <= k <= h and B >= 0 and -(k - 1) * B <= C <= 0


def witness_element(r: int, h: int, n: int) -> Coords:
    """g_n = (x y^n) x^{rh-1} = (rh, n, -(rh-1) n)"""
    return (r * h, n, -(r * h - 1) * n)


def slope_inequality(r: int, h: int, k: int, n: int, b: int, c: int) -> bool:
    """(rh - k) n <= b - c"""
    if not 1 <= k <= h:
        raise ValueError("need 1 <= k <= h")
    return (r * h - k) * n <= b - c


def default_n_max(X: Iterable[Coords]) -> int:
    return 4 * (1 + max([0, *(max(0, b - c) for _, b, c in X)]))


@dataclass
class WitnessReport:
    r: int
    h: int
    X: list[Coords]
    n: int | None
    n_max: int
    reasons: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "h": self.h,
            "X": [list(t) for t in self.X],
            "n": self.n,
            "n_max": self.n_max,
            "found": self.n is not None,
            "g_n": list(witness_element(self.r, self.h, self.n)) if self.n is not None else None,
            "per_t": self.reasons,
        }


def _failure_reason(u: Coords, h: int) -> str:
    k, B, C = u
    if u == (0, 0, 0):
        return "covered"
    if not 1 <= k <= h:
        return f"first coordinate {k} outside [1, {h}]"
    if B < 0:
        return f"second coordinate {B} negative"
    if C > 0:
        return f"third coordinate {C} positive"
    if C < -(k - 1) * B:
        return f"third coordinate {C} below -(k-1)B = {-(k - 1) * B}"
    return "covered"


def find_witness(
    r: int, h: int, X: ElementSet | Iterable[Iterable[int]], n_max: int | None = None
) -> WitnessReport:
    """Least n <= n_max with g_n outside X A^h."""
    if r < 2 or h < 1:
        raise ValueError("need r >= 2 and h >= 1")
    if isinstance(X, ElementSet):
        _require_heisenberg(X.group)
        ts = X.sorted()
    else:
        ts = sorted({HEISENBERG.canonical(t) for t in X})
    if n_max is None:
        n_max = default_n_max(ts)
    inverses = [(t, HEISENBERG.inv(t)) for t in ts]
    report = WitnessReport(r, h, ts, None, n_max)
    for n in range(n_max + 1):
        g = witness_element(r, h, n)
        if not member_Ah(g, r * h):
            raise AssertionError(f"g_{n} not in A^{r * h}")
        if all(not member_Ah(HEISENBERG.mul(ti, g), h) for _, ti in inverses):
            report.n = n
            report.reasons = [
                {"t": list(t), "u": list(HEISENBERG.mul(ti, g)), "reason": _failure_reason(HEISENBERG.mul(ti, g), h)}
                for t, ti in inverses
            ]
            return report
    return report


def slope_rules_out(r: int, h: int, n: int, t: Coords) -> bool:
    """True when the slope inequality fails for every 1 <= k <= h and g_n != t,
    so t cannot cover g_n."""
    _, b, c = t
    if tuple(t) == witness_element(r, h, n):
        return False
    return all(not slope_inequality(r, h, k, n, b, c) for k in range(1, h + 1))
