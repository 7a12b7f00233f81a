"""Minimum set cover over bitmask-encoded candidate sets.

Candidates are given as ``(key, mask)`` pairs where bit i of ``mask`` means the
candidate covers universe element i.  ``key`` orders candidates for
tie-breaking and must be totally ordered.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Hashable, Sequence


@dataclass
class CoverSolution:
    chosen: list  # candidate keys
    optimal: bool
    nodes: int = 0


def _reduce(cands: Sequence[tuple[Hashable, int]]) -> list[tuple[Hashable, int]]:
    """Drop empty, duplicate and dominated candidates.

    A candidate whose mask is contained in another's never helps a minimum
    cover; among identical masks the least key survives.
    """
    best: dict[int, Hashable] = {}
    for key, mask in cands:
        if mask and (mask not in best or key < best[mask]):
            best[mask] = key
    items = sorted(best.items(), key=lambda kv: (-kv[0].bit_count(), kv[1]))
    kept: list[tuple[Hashable, int]] = []
    # index kept masks by their lowest set bit to limit superset scans
    by_bit: dict[int, list[int]] = {}
    for mask, key in items:
        low = mask & -mask
        dominated = False
        # any superset must share the lowest bit of ``mask``
        for other in by_bit.get(low, ()):
            if mask & other == mask:
                dominated = True
                break
        if dominated:
            continue
        kept.append((key, mask))
        m = mask
        while m:
            b = m & -m
            by_bit.setdefault(b, []).append(mask)
            m ^= b
    return kept


def greedy_cover(universe: int, cands: Sequence[tuple[Hashable, int]]) -> list:
    """Largest uncovered gain first; ties go to the least key."""
    uncovered = universe
    chosen = []
    pool = sorted(cands, key=lambda kv: kv[0])
    while uncovered:
        best_key, best_mask, best_gain = None, 0, 0
        for key, mask in pool:
            gain = (mask & uncovered).bit_count()
            if gain > best_gain:
                best_key, best_mask, best_gain = key, mask, gain
        if best_gain == 0:
            raise ValueError("candidates do not cover the universe")
        chosen.append(best_key)
        uncovered &= ~best_mask
    return chosen


class _NodeLimit(Exception):
    pass


def exact_cover(
    universe: int,
    cands: Sequence[tuple[Hashable, int]],
    incumbent: list | None = None,
    node_limit: int | None = 2_000_000,
) -> CoverSolution:
    """Branch and bound for a minimum-cardinality cover.

    Branches on the uncovered element with the fewest covering candidates.
    Bounds with the larger of the counting bound and a disjoint-element
    packing bound.  When ``node_limit`` is hit the best cover found so far is
    returned with ``optimal=False``.
    """
    red = _reduce(cands)
    if incumbent is None:
        incumbent = greedy_cover(universe, red)
    best = list(incumbent)
    nbits = universe.bit_length()
    covering: list[list[tuple[Hashable, int]]] = [[] for _ in range(nbits)]
    for key, mask in red:
        m = mask
        while m:
            b = m & -m
            covering[b.bit_length() - 1].append((key, mask))
            m ^= b
    for lst in covering:
        lst.sort(key=lambda kv: (-kv[1].bit_count(), kv[0]))
    max_size = max(mask.bit_count() for _, mask in red)
    nodes = 0

    def lower_bound(uncovered: int) -> int:
        count = -(-uncovered.bit_count() // max_size)
        # elements whose candidate neighbourhoods are pairwise disjoint each
        # need their own set
        blocked = 0
        packing = 0
        m = uncovered
        while m:
            b = m & -m
            m ^= b
            if b & blocked:
                continue
            packing += 1
            for _, mask in covering[b.bit_length() - 1]:
                blocked |= mask
        return max(count, packing)

    def search(uncovered: int, chosen: list) -> None:
        nonlocal best, nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _NodeLimit
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + lower_bound(uncovered) >= len(best):
            return
        pivot, pivot_n = -1, None
        m = uncovered
        while m:
            b = m & -m
            m ^= b
            i = b.bit_length() - 1
            n = len(covering[i])
            if pivot_n is None or n < pivot_n:
                pivot, pivot_n = i, n
                if n <= 1:
                    break
        options = sorted(
            covering[pivot], key=lambda kv: (-(kv[1] & uncovered).bit_count(), kv[0])
        )
        for key, mask in options:
            chosen.append(key)
            search(uncovered & ~mask, chosen)
            chosen.pop()

    if lower_bound(universe) >= len(best):
        return CoverSolution(best, True, 0)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), len(best) + 1000))
    try:
        search(universe, [])
    except _NodeLimit:
        return CoverSolution(best, False, nodes)
    return CoverSolution(best, True, nodes)
