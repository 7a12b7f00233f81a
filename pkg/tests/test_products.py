import itertools
import random
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growthlab.groups import HEISENBERG, CyclicFinite, FreeAbelian, Unitriangular, word_product
from growthlab.products import (
    BudgetExceeded,
    ElementSet,
    GrowthRecord,
    ball,
    bass_guivarch_degree,
    estimate_degree,
    growth_sequence,
    power,
)

from .conftest import E3, X, XI, Y, YI, Z1, heis


def brute_power(A: ElementSet, h: int) -> set:
    """Every ordered word of length h, multiplied out."""
    G = A.group
    return {word_product(G, w) for w in itertools.product(sorted(A.members), repeat=h)}


def bfs_ball(gens, G, n):
    """Breadth-first search in the Cayley graph, distances <= n."""
    dist = {G.identity(): 0}
    queue = deque([G.identity()])
    while queue:
        g = queue.popleft()
        if dist[g] == n:
            continue
        for s in gens:
            nxt = G.mul(g, s)
            if nxt not in dist:
                dist[nxt] = dist[g] + 1
                queue.append(nxt)
    return set(dist)


def test_power_examples():
    assert power(Z1(0, 1), 3) == Z1(0, 1, 2, 3)
    G = FreeAbelian(2)
    e = ElementSet(G, [(0, 0)])
    assert power(e, 7) == e
    assert power(heis(X, Y), 2) == heis((2, 0, 0), (1, 1, 0), (1, 1, -1), (0, 2, 0))


def test_ball_examples(heis_S):
    assert ball(Z1(-1, 0, 1), 2) == Z1(-2, -1, 0, 1, 2)
    assert ball(heis_S, 0) == heis(E3)
    assert len(ball(heis_S, 2)) == 17
    assert ball(heis_S, 2).members == bfs_ball([X, XI, Y, YI], HEISENBERG, 2)


def test_growth_sequence_examples(heis_S):
    assert [r.size for r in growth_sequence(Z1(-1, 0, 1), 3)] == [1, 3, 5, 7]
    assert [r.size for r in growth_sequence(heis_S, 2)] == [1, 5, 17]
    C = CyclicFinite(6)
    sizes = [r.size for r in growth_sequence(ElementSet(C, [(0,), (1,), (5,)]), 10)]
    assert sizes[-1] == 6 and sizes[-4:] == [6] * 4


def test_ball_matches_bfs_oracle(heis_S):
    for n in range(7):
        assert ball(heis_S, n).members == bfs_ball([X, XI, Y, YI], HEISENBERG, n)


def test_ball_preconditions():
    with pytest.raises(ValueError, match="identity"):
        ball(Z1(-1, 1), 2)
    with pytest.raises(ValueError, match="symmetric"):
        ball(Z1(0, 1), 2)


def test_budget_exceeded(heis_S):
    with pytest.raises(BudgetExceeded):
        ball(heis_S, 10, budget=1000)
    with pytest.raises(BudgetExceeded):
        power(Z1(0, 1, 5), 50, budget=20)


GROUPS = [FreeAbelian(1), FreeAbelian(2), HEISENBERG, Unitriangular(3), CyclicFinite(9)]


@st.composite
def small_sets(draw):
    G = draw(st.sampled_from(GROUPS))
    rng = random.Random(draw(st.integers(0, 2**32)))
    k = draw(st.integers(1, 4))
    return ElementSet(G, [G.random_element(rng, 3) for _ in range(k)])


@settings(max_examples=80, deadline=None)
@given(small_sets(), st.integers(1, 5))
def test_power_matches_brute_force(A, h):
    assert power(A, h).members == brute_power(A, h)


@settings(max_examples=40, deadline=None)
@given(small_sets(), st.integers(1, 5))
def test_powers_nested_when_identity_present(A, h):
    A = A.with_identity()
    assert power(A, h) <= power(A, h + 1)


@settings(max_examples=40, deadline=None)
@given(small_sets(), st.integers(1, 4))
def test_ball_is_power_and_symmetric(A, n):
    S = (A | A.inverse()).with_identity()
    B = ball(S, n)
    assert B == power(S, n)
    assert B.is_symmetric()


def test_determinism(heis_S):
    a = ball(heis_S, 5).sorted()
    b = ball(heis(YI, XI, E3, Y, X), 5).sorted()
    assert a == b


def test_estimate_degree_rank_one():
    records = [GrowthRecord(n, 2 * n + 1) for n in range(0, 201)]
    est = estimate_degree(records, (50, 200))
    assert 0.9 <= est.d_hat <= 1.1
    assert est.c1_hat <= est.c2_hat


def test_estimate_degree_flat():
    records = [GrowthRecord(n, 12) for n in range(0, 40)]
    est = estimate_degree(records)
    assert -0.05 <= est.d_hat <= 0.05


def test_estimate_degree_heisenberg(heis_S):
    est = estimate_degree(growth_sequence(heis_S, 14), (6, 14))
    assert 3.5 <= est.d_hat <= 4.5


def test_estimate_degree_window_too_small():
    with pytest.raises(ValueError):
        estimate_degree([GrowthRecord(n, n + 1) for n in range(4)], (2, 3))


@pytest.mark.parametrize(
    "G,d",
    [
        (FreeAbelian(1), 1),
        (FreeAbelian(2), 2),
        (FreeAbelian(5), 5),
        (HEISENBERG, 4),
        (Unitriangular(3), 4),
        (Unitriangular(4), 10),
        (CyclicFinite(7), 0),
    ],
)
def test_bass_guivarch_degree(G, d):
    assert bass_guivarch_degree(G) == d
