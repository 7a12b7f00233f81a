import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growthlab.counterexample import (
    default_n_max,
    find_witness,
    heis_product,
    member_Ah,
    slope_inequality,
    slope_rules_out,
    witness_element,
    xy,
)
from growthlab.groups import HEISENBERG, Element, FreeAbelian, word_product
from growthlab.products import ElementSet

from .conftest import E3

WINDOW = 12


def brute_Ah(h: int, n_top: int = WINDOW) -> set:
    """All h-fold products of {e} u {x y^n : n <= n_top}."""
    factors = [E3] + [xy(n) for n in range(n_top + 1)]
    return {word_product(HEISENBERG, w) for w in itertools.product(factors, repeat=h)}


def test_heis_product_examples():
    assert heis_product([5]) == (1, 5, 0)
    assert heis_product([1, 2]) == (2, 3, -1)
    assert heis_product([0, 0, 0]) == (3, 0, 0)
    with pytest.raises(ValueError):
        heis_product([])


@settings(max_examples=500, deadline=None)
@given(st.lists(st.integers(0, 20), min_size=1, max_size=8))
def test_heis_product_matches_fold(ns):
    assert heis_product(ns) == word_product(HEISENBERG, [xy(n) for n in ns])


def test_member_examples():
    assert member_Ah((1, 7, 0), 1)
    assert member_Ah(E3, 3)
    assert not member_Ah((4, 1, -3), 2)
    assert member_Ah(Element.of(HEISENBERG, (2, 3, -1)), 2)
    with pytest.raises(TypeError):
        member_Ah(Element.of(FreeAbelian(3), (1, 0, 0)), 1)


@pytest.mark.parametrize("h", [1, 2, 3, 4])
def test_member_matches_brute_force(h):
    # factors have n_i >= 0 summing to the second coordinate, so n <= 12
    # suffices for every u in the window
    oracle = brute_Ah(h)
    rng = range(-WINDOW, WINDOW + 1)
    for u in itertools.product(rng, rng, rng):
        assert member_Ah(u, h) == (u in oracle), u


def test_witness_examples():
    assert find_witness(2, 2, [E3]).n == 0
    rep = find_witness(2, 2, [(3, 0, 0)])
    assert rep.n == 1
    assert rep.reasons[0]["u"] == [1, 1, -3]
    assert find_witness(2, 1, [E3]).n == 0


def test_witness_report_json():
    rep = find_witness(2, 2, ElementSet(HEISENBERG, [(3, 0, 0), E3]))
    js = rep.to_json()
    assert js["found"] and js["g_n"] == list(witness_element(2, 2, js["n"]))
    assert len(js["per_t"]) == 2


def test_witness_not_found_when_n_max_small():
    X = [witness_element(2, 2, n) for n in range(3)]
    rep = find_witness(2, 2, X, n_max=2)
    assert rep.n is None and not rep.to_json()["found"]


def test_slope_examples():
    assert not slope_inequality(2, 2, 2, 10, 0, 0)
    assert slope_inequality(2, 2, 1, 0, 3, 1)
    assert slope_inequality(2, 2, 2, 1, 5, 0)
    with pytest.raises(ValueError):
        slope_inequality(2, 2, 3, 1, 0, 0)


def random_Arh(rng: random.Random, r: int, h: int) -> tuple:
    ns = [rng.choice([None] + list(range(10))) for _ in range(r * h)]
    return word_product(HEISENBERG, [E3 if n is None else xy(n) for n in ns])


@pytest.mark.parametrize("r,h", [(r, h) for r in (2, 3) for h in (1, 2, 3)])
def test_witness_always_exists(r, h):
    rng = random.Random(1000 * r + h)
    for _ in range(100):
        X = [random_Arh(rng, r, h) for _ in range(rng.randint(1, 8))]
        assert all(member_Ah(t, r * h) for t in X)
        rep = find_witness(r, h, X)
        assert rep.n is not None
        assert rep.n <= max(0, *(b - c for _, b, c in X)) + 1 <= default_n_max(X)
        g = witness_element(r, h, rep.n)
        for t in X:
            assert not member_Ah(HEISENBERG.mul(HEISENBERG.inv(t), g), h)


@settings(max_examples=300, deadline=None)
@given(
    st.sampled_from([(2, 1), (2, 2), (3, 2), (2, 3)]),
    st.integers(0, 30),
    st.tuples(st.integers(-6, 6), st.integers(-6, 12), st.integers(-40, 6)),
)
def test_slope_failure_implies_not_covered(rh, n, t):
    r, h = rh
    if slope_rules_out(r, h, n, t):
        u = HEISENBERG.mul(HEISENBERG.inv(t), witness_element(r, h, n))
        assert not member_Ah(u, h)
