import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growthlab.groups import (
    HEISENBERG,
    CyclicFinite,
    Element,
    FiniteTable,
    FreeAbelian,
    GroupError,
    ProductWithFinite,
    SpecMismatch,
    Unitriangular,
    group_from_json,
    identity,
    inv,
    mul,
)


def _s3_table():
    # permutations of {0,1,2}, composed as (p*q)(i) = p(q(i))
    perms = list(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    return tuple(
        tuple(idx[tuple(p[q[i]] for i in range(3))] for q in perms) for p in perms
    )


BACKENDS = [
    FreeAbelian(1),
    FreeAbelian(3),
    CyclicFinite(7),
    HEISENBERG,
    Unitriangular(3),
    Unitriangular(4),
    FiniteTable(_s3_table()),
    ProductWithFinite(FreeAbelian(1), FiniteTable.cyclic(2)),
    ProductWithFinite(HEISENBERG, FiniteTable(_s3_table())),
]


def elements(G, radius=8):
    return st.builds(lambda seed: G.random_element(random.Random(seed), radius), st.integers(0, 2**32))


@pytest.mark.parametrize("G", BACKENDS, ids=lambda G: repr(G)[:40])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_group_axioms(G, data):
    g, h, k = (data.draw(elements(G)) for _ in range(3))
    assert G.mul(G.mul(g, h), k) == G.mul(g, G.mul(h, k))
    e = G.identity()
    assert G.mul(e, g) == g == G.mul(g, e)
    assert G.mul(g, G.inv(g)) == e == G.mul(G.inv(g), g)
    assert G.canonical(G.canonical(g)) == G.canonical(g)


def test_heisenberg_examples():
    H = HEISENBERG
    x, y = Element.of(H, (1, 0, 0)), Element.of(H, (0, 1, 0))
    assert mul(x, y).coords == (1, 1, 0)
    assert mul(y, x).coords == (1, 1, -1)
    assert inv(Element.of(H, (1, 1, 0))).coords == (-1, -1, -1)
    assert inv(identity(H)) == identity(H)
    assert identity(H).coords == (0, 0, 0)


def test_identities_and_abelian_inverse():
    assert identity(CyclicFinite(5)).coords == (0,)
    assert identity(Unitriangular(3)).coords == (0, 0, 0)
    assert inv(Element.of(FreeAbelian(1), (3,))).coords == (-3,)


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _to_matrix(g):
    # (a, b, c) -> [[1, -b, c], [0, 1, a], [0, 0, 1]] turns the law
    # (a+a', b+b', c+c'-a'b) into ordinary matrix multiplication
    a, b, c = g
    return [[1, -b, c], [0, 1, a], [0, 0, 1]]


@settings(max_examples=300, deadline=None)
@given(
    st.tuples(*[st.integers(-50, 50)] * 3),
    st.tuples(*[st.integers(-50, 50)] * 3),
)
def test_heisenberg_matches_matrix_realization(g, h):
    assert _to_matrix(HEISENBERG.mul(g, h)) == _matmul(_to_matrix(g), _to_matrix(h))
    U = Unitriangular(3)
    as_u = lambda t: U.from_matrix(_to_matrix(t))
    assert as_u(HEISENBERG.mul(g, h)) == U.mul(as_u(g), as_u(h))


@settings(max_examples=100, deadline=None)
@given(data=st.data(), n=st.integers(2, 5))
def test_unitriangular_matches_matrix_product(data, n):
    U = Unitriangular(n)
    g = data.draw(elements(U, 20))
    h = data.draw(elements(U, 20))
    assert U.matrix(U.mul(g, h)) == _matmul(U.matrix(g), U.matrix(h))
    inverse = U.matrix(U.inv(g))
    assert _matmul(U.matrix(g), inverse) == [[int(i == j) for j in range(n)] for i in range(n)]


def test_no_overflow_on_huge_coordinates():
    big = 10**40
    g = (big, big, big)
    assert HEISENBERG.mul(g, g) == (2 * big, 2 * big, 2 * big - big * big)


def test_cyclic_canonical_reduces():
    C = CyclicFinite(5)
    assert C.canonical([12]) == (2,)
    assert C.canonical([-1]) == (4,)
    assert Element.of(C, (7,)) == Element.of(C, (2,))


def test_validation_errors():
    with pytest.raises(GroupError):
        CyclicFinite(0)
    with pytest.raises(GroupError):
        Unitriangular(1)
    with pytest.raises(GroupError):
        FreeAbelian(0)
    with pytest.raises(GroupError):
        HEISENBERG.canonical((1, 2))
    with pytest.raises(GroupError):
        FiniteTable(((0, 1), (1, 1)))  # no inverse for 1
    with pytest.raises(GroupError):
        # identity row/column fine, but not associative
        FiniteTable(((0, 1, 2), (1, 0, 0), (2, 2, 0)))


def test_spec_mismatch():
    with pytest.raises(SpecMismatch):
        mul(Element.of(FreeAbelian(1), (1,)), Element.of(CyclicFinite(3), (1,)))


def test_group_json_round_trip():
    for G in BACKENDS:
        assert group_from_json(G.to_json()) == G
