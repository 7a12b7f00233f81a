from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growthlab.asymptotics import (
    CertificateError,
    Status,
    approx_profile,
    criterion_cover,
    inner_ball_check,
    inverse_bound,
    padding_cert,
    positive_length,
    power_comparison_holds,
    semigroup_certificate,
)
from growthlab.covering import verify_cover
from growthlab.groups import CyclicFinite
from growthlab.products import ElementSet, power

from .conftest import E3, X, XI, Z1, heis


def cyc(m, *xs):
    return ElementSet(CyclicFinite(m), [(x,) for x in xs])


def test_profile_abelian_examples():
    prof = approx_profile(Z1(0, 1), 2, range(1, 6))
    assert prof.values() == {h: 2 for h in range(1, 6)}
    assert all(e.exact and e.verified for e in prof.entries)
    assert prof.csv_rows()[0] == (2, 1, 2, 1)
    assert prof.empirical_h0() == 1


def test_profile_identity():
    for r in (2, 3):
        prof = approx_profile(heis(E3), r, range(1, 4))
        assert set(prof.values().values()) == {1}


def test_profile_heisenberg_small(heis_S):
    prof = approx_profile(heis_S, 2, [1, 2])
    assert prof.values() == {1: 4, 2: 12}
    assert all(e.exact for e in prof.entries)


def test_profile_budget_marks_truncation(heis_S):
    prof = approx_profile(heis_S, 2, range(1, 6), budget=200)
    assert prof.truncated_at is not None
    assert prof.budget_note
    assert all(e.h < prof.truncated_at for e in prof.entries)


def test_profile_rejects_small_r():
    with pytest.raises(ValueError):
        approx_profile(Z1(0, 1), 1, [1])


def test_positive_length_examples():
    A = Z1(-1, 0, 1, 2)
    assert positive_length(A, (-2,), 10) == 2
    assert positive_length(A, (2,), 10) == 1
    assert positive_length(cyc(7, 0, 1), (6,), 10) == 6
    assert positive_length(Z1(1, 2), (0,), 20) is None


def test_semigroup_certificate_examples(heis_S):
    cert = semigroup_certificate(Z1(-1, 0, 1, 2), 20)
    assert cert.status is Status.PROVEN and cert.p == 1
    assert cert.inverse_lengths == {(1,): 1, (-1,): 1, (2,): 2, (0,): 1}
    sym = semigroup_certificate(heis_S, 20)
    assert sym.p == 1 and set(sym.inverse_lengths.values()) == {1}
    unknown = semigroup_certificate(Z1(1, 2), 20)
    assert unknown.status is Status.UNKNOWN and unknown.cutoff == 20
    assert unknown.to_json()["status"] == "unknown"


def test_semigroup_certificate_lengths_are_sound():
    A = Z1(-3, 5)
    cert = semigroup_certificate(A, 20)
    assert cert.status is Status.PROVEN
    assert (0,) in power(A, cert.p).members
    for a, n in cert.inverse_lengths.items():
        assert (-a[0],) in power(A, n).members


def test_inverse_bound_examples(heis_S):
    A = Z1(-1, 0, 1, 2)
    assert inverse_bound(A, semigroup_certificate(A, 20)).q == 2
    assert inverse_bound(heis_S, semigroup_certificate(heis_S, 5)).q == 1
    C = cyc(5, 0, 1)
    assert inverse_bound(C, semigroup_certificate(C, 10)).q == 4


def test_inverse_bound_errors():
    with pytest.raises(CertificateError):
        inverse_bound(Z1(1, 2), semigroup_certificate(Z1(1, 2), 10))
    A = Z1(-1, 2)
    with pytest.raises(CertificateError):
        inverse_bound(A, semigroup_certificate(A, 10))


def test_inverse_bound_powers():
    # S^n inside A^{qn} for n <= 3
    A = Z1(-1, 0, 1, 2)
    q = inverse_bound(A, semigroup_certificate(A, 20)).q
    S = (A | A.inverse()).with_identity()
    for n in (1, 2, 3):
        assert power(S, n) <= power(A, q * n)


def test_padding_cert_examples():
    cert = padding_cert(Z1(-1, 2), 3, range(1, 9))
    assert len(cert.E) <= 3
    assert cert.reps == ((0,), (-1,), (-2,))
    assert cert.E == Z1(0, 1, 2)
    triv = padding_cert(Z1(-1, 0, 1), 1, range(1, 5))
    assert triv.E == Z1(0)


def test_padding_cert_heisenberg():
    # w_1 = x^{-1} is the least element of A, so E = {e, x}
    cert = padding_cert(heis(X, XI), 2, range(1, 7))
    assert cert.reps == (E3, XI)
    assert cert.E == heis(E3, X)


def test_padding_cert_needs_identity():
    with pytest.raises(CertificateError):
        padding_cert(Z1(-1, 2), 2, [1])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_padding_soundness(xs):
    A = Z1(*xs)
    cert = semigroup_certificate(A, 12)
    if cert.p is None:
        return
    pc = padding_cert(A, cert.p, range(1, 6))
    assert len(pc.E) <= cert.p
    for h in range(1, 6):
        assert verify_cover(power(A.with_identity(), h), pc.E, power(A, h))


def test_inner_ball_examples(heis_S):
    assert all(inner_ball_check(heis_S, heis_S, 1, range(1, 6)).values())
    A = Z1(-1, 0, 1, 2)
    S = (A | A.inverse()).with_identity()
    assert all(inner_ball_check(A, S, Fraction(1, 2), range(2, 21)).values())
    bad = inner_ball_check(Z1(1, 2), Z1(-2, -1, 0, 1, 2), Fraction(1, 2), range(2, 10))
    assert not any(bad.values())


def test_criterion_cover_examples():
    A = Z1(-1, 0, 1)
    res = criterion_cover(A, A, 1, 2, 6)
    assert res.verified
    assert verify_cover(power(A, 12), res.X, power(A, 6))
    assert len(res.X) <= res.bound
    assert criterion_cover(Z1(0), Z1(0), 1, 2, 3).X == Z1(0)


def test_criterion_cover_asymmetric():
    A = Z1(-1, 0, 1, 2)
    S = (A | A.inverse()).with_identity()
    res = criterion_cover(A, S, Fraction(1, 2), 2, 8)
    assert verify_cover(power(A, 16), res.X, power(A, 8))
    assert res.notes["C"] == 1
    assert len(res.X) == 8 <= res.bound == Fraction(73, 9)


def test_criterion_cover_rejects_failing_criterion():
    with pytest.raises(CertificateError):
        criterion_cover(Z1(0, 1, 2), Z1(-2, -1, 0, 1, 2), Fraction(1, 2), 2, 4)


def test_power_comparison():
    A = Z1(-1, 0, 1, 2)
    assert power_comparison_holds(A, 2, range(2, 31))
    C = cyc(5, 0, 1)
    assert power_comparison_holds(C, 4, range(1, 12))
