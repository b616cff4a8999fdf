import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fricke.cyclotomic import CycloNum
from fricke.errors import InsufficientOrder, SeriesTooLarge, ZeroLeadingTerm
from fricke.qseries import (
    QExp,
    coeff_sigma_d,
    dilate_exponents,
    eq_to_order,
    int_pow,
    rescale_exponents,
    shift_T,
)


def naive_mul(a: dict, ka, b: dict, kb):
    """Oracle: dict {Fraction exponent: CycloNum} product, certified bound by hand."""
    va, vb = min(a), min(b)
    K = min(va + kb, vb + ka)
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if e < K:
                out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}, K


def as_dict(s: QExp):
    return {e: c for e, c in s.items()}


def rand_series(rng, level, D, n, order):
    terms = {}
    start = rng.randint(-D, D)
    for k in range(start, start + n):
        if rng.random() < 0.7:
            z = CycloNum.zeta(level, rng.randint(0, level - 1)) * rng.randint(-4, 4)
            terms[k] = z + Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    terms[start] = CycloNum.one(level)
    return QExp.from_terms(terms, level, D, start + order)


@pytest.mark.parametrize("level,Da,Db", [(1, 1, 1), (4, 2, 3), (12, 4, 6), (8, 8, 1)])
def test_mul_matches_naive(backend, level, Da, Db):
    rng = random.Random(level * 100 + Da)
    for _ in range(6):
        a = rand_series(rng, level, Da, 8, 10)
        b = rand_series(rng, level, Db, 7, 9)
        ref, K = naive_mul(as_dict(a), a.prec, as_dict(b), b.prec)
        p = a * b
        assert p.prec == K
        assert as_dict(p) == ref


def test_inverse_known_series(backend):
    s = QExp.from_list([1, -1], order=None)
    inv = s.inv(prec=10)
    assert [inv.coefficient(i) for i in range(10)] == [1] * 10
    delta = QExp.from_list([1, -24, 252, -1472, 4830], start=1, order=6)
    di = delta.inv()
    assert di.prec == 4
    assert [di.coefficient(e).rational_value() for e in range(-1, 4)] == [1, 24, 324, 3200, 25650]


@pytest.mark.parametrize("level", [1, 3, 8])
def test_inverse_times_self(backend, level):
    rng = random.Random(level)
    a = rand_series(rng, level, 2, 9, 12)
    b = a.inv()
    one = a * b
    assert eq_to_order(one, QExp.constant(1), one.prec)
    assert b.prec == a.prec - 2 * a.valuation()


def test_inverse_with_non_integral_unit_denominator(backend):
    a = QExp.from_terms({0: 2, 1: 1, 3: Fraction(1, 3)}, order=8)
    assert eq_to_order(a * a.inv(), QExp.constant(1), 8)


def test_inverse_needs_precision_for_exact_input():
    with pytest.raises(InsufficientOrder):
        QExp.from_list([1, 1]).inv()
    with pytest.raises(ZeroLeadingTerm):
        QExp.zero(order=3).inv()


def test_fractional_exponents_lcm():
    p = QExp.monomial(1, Fraction(1, 2)) * QExp.monomial(1, Fraction(1, 3))
    assert p.valuation() == Fraction(5, 6) and p.exp_den == 6


def test_binomial_power():
    s = int_pow(QExp.from_list([1, 1]), 8)
    assert [s.coefficient(i) for i in range(9)] == [1, 8, 28, 56, 70, 56, 28, 8, 1]


def test_order_bookkeeping_add_and_truncate():
    a = QExp.from_list([1, 2, 3], order=3)
    b = QExp.from_list([1], order=1)
    assert (a + b).prec == 1
    assert a.truncate(2).prec == 2
    with pytest.raises(InsufficientOrder):
        a.truncate(5)
    with pytest.raises(InsufficientOrder):
        a.coefficient(3)


def test_shift_T_and_sigma():
    half = QExp.monomial(1, Fraction(1, 2))
    assert shift_T(half) == -half
    third = QExp.monomial(1, Fraction(1, 3))
    assert shift_T(third, 3) == third
    z4q = QExp.monomial(CycloNum.zeta(4), 1)
    assert coeff_sigma_d(z4q, 3) == QExp.monomial(-CycloNum.zeta(4), 1)


def test_rescale_and_dilate_are_inverse():
    a = QExp.from_list([1, 2, 3, 4], start=-1, order=3)
    r = rescale_exponents(a, 4)
    assert r.valuation() == Fraction(-1, 4) and r.prec == Fraction(3, 4)
    assert dilate_exponents(r, 4) == a


def test_json_round_trip():
    a = QExp.from_terms({-3: CycloNum.zeta(8), 5: Fraction(2, 7)}, 8, 4, 12)
    assert QExp.from_json(a.to_json()) == a


def test_eq_to_order_requires_precision():
    a = QExp.from_list([1, 2], order=2)
    with pytest.raises(InsufficientOrder):
        eq_to_order(a, a, 3)


def test_max_terms_guard(monkeypatch):
    monkeypatch.setenv("QSERIES_MAX_TERMS", "5")
    with pytest.raises(SeriesTooLarge):
        QExp.from_list(list(range(1, 20)))


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=8),
    st.lists(st.integers(-20, 20), min_size=1, max_size=8),
    st.lists(st.integers(-20, 20), min_size=1, max_size=8),
)
def test_ring_laws(x, y, z):
    a, b, c = (QExp.from_list(v, order=8) for v in (x, y, z))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
