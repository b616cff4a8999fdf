import random
from fractions import Fraction
from math import gcd

import pytest

from fricke import modfunc as m
from fricke import numeric
from fricke.cyclotomic import CycloNum
from fricke.errors import InvalidVector, LevelNotDivisibleBy4
from fricke.modfunc import FracVec
from fricke.qseries import QExp, eq_to_order

F = Fraction


def naive_sigma(n, k):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def naive_delta(K):
    """q * prod (1 - q^n)^24 by repeated polynomial multiplication."""
    c = [1] + [0] * (K - 1)
    for n in range(1, K):
        for _ in range(24):
            for i in range(K - 1, n - 1, -1):
                c[i] -= c[i - n]
    return c


# -- level one -----------------------------------------------------------


def test_eisenstein_divisor_sums():
    e4, e6 = m.eisenstein(4, 30), m.eisenstein(6, 30)
    for n in range(1, 30):
        assert e4.coefficient(n) == 240 * naive_sigma(n, 3)
        assert e6.coefficient(n) == -504 * naive_sigma(n, 5)


def test_delta_three_ways():
    K = 30
    d = m.delta_norm(K)
    ref = naive_delta(K - 1)
    assert [d.coefficient(n).rational_value() for n in range(1, K)] == ref
    assert eq_to_order(d, m.delta_from_eisenstein(K), K)
    # Ramanujan tau
    assert ref[:6] == [1, -24, 252, -1472, 4830, -6048]


def test_j_known_coefficients(backend):
    j = m.j_invariant(4)
    assert [j.coefficient(e).rational_value() for e in range(-1, 4)] == [1, 744, 196884, 21493760, 864299970]
    assert m.j_from_e6(12) == m.j_invariant(12)


def test_euler_product_matches_naive():
    got = m.euler_product(lambda n: 24, 20)
    assert got == naive_delta(20)


# -- vectors -------------------------------------------------------------


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 8, 12])
def test_vector_count_matches_brute_force(N):
    prim = {(a, b) for a in range(N) for b in range(N) if gcd(gcd(a, b), N) == 1}
    classes = {min((a, b), ((-a) % N, (-b) % N)) for a, b in prim}
    assert len(m.vectors(N)) == len(classes)


def test_fracvec_canonical():
    assert FracVec(4, 3, 0) == FracVec(4, 1, 0)
    assert FracVec.parse("7/8,7/8") == FracVec(8, 1, 1)
    assert FracVec.parse("5/4,-1/4") == FracVec(4, 1, 3)
    assert str(FracVec(8, 1, 0)) == "1/8,0"
    with pytest.raises(InvalidVector):
        FracVec(4, 2, 0)
    with pytest.raises(InvalidVector):
        FracVec.from_fractions(1, 0)


# -- Weierstrass ---------------------------------------------------------


@pytest.mark.parametrize("v", [(F(1, 4), 0), (0, F(1, 3)), (F(1, 2), F(1, 2)), (F(3, 8), F(5, 8))])
def test_wp_series_vs_closed_form(v):
    s = m.wp_norm(v, 30)
    for tau in (2j, 0.3 + 1.5j, -0.2 + 1.1j):
        val, err = numeric.eval_qexp(s, tau)
        assert abs(val - numeric.eval_wp_series(v, tau)) < 1e-9


def test_wp_series_vs_lattice_sum():
    v = (F(1, 4), F(0))
    val, _ = numeric.eval_qexp(m.wp_norm(v, 40), 0.3 + 2j)
    assert abs(val - numeric.eval_wp_direct(v, 0.3 + 2j, 60)) < 1e-6


def test_wp_zero_first_coordinate_constant():
    # v = (0, 1/2): 1/12 + zeta/(1 - zeta)^2 with zeta = -1
    assert m.wp_norm((0, F(1, 2)), 3).coefficient(0) == F(1, 12) - F(1, 4)


# -- Siegel --------------------------------------------------------------


def test_siegel_leading_terms():
    g = m.siegel_g((F(1, 2), 0), 2)
    assert g.valuation() == F(-1, 24) and g.leading_coefficient() == -1
    h = m.siegel_g((0, F(1, 2)), 2)
    assert h.valuation() == F(1, 12) and h.leading_coefficient() == 2 * CycloNum.zeta(4)


@pytest.mark.parametrize("v", [(F(1, 4), 0), (F(1, 8), F(3, 8)), (0, F(1, 5)), (F(5, 4), F(-1, 4)), (F(-1, 3), F(1, 3))])
def test_siegel_series_vs_product(v):
    s = m.siegel_raw(v, 10)
    for tau in (2j, 0.4 + 1.2j, -0.3 + 1.7j):
        val, _ = numeric.eval_qexp(s, tau)
        ref = numeric.eval_siegel_direct(v, tau)
        assert abs(val - ref) < 1e-8 * max(1, abs(ref))


def test_siegel_product_is_multiplicative(backend):
    u, v = (F(1, 4), F(1, 8)), (F(3, 8), 0)
    joint = m.siegel_product([(u, 3), (v, -2)], 6)
    sep = (m.siegel_raw(u, 8) ** 3 * m.siegel_raw(v, 8) ** -2).truncate(6)
    assert eq_to_order(joint, sep, 6)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_siegel_12N_shift_invariant(N):
    for v in m.vectors(N):
        a, b = v.raw
        ref = m.siegel12N(v, 4)
        for raw in ((a + 1, b), (a, b - 1), (-a, -b)):
            assert eq_to_order(m.siegel12N(raw, 4, raw=True), ref, 4)


def test_raw_shift_changes_siegel_by_root_of_unity():
    a = m.siegel_raw((F(1, 4), F(1, 4)), 4)
    b = m.siegel_raw((F(1, 4), F(5, 4)), 4)
    ratio = b.leading_coefficient() / a.leading_coefficient()
    assert ratio != 1 and ratio ** 8 == 1
    assert eq_to_order(b, a.scale(ratio), 4)


# -- Fricke --------------------------------------------------------------


def test_fricke_rational_at_base_vector():
    for N in (4, 8):
        f = m.fricke_f(FracVec(N, 1, 0).raw, 8)
        assert f.is_rational() and N % f.term_exp_den() == 0


def test_fricke_depends_on_class_only():
    a = m.fricke_f((F(1, 8), F(1, 8)), 8)
    b = m.fricke_f((F(7, 8), F(7, 8)), 8)
    c = m.fricke_f((F(9, 8), F(-7, 8)), 8)
    assert a == b == c


def test_fricke_series_vs_numeric():
    v = (F(1, 4), F(1, 4))
    val, _ = numeric.eval_qexp(m.fricke_f(v, 30), 1.5j)
    ref = numeric.eval_fricke(v, 1.5j)
    assert abs(val - ref) < 1e-8 * abs(ref)


def test_fricke_difference_identity_level4(backend):
    lhs, rhs = m.fricke_difference_sides((F(1, 4), 0), (0, F(1, 4)), 20)
    assert eq_to_order(lhs, rhs, 20)


@pytest.mark.parametrize("scale", [11, 13])
def test_fricke_difference_fails_for_wrong_constant(scale):
    lhs, rhs = m.fricke_difference_sides((F(1, 4), 0), (0, F(1, 4)), 20, scale=scale)
    assert not eq_to_order(lhs, rhs, 20)


def test_fricke_difference_random_level8():
    rng = random.Random(7)
    vs = m.vectors(8)
    for _ in range(3):
        u, v = rng.sample(vs, 2)
        lhs, rhs = m.fricke_difference_sides(u.raw, v.raw, 10)
        assert eq_to_order(lhs, rhs, 10)


# -- level four ----------------------------------------------------------


def test_g14_two_ways(backend):
    a, b = m.g14_product(30), m.g14_ratio(30)
    assert eq_to_order(a, b, 30)
    assert [a.coefficient(e) for e in (-1, 0, 1)] == [1, 8, 20]


def test_g41_two_ways():
    assert eq_to_order(m.g41(12), m.g41_direct(12), 12)


def test_r_and_s_at_base_vector():
    e1 = (F(1, 8), F(0))
    assert eq_to_order(m.r_v(e1, 6), m.g41(6), 6)
    assert m.s_v(e1, 8) == m.f1N(8, 8)
    assert m.f1N(8, 8).is_rational()


def test_level_guards():
    with pytest.raises(LevelNotDivisibleBy4):
        m.f1N(6, 4)
    with pytest.raises(LevelNotDivisibleBy4):
        m.s_v((F(1, 4), F(0)), 4)
