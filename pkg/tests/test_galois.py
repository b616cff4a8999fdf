import itertools
import random
from math import gcd

import pytest

from fricke import families as fm
from fricke.errors import LevelMismatch, NotCoprime, NotInGamma1Upper, PreconditionViolated
from fricke.galois import (
    GLMat,
    act_vec,
    conjugate_by_omega,
    decompose,
    diag,
    family_act_series,
    gl2,
    identity,
    in_gamma_sub1,
    lemma_alpha,
    mat_mul,
    orbit_of_e1,
    sl2,
    sl2_lift,
)
from fricke.modfunc import FracVec, vectors
from fricke.qseries import eq_to_order


def brute_gl2_size(N):
    return sum(1 for a, b, c, d in itertools.product(range(N), repeat=4) if gcd((a * d - b * c) % N, N) == 1)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 8])
def test_group_sizes(N):
    # +-1 coincide only when N = 2
    assert len(gl2(N)) == brute_gl2_size(N) // (1 if N == 2 else 2)


def test_decompose_examples():
    assert decompose(diag(4, 3)) == (3, identity(4))
    assert decompose(identity(4)) == (1, identity(4))
    g = GLMat(5, 2, 1, 1, 1)
    assert decompose(g) == (1, g)


def test_decompose_round_trip_exhaustive():
    for g in gl2(4):
        d, beta = decompose(g)
        assert beta.det == 1
        assert diag(4, d) * beta == g


def test_act_vec_examples():
    T = GLMat(4, 1, 1, 0, 1)
    assert act_vec(T, FracVec(4, 1, 0)) == FracVec(4, 1, 1)
    for v in vectors(4):
        assert act_vec(identity(4), v) == v
    with pytest.raises(LevelMismatch):
        act_vec(T, FracVec(8, 1, 0))


def test_minus_gamma_acts_like_gamma():
    for a, b, c, d in itertools.product(range(4), repeat=4):
        if (a * d - b * c) % 2 == 0:
            continue
        g, h = GLMat(4, a, b, c, d), GLMat(4, -a, -b, -c, -d)
        assert g == h
        for v in vectors(4):
            assert act_vec(g, v) == act_vec(h, v)


def test_right_action_exhaustive_level4():
    G = gl2(4)
    for g in G:
        for h in G[::3]:
            for v in vectors(4):
                assert act_vec(g, act_vec(h, v)) == act_vec(h * g, v)


@pytest.mark.parametrize("N", [2, 3, 4, 8])
def test_orbit_of_e1_is_everything(N):
    assert orbit_of_e1(N) == set(vectors(N))


def test_orbit_examples():
    assert orbit_of_e1(2) == {FracVec(2, 1, 0), FracVec(2, 0, 1), FracVec(2, 1, 1)}
    assert len(orbit_of_e1(4)) == 6


def test_lemma_alpha_example():
    alpha = lemma_alpha(((1, 2), (0, 1)), ((1, 2), (4, 9)), 4)
    assert alpha == ((1, 0), (4, 1))
    assert mat_mul(alpha, ((1, 2), (0, 1))) == ((1, 2), (4, 9))
    same = lemma_alpha(((3, 1), (5, 2)), ((3, 1), (5, 2)), 8)
    assert same[1][0] % 8 == 0


def _random_pair(rng, N):
    while True:
        a, b = rng.randrange(-3 * N, 3 * N), rng.randrange(-3 * N, 3 * N)
        c, d = rng.randrange(-3 * N, 3 * N), rng.randrange(-3 * N, 3 * N)
        c2, d2 = rng.randrange(-3 * N, 3 * N), rng.randrange(-3 * N, 3 * N)
        if (a * d - b * c) % N == 1 % N and (a * d2 - b * c2) % N == 1 % N:
            return ((a, b), (c, d)), ((a, b), (c2, d2))


@pytest.mark.parametrize("N", [4, 8, 12])
def test_lemma_alpha_randomized(N):
    rng = random.Random(N)
    for _ in range(1000):
        beta, beta2 = _random_pair(rng, N)
        alpha = lemma_alpha(beta, beta2, N)
        prod = mat_mul(alpha, beta)
        assert all((x - y) % N == 0 for r1, r2 in zip(prod, beta2) for x, y in zip(r1, r2))
        assert alpha[0] == (1, 0) and alpha[1][1] == 1


def test_det_conditions_force_gcd_condition():
    # the gcd hypothesis is implied: ad - bc = 1 mod N means gcd(a, b, N) = 1
    for N in (4, 8, 12):
        for a, b, c, d in itertools.product(range(N), repeat=4):
            if (a * d - b * c) % N == 1:
                assert gcd(gcd(a, b), N) == 1


def test_lemma_alpha_preconditions():
    with pytest.raises(PreconditionViolated):
        lemma_alpha(((1, 2), (0, 1)), ((1, 3), (0, 1)), 4)
    with pytest.raises(PreconditionViolated):
        lemma_alpha(((1, 2), (0, 3)), ((1, 2), (0, 1)), 4)


def test_conjugate_by_omega():
    assert conjugate_by_omega(((1, 0), (0, 1)), 4) == ((1, 0), (0, 1))
    assert conjugate_by_omega(((1, 4), (0, 1)), 4) == ((1, 1), (0, 1))
    assert conjugate_by_omega(((1, 0), (1, 1)), 4) == ((1, 0), (4, 1))
    with pytest.raises(NotInGamma1Upper):
        conjugate_by_omega(((1, 1), (0, 1)), 4)


def test_conjugate_by_omega_homomorphism():
    rng = random.Random(3)
    N = 4
    mats = []
    while len(mats) < 40:
        c = rng.randrange(-20, 20)
        k = rng.randrange(-3, 3)
        g = ((1, N * k), (c, 1 + N * k * c))
        mats.append(g)
    for g, h in zip(mats, mats[1:]):
        gh = conjugate_by_omega(mat_mul(g, h), N)
        assert gh == mat_mul(conjugate_by_omega(g, N), conjugate_by_omega(h, N))
        assert in_gamma_sub1(gh, N)


@pytest.mark.parametrize("N", [4, 8, 12])
def test_sl2_lift(N):
    for b in sl2(N):
        a_, b_, c_, d_ = sl2_lift(b)
        assert a_ * d_ - b_ * c_ == 1 and GLMat(N, a_, b_, c_, d_) == b


def test_glmat_rejects_singular():
    with pytest.raises(NotCoprime):
        GLMat(4, 2, 0, 0, 1)


def test_family_act_series_translation():
    fam = fm.SiegelPowerFamily(4)
    T = GLMat(4, 1, 1, 0, 1)
    e1 = FracVec(4, 1, 0)
    assert eq_to_order(family_act_series(fam, T, 20), fam.component(act_vec(T, e1), 20), 20)


def test_family_act_series_diagonal_on_rational_component():
    fam = fm.FrickeFunctionFamily(4)
    h = fam.base(8)
    assert family_act_series(fam, diag(4, 3), 8) == h


def test_family_act_series_composition():
    fam = fm.SiegelPowerFamily(4)
    T = GLMat(4, 1, 1, 0, 1)
    S = GLMat(4, 0, -1, 1, 0)
    D = diag(4, 3)
    words = [T, S, D, T * T, S * T, D * T, T * S * D]
    for g in words:
        for h in words:
            v = FracVec(4, 1, 0)
            via = act_vec(h, act_vec(g, v))
            assert via == act_vec(g * h, v)
            assert eq_to_order(family_act_series(fam, g * h, 6), fam.component(via, 6), 6)
