import random

import pytest
from hypothesis import given, settings, strategies as st

from fricke import kernels
from fricke.cyclotomic import cyclotomic_poly, field


def naive_mulmod(a, b, M):
    """Schoolbook product then long division by the cyclotomic polynomial."""
    poly = cyclotomic_poly(M)
    phi = len(poly) - 1
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            c[i + j] += x * y
    for i in range(len(c) - 1, phi - 1, -1):
        t = c[i]
        if t:
            for j in range(phi + 1):
                c[i - phi + j] -= t * poly[j]
    return tuple(c[:phi])


def naive_convolve(ak, av, bk, bv, M, kcap):
    acc = {}
    for k1, v1 in zip(ak, av):
        for k2, v2 in zip(bk, bv):
            k = k1 + k2
            if kcap is not None and k >= kcap:
                continue
            p = naive_mulmod(v1, v2, M)
            acc[k] = tuple(x + y for x, y in zip(acc.get(k, (0,) * len(p)), p))
    keys = sorted(k for k, v in acc.items() if any(v))
    return keys, [acc[k] for k in keys]


def rand_vec(rng, phi, lo=-9, hi=9):
    return tuple(rng.randint(lo, hi) for _ in range(phi))


@pytest.mark.parametrize("M", [1, 3, 4, 8, 12, 24])
def test_mulmod_matches_schoolbook(backend, M):
    F = field(M)
    rng = random.Random(M)
    for _ in range(50):
        a, b = rand_vec(rng, F.phi), rand_vec(rng, F.phi)
        assert kernels.mulmod(a, b, F.nz, F.phi) == naive_mulmod(a, b, M)


@pytest.mark.parametrize("M", [1, 4, 12])
@pytest.mark.parametrize("kcap", [None, 7, 15])
def test_convolve_matches_naive(backend, M, kcap):
    F = field(M)
    rng = random.Random(kcap or 0)
    for _ in range(10):
        ak = sorted(rng.sample(range(-3, 12), 6))
        bk = sorted(rng.sample(range(-2, 10), 5))
        av = [rand_vec(rng, F.phi) for _ in ak]
        bv = [rand_vec(rng, F.phi) for _ in bk]
        keys, vecs = kernels.convolve(ak, av, bk, bv, F.nz, F.phi, kcap)
        assert (list(keys), [tuple(v) for v in vecs]) == naive_convolve(ak, av, bk, bv, M, kcap)


def test_inverse_unit_times_unit_is_one(backend):
    F = field(8)
    rng = random.Random(1)
    tk = [1, 2, 3, 5]
    tv = [rand_vec(rng, F.phi) for _ in tk]
    keys, vecs = kernels.inverse_unit(tk, tv, F.nz, F.phi, 12)
    one = (1,) + (0,) * (F.phi - 1)
    pk, pv = kernels.convolve([0] + tk, [one] + tv, list(keys), list(vecs), F.nz, F.phi, 12)
    assert list(pk) == [0] and tuple(pv[0]) == one


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-50, 50), min_size=4, max_size=4),
    st.lists(st.integers(-50, 50), min_size=4, max_size=4),
)
def test_backends_agree(a, b):
    F = field(5)
    outs = {name: mod.mulmod(tuple(a), tuple(b), F.nz, F.phi) for name, mod in kernels.available_backends().items()}
    assert len(set(outs.values())) == 1


def test_large_coordinates_do_not_overflow(backend):
    F = field(3)
    big = (10**40, -(10**39))
    assert kernels.mulmod(big, big, F.nz, F.phi) == naive_mulmod(big, big, 3)


def test_use_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")
