"""Named modular functions as exact q-expansions.

Everything is in 2*pi-normalized form: E4, E6, ``delta = q prod (1-q^n)^24``
and ``wp = (2 pi i)^-2 * weierstrass_p``.  Transcendental factors cancel in j
and in the Fricke functions, leaving the single rational constant
``FRICKE_CONSTANT``.

Every constructor takes ``K``, the exponent bound to which the returned series
is certified, and returns a series truncated exactly there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, gcd, lcm, comb

from .cyclotomic import CycloNum, field, root_of_unity
from .errors import InvalidVector, LevelNotDivisibleBy4
from .qseries import QExp, dilate_exponents, int_pow, rescale_exponents
from . import kernels

# -2^7 3^5 * (g2 g3 / Delta) * wp with g2 = (2pi)^4 E4/12, g3 = (2pi)^6 E6/216,
# Delta = (2pi)^12 delta, wp = (2 pi i)^2 wp_norm  ->  12 * E4 E6 wp_norm / delta.
FRICKE_CONSTANT = 12


# ---------------------------------------------------------------------------
# index vectors


@dataclass(frozen=True, order=True)
class FracVec:
    """A vector ``(a/N, b/N)`` with primitive denominator N, modulo ``+-`` and Z^2.

    The stored pair is the lexicographically smaller of ``(a, b)`` and
    ``(-a, -b)`` reduced mod N.
    """

    level: int
    a: int
    b: int

    def __post_init__(self):
        N = self.level
        if N < 2:
            raise InvalidVector("level must be at least 2")
        a, b = self.a % N, self.b % N
        if gcd(gcd(a, b), N) != 1:
            raise InvalidVector(f"({self.a}/{N}, {self.b}/{N}) does not have primitive denominator {N}")
        a, b = min((a, b), ((-a) % N, (-b) % N))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_fractions(cls, v1, v2) -> "FracVec":
        v1, v2 = Fraction(v1), Fraction(v2)
        N = lcm(v1.denominator, v2.denominator)
        if N == 1:
            raise InvalidVector("vector lies in Z^2")
        return cls(N, int(v1 * N), int(v2 * N))

    @classmethod
    def parse(cls, text: str) -> "FracVec":
        """Parse ``"a/N,b/N"`` (either entry may be an integer)."""
        p, q = (s.strip() for s in text.split(","))
        return cls.from_fractions(Fraction(p), Fraction(q))

    @property
    def raw(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.a, self.level), Fraction(self.b, self.level)

    def scaled(self, m: int) -> "FracVec":
        return FracVec.from_fractions(m * Fraction(self.a, self.level), m * Fraction(self.b, self.level))

    def __str__(self):
        return f"{Fraction(self.a, self.level)},{Fraction(self.b, self.level)}"


def vectors(N: int) -> list[FracVec]:
    """Canonical representatives of V_N modulo ``+-``, sorted."""
    return sorted({FracVec(N, a, b) for a in range(N) for b in range(N) if gcd(gcd(a, b), N) == 1})


def as_raw(v) -> tuple[Fraction, Fraction]:
    if isinstance(v, FracVec):
        return v.raw
    v1, v2 = v
    return Fraction(v1), Fraction(v2)


def _check_vector(v):
    v1, v2 = as_raw(v)
    if v1.denominator == 1 and v2.denominator == 1:
        raise InvalidVector(f"{(v1, v2)} lies in Z^2")
    return v1, v2


# ---------------------------------------------------------------------------
# precision plumbing


def _adaptive(build, K, margin=2):
    """Call ``build(K + margin)`` until the certified bound reaches ``K``."""
    K = Fraction(K)
    for _ in range(12):
        s = build(K + margin)
        if s.prec is None or s.prec >= K:
            return s.truncate(K)
        margin += max(1, ceil(K - s.prec))
    raise RuntimeError("precision target not reached")


def _ceil_int(x) -> int:
    return ceil(Fraction(x))


# ---------------------------------------------------------------------------
# level one


def bernoulli2(x) -> Fraction:
    x = Fraction(x)
    return x * x - x + Fraction(1, 6)


def _divisor_sum(n: int, k: int) -> int:
    s = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            s += d**k
            e = n // d
            if e != d:
                s += e**k
        d += 1
    return s


@lru_cache(maxsize=None)
def eisenstein(weight: int, K: int) -> QExp:
    """Normalized E4 or E6 from divisor sums, certified below ``q^K``."""
    if weight == 4:
        c, p = 240, 3
    elif weight == 6:
        c, p = -504, 5
    else:
        raise ValueError("weight must be 4 or 6")
    K = _ceil_int(K)
    coeffs = [1] + [c * _divisor_sum(n, p) for n in range(1, max(K, 1))]
    return QExp.from_list(coeffs[: max(K, 0)], order=K)


def euler_product(exponent_of, K: int) -> list[int]:
    """Coefficients below ``q^K`` of ``prod_{n>=1} (1 - q^n)^exponent_of(n)``.

    Uses the logarithmic-derivative recurrence
    ``m F_m = -sum_{k=1}^m s(k) F_{m-k}``, ``s(k) = sum_{d | k} d c_d``.
    """
    if K <= 0:
        return []
    c = [0] + [exponent_of(n) for n in range(1, K)]
    s = [0] * K
    for d in range(1, K):
        if c[d]:
            for m in range(d, K, d):
                s[m] += d * c[d]
    F = [1] + [0] * (K - 1)
    for m in range(1, K):
        acc = 0
        for k in range(1, m + 1):
            if s[k]:
                acc += s[k] * F[m - k]
        q, r = divmod(-acc, m)
        if r:
            raise ArithmeticError("non-integral product coefficient")
        F[m] = q
    return F


@lru_cache(maxsize=None)
def delta_norm(K: int) -> QExp:
    """``q prod (1 - q^n)^24`` certified below ``q^K``."""
    K = _ceil_int(K)
    F = euler_product(lambda n: 24, max(K - 1, 0))
    return QExp.from_list(F, start=1, order=K)


@lru_cache(maxsize=None)
def j_invariant(K: int) -> QExp:
    """``E4^3 / delta``."""
    K = _ceil_int(K)
    e4 = eisenstein(4, K + 1)
    return (e4 * e4 * e4 * delta_norm(K + 2).inv()).truncate(K)


@lru_cache(maxsize=None)
def j_from_e6(K: int) -> QExp:
    """``1728 + E6^2 / delta``."""
    K = _ceil_int(K)
    e6 = eisenstein(6, K + 1)
    return (1728 + e6 * e6 * delta_norm(K + 2).inv()).truncate(K)


def delta_from_eisenstein(K: int) -> QExp:
    """``(E4^3 - E6^2) / 1728``; the divisor-sum construction of delta."""
    e4, e6 = eisenstein(4, K), eisenstein(6, K)
    return (e4 * e4 * e4 - e6 * e6) / 1728


# ---------------------------------------------------------------------------
# Weierstrass p


def _reduce_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@lru_cache(maxsize=None)
def wp_norm(v, K) -> QExp:
    """``(2 pi i)^-2 wp(v1 tau + v2; [tau, 1])`` as a q-series below ``q^K``."""
    v1, v2 = _check_vector(v)
    v1, v2 = _reduce_mod1(v1), _reduce_mod1(v2)
    K = Fraction(K)
    m = v2.denominator
    b = v2.numerator
    D = v1.denominator
    F = field(m)
    zeta_pow = lambda k: F.powers[(k * b) % m]  # noqa: E731
    acc: dict[int, list[int]] = {}

    def bump(expo: Fraction, k: int, vec):
        key = int(expo * D)
        cur = acc.get(key)
        if cur is None:
            cur = acc[key] = [0] * F.phi
        for i, x in enumerate(vec):
            if x:
                cur[i] += k * x

    minus_two = (-2,) + (0,) * (F.phi - 1)
    const = QExp.constant(Fraction(1, 12), level=m)
    if v1 > 0:
        k = 1
        while k * v1 < K:
            bump(k * v1, k, zeta_pow(k))
            k += 1
    else:
        z = CycloNum.zeta(m, b)
        const = const + QExp.constant(z / ((1 - z) * (1 - z)))
    n = 1
    while n - v1 < K:
        k = 1
        while k * (n - v1) < K:
            e_plus, e_minus, e0 = k * (n + v1), k * (n - v1), k * n
            if e_plus < K:
                bump(e_plus, k, zeta_pow(k))
            bump(e_minus, k, zeta_pow(-k))
            if e0 < K:
                bump(e0, k, minus_two)
            k += 1
        n += 1
    keys = sorted(acc)
    order = _ceil_int(K * D)
    series = QExp(m, D, keys, [tuple(acc[k]) for k in keys], 1, order)
    return series + const.truncate(K)


# ---------------------------------------------------------------------------
# Fricke functions


@lru_cache(maxsize=None)
def fricke_f(v, K, scale=FRICKE_CONSTANT) -> QExp:
    """``scale * E4 * E6 * wp_v / delta``; ``v`` may be a FracVec or a raw pair."""
    raw = _check_vector(v)
    K = _ceil_int(K)
    e4, e6 = eisenstein(4, K + 1), eisenstein(6, K + 1)
    num = (e4 * e6 * wp_norm(raw, K + 1)).scale(scale)
    return (num * delta_norm(K + 2).inv()).truncate(K)


# ---------------------------------------------------------------------------
# Siegel functions


@dataclass(frozen=True)
class _SiegelShape:
    """``g_v = c * exp(2 pi i root) * q^offset * prod_(e,s) (1 - e(s) q^e)``.

    ``factors`` lists the finitely many flipped/zero-exponent cases already
    absorbed into ``root``/``offset``/``const``; the regular factors are
    generated on demand by :func:`_regular_factors`.
    """

    root: Fraction
    offset: Fraction
    const: CycloNum
    flipped: tuple


def _siegel_shape(v1: Fraction, v2: Fraction) -> _SiegelShape:
    # -exp(pi i v2 (v1 - 1)) = exp(2 pi i (1/2 + v2 (v1 - 1) / 2))
    root = Fraction(1, 2) + v2 * (v1 - 1) / 2
    offset = bernoulli2(v1) / 2
    const = CycloNum.one(1)
    flipped = []
    for e, s in _nonpositive_factors(v1, v2):
        if e == 0:
            c = root_of_unity(s)
            const = const.embed(lcm(const.level, c.level)) * (1 - c).embed(lcm(const.level, c.level))
        else:
            # 1 - c q^e = -c q^e (1 - c^-1 q^-e)
            root += Fraction(1, 2) + s
            offset += e
        flipped.append((e, s))
    return _SiegelShape(_reduce_mod1(root), offset, const, tuple(flipped))


def _nonpositive_factors(v1, v2):
    out = []
    n = 0
    while n + v1 <= 0:
        out.append((n + v1, v2))
        n += 1
    n = 1
    while n - v1 <= 0:
        out.append((n - v1, -v2))
        n += 1
    return out


def _regular_factors(v1, v2, bound):
    """Factors ``(e, s)`` of the product with ``0 < |e| < bound`` after flipping."""
    out = []
    n = 0
    while n + v1 < bound:
        e = n + v1
        if e > 0:
            out.append((e, v2))
        elif e < 0 and -e < bound:
            out.append((-e, -v2))
        n += 1
    n = 1
    while n - v1 < bound:
        e = n - v1
        if e > 0:
            out.append((e, -v2))
        elif e < 0 and -e < bound:
            out.append((-e, v2))
        n += 1
    return out


def _binomial_series(m: int, count: int):
    """Integer coefficients of ``(1 - x)^m`` for ``x^0 .. x^(count-1)``."""
    if m >= 0:
        return [(-1) ** j * comb(m, j) for j in range(min(count, m + 1))]
    n = -m
    return [comb(n + j - 1, j) for j in range(count)]


def siegel_product(pairs, K) -> QExp:
    """``prod g_v^m`` over ``(v, m)`` pairs, certified below ``q^K``.

    Vectors are taken as given (not reduced mod Z^2); the root-of-unity and
    q-power prefactors are combined exactly before any series work, so the
    coefficient level of the result is that of the actual product.
    """
    K = Fraction(K)
    root = Fraction(0)
    offset = Fraction(0)
    const = CycloNum.one(1)
    raws = []
    for v, m in pairs:
        if m == 0:
            continue
        v1, v2 = _check_vector(v)
        sh = _siegel_shape(v1, v2)
        root += m * sh.root
        offset += m * sh.offset
        L = lcm(const.level, sh.const.level)
        const = const.embed(L) * (sh.const**m).embed(L)
        raws.append((v1, v2, m))
    rel = K - offset
    # Combine the regular factors (1 - e(s) q^e)^m across all vectors.
    mult: dict[tuple[Fraction, Fraction], int] = {}
    for v1, v2, m in raws:
        for e, s in _regular_factors(v1, v2, max(rel, 0)):
            key = (e, _reduce_mod1(s))
            mult[key] = mult.get(key, 0) + m
    mult = {k: m for k, m in mult.items() if m}
    D = 1
    M = 1
    for e, s in mult:
        D = lcm(D, e.denominator)
        M = lcm(M, s.denominator)
    for v1, v2, _ in raws:
        D = lcm(D, v1.denominator)
        M = lcm(M, v2.denominator)
    F = field(M)
    n = max(_ceil_int(rel * D), 0)
    one = (1,) + (0,) * (F.phi - 1)
    zero = (0,) * F.phi
    dense = [one] + [zero] * (n - 1) if n > 0 else []
    for (e, s), m in sorted(mult.items()):
        step = int(e * D)
        count = (n - 1) // step + 1 if n > 0 else 0
        coeffs = _binomial_series(m, count)
        if len(coeffs) <= 1:
            continue
        cpow = [F.powers[(j * s.numerator * (M // s.denominator)) % M] for j in range(len(coeffs))]
        terms = [(j * step, coeffs[j], cpow[j]) for j in range(1, len(coeffs)) if coeffs[j]]
        for k in range(n - 1, 0, -1):
            acc = None
            for shift, c, z in terms:
                if shift > k:
                    break
                src = dense[k - shift]
                if not any(src):
                    continue
                prod = kernels.mulmod(src, z, F.nz, F.phi)
                if acc is None:
                    acc = list(dense[k])
                for i, x in enumerate(prod):
                    if x:
                        acc[i] += c * x
            if acc is not None:
                dense[k] = tuple(acc)
    keys = [k for k in range(n) if any(dense[k])]
    body = QExp(M, D, keys, [dense[k] for k in keys], 1, n)
    scalar = root_of_unity(root)
    L = lcm(scalar.level, const.level)
    scalar = scalar.embed(L) * const.embed(L)
    body = body.scale(scalar)
    Dout = lcm(D, offset.denominator)
    body = body.lift(exp_den=Dout)
    shift = int(offset * Dout)
    order = _ceil_int(K * Dout)
    return QExp(body.level, Dout, [k + shift for k in body.keys], list(body.vecs), body.den, order)


def siegel_g(v, K) -> QExp:
    """Siegel function at the canonical representative (``0 <= v1 < 1``)."""
    if not isinstance(v, FracVec):
        v = FracVec.from_fractions(*as_raw(v))
    return siegel_product([(v.raw, 1)], K)


def siegel_raw(v, K) -> QExp:
    """Siegel function at the vector exactly as given."""
    return siegel_product([(as_raw(v), 1)], K)


def siegel12N(v, K, raw=False) -> QExp:
    """``g_v^(12N)`` for ``v`` of level N (a member of the Siegel Fricke family)."""
    if raw:
        v1, v2 = as_raw(v)
        N = lcm(v1.denominator, v2.denominator)
        return siegel_product([((v1, v2), 12 * N)], K)
    if not isinstance(v, FracVec):
        v = FracVec.from_fractions(*as_raw(v))
    return siegel_product([(v.raw, 12 * v.level)], K)


# ---------------------------------------------------------------------------
# level four generators


@lru_cache(maxsize=None)
def g14_product(K) -> QExp:
    """``q^-1 (1+q)^8 prod ((1-q^(4n+2))(1-q^(4n-2)) / ((1-q^(4n+1))(1-q^(4n-1))))^8``."""
    K = _ceil_int(K)

    def mult(m):
        if m % 4 == 2:
            return 8 * (1 + (m >= 6))
        if m % 2 == 1 and m >= 3:
            return -8
        return 0

    P = QExp.from_list(euler_product(mult, K + 1), order=K + 1)
    binom = QExp.from_list([comb(8, i) for i in range(9)])
    return (QExp.monomial(1, -1) * binom * P).truncate(K)


@lru_cache(maxsize=None)
def g14_ratio(K) -> QExp:
    """``(g_(1/2,0)(4 tau) / g_(1/4,0)(4 tau))^8`` via the Siegel products."""
    K = Fraction(K)
    inner = siegel_product([((Fraction(1, 2), 0), 8), ((Fraction(1, 4), 0), -8)], K / 4)
    return dilate_exponents(inner, 4).with_exp_den(1).truncate(K)


@lru_cache(maxsize=None)
def g41(K) -> QExp:
    """``g_{1,4}(tau/4)`` from the product formula."""
    K = Fraction(K)
    return rescale_exponents(g14_product(_ceil_int(4 * K)), 4).truncate(K)


@lru_cache(maxsize=None)
def g41_direct(K) -> QExp:
    """``g_(1/4,0)^-8 g_(1/2,0)^8`` directly."""
    return siegel_product([((Fraction(1, 4), 0), -8), ((Fraction(1, 2), 0), 8)], K).with_exp_den(4)


# ---------------------------------------------------------------------------
# level N >= 8 generators


def _require_level4(N, minimum=8):
    if N % 4:
        raise LevelNotDivisibleBy4(f"level {N} is not divisible by 4")
    if N < minimum:
        raise LevelNotDivisibleBy4(f"level {N} must be at least {minimum}")


def _vec_level(v) -> int:
    if isinstance(v, FracVec):
        return v.level
    v1, v2 = as_raw(v)
    return lcm(v1.denominator, v2.denominator)


def _fricke_quotient(v, w, u, K):
    """``(f_v - f_w) / (f_u - f_w)`` with adaptive precision."""

    def build(P):
        P = _ceil_int(P)
        fw = fricke_f(w, P)
        return (fricke_f(v, P) - fw) / (fricke_f(u, P) - fw)

    return _adaptive(build, K)


def _scaled_raw(v, m):
    v1, v2 = as_raw(v)
    return (m * v1, m * v2)


@lru_cache(maxsize=None)
def r_v(v, K) -> QExp:
    """``(g_((N/2)v) / g_((N/4)v))^8``, vectors scaled without reduction."""
    N = _vec_level(v)
    _require_level4(N, minimum=4)
    half, quarter = _scaled_raw(v, N // 2), _scaled_raw(v, N // 4)
    return siegel_product([(half, 8), (quarter, -8)], K)


@lru_cache(maxsize=None)
def s_v(v, K) -> QExp:
    """``(f_v - f_((N/2)v)) / (f_((N/4)v) - f_((N/2)v))``."""
    N = _vec_level(v)
    _require_level4(N)
    raw = as_raw(v)
    return _fricke_quotient(raw, _scaled_raw(raw, N // 2), _scaled_raw(raw, N // 4), K)


@lru_cache(maxsize=None)
def f1N(N: int, K) -> QExp:
    """``(f_(1/N,0) - f_(1/2,0)) / (f_(1/4,0) - f_(1/2,0))``."""
    _require_level4(N)
    return _fricke_quotient(
        (Fraction(1, N), Fraction(0)), (Fraction(1, 2), Fraction(0)), (Fraction(1, 4), Fraction(0)), K
    )


# ---------------------------------------------------------------------------
# identities


def fricke_difference_sides(u, v, K, scale=FRICKE_CONSTANT):
    """Both sides of the sixth-power Fricke difference identity, to ``q^K``.

    ``(f_u - f_v)^6`` against
    ``2^12 3^6 j^2 (j - 1728)^3 g_(u+v)^6 g_(u-v)^6 / (g_u^12 g_v^12)`` with
    ``u + v`` and ``u - v`` formed from the given representatives.
    """
    u1, u2 = _check_vector(u)
    v1, v2 = _check_vector(v)
    K = Fraction(K)

    def lhs_build(P):
        d = fricke_f((u1, u2), _ceil_int(P), scale) - fricke_f((v1, v2), _ceil_int(P), scale)
        return int_pow(d, 6)

    lhs = _adaptive(lhs_build, K)
    j = j_invariant(_ceil_int(K) + 6)
    jm = j - 1728
    jj = int_pow(j, 2) * int_pow(jm, 3)
    units = siegel_product(
        [((u1 + v1, u2 + v2), 6), ((u1 - v1, u2 - v2), 6), ((u1, u2), -12), ((v1, v2), -12)],
        K - jj.valuation(),
    )
    rhs = (jj * units).scale(2**12 * 3**6).truncate(K)
    return lhs, rhs


def clear_caches():
    """Drop memoized series (used when switching kernel backends)."""
    for f in (eisenstein, delta_norm, j_invariant, j_from_e6, wp_norm, fricke_f, g14_product, g14_ratio,
              g41, g41_direct, r_v, s_v, f1N):
        f.cache_clear()
