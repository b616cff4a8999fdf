"""GL2(Z/NZ)/{+-1} acting on index vectors and on Fricke families.

A matrix ``gamma`` sends the family member ``h_v`` to ``h_(v gamma)``
(row vector times matrix, which is ``gamma^T v`` for column vectors).  A
general element is split as ``diag(1, d) * beta`` with ``beta`` in SL2: the
diagonal part acts on coefficients by ``zeta_N -> zeta_N^d`` and ``beta`` is
lifted to SL2(Z), so the T-part acts on q-series by ``tau -> tau + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from .errors import LevelMismatch, NotCoprime, NotInGamma1Upper, PreconditionViolated
from .modfunc import FracVec


@dataclass(frozen=True, order=True)
class GLMat:
    """A 2x2 matrix over Z/N, stored as the canonical member of ``{g, -g}``."""

    level: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        N = self.level
        e = tuple(x % N for x in (self.a, self.b, self.c, self.d))
        if gcd((e[0] * e[3] - e[1] * e[2]) % N, N) != 1:
            raise NotCoprime(f"matrix {e} is not invertible mod {N}")
        e = min(e, tuple((-x) % N for x in e))
        for name, x in zip("abcd", e):
            object.__setattr__(self, name, x)

    @classmethod
    def from_rows(cls, rows, level: int) -> "GLMat":
        (a, b), (c, d) = rows
        return cls(level, a, b, c, d)

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.level

    def __mul__(self, other: "GLMat") -> "GLMat":
        if self.level != other.level:
            raise ValueError("levels differ")
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return GLMat(self.level, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "GLMat":
        N = self.level
        di = pow(self.det, -1, N)
        return GLMat(N, self.d * di, -self.b * di, -self.c * di, self.a * di)

    def transpose(self) -> "GLMat":
        return GLMat(self.level, self.a, self.c, self.b, self.d)

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.level}"


def identity(N: int) -> GLMat:
    return GLMat(N, 1, 0, 0, 1)


def diag(N: int, d: int) -> GLMat:
    return GLMat(N, 1, 0, 0, d)


def act_vec(gamma: GLMat, v: FracVec) -> FracVec:
    """``v gamma``; composes as ``act_vec(g, act_vec(h, v)) == act_vec(h * g, v)``."""
    if gamma.level != v.level:
        raise LevelMismatch(f"matrix level {gamma.level} and vector level {v.level} differ")
    N = gamma.level
    x, y = v.a, v.b
    return FracVec.from_fractions(
        Fraction((x * gamma.a + y * gamma.c) % N, N), Fraction((x * gamma.b + y * gamma.d) % N, N)
    )


def decompose(gamma: GLMat) -> tuple[int, GLMat]:
    """``gamma = diag(1, d) * beta`` with ``det beta = 1``."""
    N = gamma.level
    d = gamma.det
    di = pow(d, -1, N)
    beta = GLMat(N, gamma.a, gamma.b, gamma.c * di, gamma.d * di)
    return d, beta


def sl2_lift(beta: GLMat) -> tuple[int, int, int, int]:
    """An integer matrix of determinant 1 reducing to ``beta`` (up to sign)."""
    N = beta.level
    a, b, c, d = beta.entries
    if (a * d - b * c) % N != 1:
        raise PreconditionViolated("determinant is not 1")
    # Make gcd(c, d) = 1 by shifting d by multiples of N, then fix a, b.
    cc = c if c else N
    t = 0
    while gcd(cc, d + t * N) != 1:
        t += 1
    dd = d + t * N
    # find a', b' with a' dd - b' cc = 1, a' = a, b' = b mod N
    g, x, y = _ext_gcd(dd, cc)
    a0, b0 = x, -y
    # general solution a' = a0 + k cc, b' = b0 + k dd; choose k to hit a mod N
    for k in range(N):
        aa, bb = a0 + k * cc, b0 + k * dd
        if (aa - a) % N == 0 and (bb - b) % N == 0:
            return aa, bb, cc, dd
    raise PreconditionViolated("no SL2(Z) lift found")


def _ext_gcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


@lru_cache(maxsize=None)
def gl2(N: int) -> tuple[GLMat, ...]:
    """All of GL2(Z/N)/{+-1}, sorted."""
    out = set()
    for a, b, c, d in product(range(N), repeat=4):
        if gcd((a * d - b * c) % N, N) == 1:
            out.add(GLMat(N, a, b, c, d))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def sl2(N: int) -> tuple[GLMat, ...]:
    return tuple(g for g in gl2(N) if g.det == 1 % N)


def orbit_of_e1(N: int) -> set[FracVec]:
    """The orbit of ``(1/N, 0)`` under GL2(Z/N)."""
    e1 = FracVec(N, 1, 0)
    return {act_vec(g, e1) for g in gl2(N)}


def orbit(v: FracVec, group=None) -> list[FracVec]:
    group = gl2(v.level) if group is None else group
    return sorted({act_vec(g, v) for g in group})


def stabilizer(v: FracVec, group=None) -> list[GLMat]:
    group = gl2(v.level) if group is None else group
    return [g for g in group if act_vec(g, v) == v]


def reduces_to_unipotent(g: GLMat, modulus: int) -> bool:
    """``g == +-[[1, 0], [*, 1]]`` modulo ``modulus`` (which divides the level)."""
    a, b, c, d = (x % modulus for x in g.entries)
    one, mone = 1 % modulus, (-1) % modulus
    return (a, b, d) in ((one, 0, one), (mone, 0, mone))


def _int_mat(m):
    (a, b), (c, d) = m
    return int(a), int(b), int(c), int(d)


def mat_mul(x, y):
    a, b, c, d = _int_mat(x)
    e, f, g, h = _int_mat(y)
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def congruent(x, y, N: int) -> bool:
    return all((p - q) % N == 0 for p, q in zip(_int_mat(x), _int_mat(y)))


def lemma_alpha(beta, beta_prime, N: int):
    """Integer ``alpha = [[1, 0], [c'd - cd', 1]]`` with ``alpha beta == beta' (mod N)``.

    ``beta`` and ``beta'`` are integer matrices sharing their first row with
    determinant 1 mod N.  The congruence uses only the determinant conditions;
    those already force ``gcd(a, b)`` to be prime to N.
    """
    a, b, c, d = _int_mat(beta)
    a2, b2, c2, d2 = _int_mat(beta_prime)
    if (a - a2) % N or (b - b2) % N:
        raise PreconditionViolated("matrices do not share a first row mod N")
    if (a * d - b * c) % N != 1 % N or (a2 * d2 - b2 * c2) % N != 1 % N:
        raise PreconditionViolated("determinants are not 1 mod N")
    alpha = ((1, 0), (c2 * d - c * d2, 1))
    if not congruent(mat_mul(alpha, beta), beta_prime, N):
        raise PreconditionViolated("alpha * beta is not congruent to beta'")
    return alpha


def in_gamma_super1(g, N: int) -> bool:
    """``g`` in SL2(Z) with ``g == [[1, 0], [*, 1]] (mod N)``."""
    a, b, c, d = _int_mat(g)
    return a * d - b * c == 1 and (a - 1) % N == 0 and b % N == 0 and (d - 1) % N == 0


def conjugate_by_omega(gamma, N: int):
    """``omega_N gamma omega_N^-1 = [[a, b/N], [N c, d]]``; maps the lower
    unipotent congruence group onto the upper one."""
    if not in_gamma_super1(gamma, N):
        raise NotInGamma1Upper(f"{gamma} is not in SL2(Z) congruent to [[1,0],[*,1]] mod {N}")
    a, b, c, d = _int_mat(gamma)
    return ((a, b // N), (N * c, d))


def in_gamma_sub1(g, N: int) -> bool:
    """``g`` in SL2(Z) with ``g == [[1, *], [0, 1]] (mod N)``."""
    a, b, c, d = _int_mat(g)
    return a * d - b * c == 1 and (a - 1) % N == 0 and c % N == 0 and (d - 1) % N == 0


def family_act_series(family, gamma: GLMat, K, v: FracVec | None = None):
    """``h_v^gamma`` for a family object (anything with ``component`` and ``level``).

    ``gamma = diag(1, d) * beta``.  The diagonal part acts on the coefficients
    of ``h_v`` by ``sigma_d``, which is the component at ``v diag(1, d)``.  A
    translation ``beta = T^k`` then acts on that series by ``tau -> tau + k``;
    any other ``beta`` is realized by re-indexing to the component at
    ``v gamma``.
    """
    from .qseries import coeff_sigma_d, shift_T

    N = family.level
    v = FracVec(N, 1, 0) if v is None else v
    d, beta = decompose(gamma)
    h = family.component(v, K).reduce_level()
    h = coeff_sigma_d(h, d % h.level) if h.level > 2 else h
    if beta.c == 0 and beta.a == beta.d and beta.a in (1, N - 1):
        k = beta.b if beta.a == 1 else (-beta.b) % N
        return shift_T(h, k) if k else h
    return family.component(act_vec(gamma, v), K)
