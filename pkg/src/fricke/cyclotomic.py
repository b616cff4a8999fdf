"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Elements are stored on the power basis ``1, z, ..., z**(phi(M)-1)`` modulo the
cyclotomic polynomial, as an integer numerator vector over a positive common
denominator in lowest terms.  This makes equality coordinate equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from . import kernels
from .errors import CycloZeroDivision, LevelMismatch, NotCoprime, NotDivisible


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in _prime_factors(n):
        result -= result // p
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact division of integer polynomials (low-to-high), ``den`` monic."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j, dj in enumerate(den):
                num[i - dn + j] -= c * dj
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Coefficients of the M-th cyclotomic polynomial, constant term first.

    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if M < 1:
        raise ValueError("M must be positive")
    num = [-1] + [0] * (M - 1) + [1]
    for d in _divisors(M)[:-1]:
        num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


class _Field:
    """Per-level data: degree, reduction pattern and the table of z**e."""

    __slots__ = ("level", "phi", "poly", "nz", "powers")

    def __init__(self, M: int):
        self.level = M
        self.poly = cyclotomic_poly(M)
        self.phi = len(self.poly) - 1
        self.nz = tuple((j, p) for j, p in enumerate(self.poly[:-1]) if p)
        powers = []
        cur = [1] + [0] * (self.phi - 1)
        for _ in range(M):
            powers.append(tuple(cur))
            nxt = [0] + cur
            cur = list(kernels.reduce_poly(nxt, self.nz, self.phi))
        self.powers = tuple(powers)


@lru_cache(maxsize=None)
def field(M: int) -> _Field:
    # lru_cache is safe for concurrent readers; a racing insert only recomputes.
    return _Field(M)


def _normalize(num, den):
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = den
    for x in num:
        if g == 1:
            break
        g = gcd(g, x)
    if g > 1:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational scalar: {x!r}")


class CycloNum:
    """An element of Q(zeta_M) in exact coordinates."""

    __slots__ = ("level", "num", "den")

    def __init__(self, level: int, num, den: int = 1):
        F = field(level)
        num = tuple(int(x) for x in num)
        if len(num) != F.phi:
            raise ValueError(f"level {level} needs {F.phi} coordinates, got {len(num)}")
        if den == 0:
            raise CycloZeroDivision("zero denominator")
        self.level = level
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, level, num, den):
        obj = object.__new__(cls)
        obj.level = level
        obj.num = num
        obj.den = den
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def from_coords(cls, level: int, coords) -> "CycloNum":
        fr = [_as_fraction(c) for c in coords]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(level, [int(c * den) for c in fr], den)

    @classmethod
    def rational(cls, x, level: int = 1) -> "CycloNum":
        x = _as_fraction(x)
        phi = field(level).phi
        return cls(level, (x.numerator,) + (0,) * (phi - 1), x.denominator)

    @classmethod
    def zero(cls, level: int = 1) -> "CycloNum":
        return cls._raw(level, (0,) * field(level).phi, 1)

    @classmethod
    def one(cls, level: int = 1) -> "CycloNum":
        return cls.rational(1, level)

    @classmethod
    def zeta(cls, level: int, power: int = 1) -> "CycloNum":
        return cls._raw(level, field(level).powers[power % level], 1)

    # -- inspection ---------------------------------------------------
    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    @property
    def phi(self) -> int:
        return len(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            if other.level != self.level:
                return self._cross_level_eq(other)
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.rational_value() == other
        return NotImplemented

    def _cross_level_eq(self, other):
        from math import lcm

        L = lcm(self.level, other.level)
        return self.embed(L) == other.embed(L)

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_value())
        m = self.reduce_level()
        return hash((m.level, m.num, m.den))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.level}^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"CycloNum[{self.level}]({body})"

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.level != self.level:
                raise LevelMismatch(f"levels {self.level} and {other.level} differ; embed first")
            return other
        if isinstance(other, (int, Rational)):
            return CycloNum.rational(other, self.level)
        raise TypeError(f"cannot combine CycloNum with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        den = self.den * o.den // gcd(self.den, o.den)
        fa, fb = den // self.den, den // o.den
        return CycloNum(self.level, [x * fa + y * fb for x, y in zip(self.num, o.num)], den)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.level, tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycloNum):
            f = _as_fraction(other)
            return CycloNum(self.level, [x * f.numerator for x in self.num], self.den * f.denominator)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        F = field(self.level)
        return CycloNum(self.level, kernels.mulmod(self.num, o.num, F.nz, F.phi), self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm over Q."""
        if self.is_zero():
            raise CycloZeroDivision("inverse of zero")
        if self.is_rational():
            return CycloNum.rational(1 / self.rational_value(), self.level)
        inv_coords = _poly_inverse_mod(list(self.coords), field(self.level).poly)
        return CycloNum.from_coords(self.level, inv_coords)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycloNum):
            if other == 0:
                raise CycloZeroDivision("division by zero")
            return self * (1 / _as_fraction(other))
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = CycloNum.one(self.level)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- field maps ---------------------------------------------------
    def embed(self, target: int) -> "CycloNum":
        """Image under z_M -> z_{M'}**(M'/M)."""
        if target % self.level:
            raise NotDivisible(f"{self.level} does not divide {target}")
        if target == self.level:
            return self
        step = target // self.level
        return _map_powers(self, target, [i * step for i in range(self.phi)])

    def sigma(self, d: int) -> "CycloNum":
        """The automorphism z_M -> z_M**d."""
        if gcd(d, self.level) != 1:
            raise NotCoprime(f"gcd({d}, {self.level}) != 1")
        return _map_powers(self, self.level, [i * d for i in range(self.phi)])

    def conjugate(self) -> "CycloNum":
        return self.sigma(-1)

    def restrict(self, level: int) -> "CycloNum | None":
        """Preimage under ``embed`` from ``level``; None if not in that subfield."""
        if self.level % level:
            raise NotDivisible(f"{level} does not divide {self.level}")
        if level == self.level:
            return self
        if self.is_rational():
            return CycloNum.rational(self.rational_value(), level)
        step = self.level // level
        sub_phi = field(level).phi
        if field(self.level).phi == step * sub_phi:
            # The subfield basis sits on coordinates that are multiples of step.
            if any(x for i, x in enumerate(self.num) if i % step):
                return None
            return CycloNum(level, self.num[::step], self.den)
        return _solve_restrict(self, level, step, sub_phi)

    def reduce_level(self) -> "CycloNum":
        """The same number at the smallest level whose field contains it."""
        cur = self
        changed = True
        while changed and cur.level > 1:
            changed = False
            for p in _prime_factors(cur.level):
                r = cur.restrict(cur.level // p)
                if r is not None:
                    cur = r
                    changed = True
                    break
        return cur

    def minimal_level(self) -> int:
        return self.reduce_level().level

    def to_complex(self) -> complex:
        import cmath

        w = cmath.exp(2j * cmath.pi / self.level)
        return sum(float(Fraction(x, self.den)) * w**i for i, x in enumerate(self.num) if x)

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        return {"level": self.level, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycloNum":
        return cls.from_coords(int(obj["level"]), obj["coords"])


def _map_powers(a: CycloNum, target: int, exps) -> CycloNum:
    F = field(target)
    acc = [0] * F.phi
    for x, e in zip(a.num, exps):
        if x:
            for j, y in enumerate(F.powers[e % target]):
                if y:
                    acc[j] += x * y
    return CycloNum(target, acc, a.den)


def _solve_restrict(a: CycloNum, level: int, step: int, sub_phi: int):
    F = field(a.level)
    cols = [F.powers[(i * step) % a.level] for i in range(sub_phi)]
    n = F.phi
    # Augmented system  sum_i x_i * cols[i] = a.coords, solved over Q.
    rows = [[Fraction(cols[i][r]) for i in range(sub_phi)] + [Fraction(a.num[r], a.den)] for r in range(n)]
    sol = _gauss_solve(rows, sub_phi)
    if sol is None:
        return None
    return CycloNum.from_coords(level, sol)


def _gauss_solve(rows, ncols):
    """Solve an augmented system over Q; None if inconsistent."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][ncols]
    return sol


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_poly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
    return _poly_trim(q), a


def _poly_sub_mul(a, q, b):
    out = [Fraction(0)] * max(len(a), len(q) + len(b) - 1 if q and b else 0)
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(q):
        for j, y in enumerate(b):
            out[i + j] -= x * y
    return _poly_trim(out)


def _poly_inverse_mod(a, modulus):
    r0 = [Fraction(x) for x in modulus]
    r1 = _poly_trim([Fraction(x) for x in a])
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if not r1:
        raise CycloZeroDivision("element is not invertible")
    c = r1[0]
    phi = len(modulus) - 1
    out = [x / c for x in s1] + [Fraction(0)] * phi
    return out[:phi]


def root_of_unity(r) -> CycloNum:
    """``exp(2*pi*i*r)`` at level equal to the reduced denominator of ``r``."""
    r = _as_fraction(r)
    M = r.denominator
    return CycloNum.zeta(M, r.numerator % M)


def embed(a: CycloNum, target: int) -> CycloNum:
    return a.embed(target)


def sigma_d(a: CycloNum, d: int) -> CycloNum:
    return a.sigma(d)
