"""Truncated Laurent series in fractional powers of q with cyclotomic coefficients.

A :class:`QExp` stores the exponent ``k/D`` by its integer numerator ``k`` over
a declared lattice denominator ``D``.  Coefficients live in Q(zeta_M) and are
held as integer coordinate vectors over one common positive denominator.  The
``order`` field is the certified bound: every coefficient of ``q**(k/D)`` with
``k < order`` is exact; ``order=None`` means the series is exact (a Laurent
polynomial).
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import ceil, gcd, lcm
from numbers import Rational

from . import kernels
from .cyclotomic import CycloNum, field
from .errors import InsufficientOrder, NotCoprime, SeriesTooLarge, ZeroLeadingTerm


def _max_terms():
    raw = os.environ.get("QSERIES_MAX_TERMS")
    return int(raw) if raw else None


def _embed_vec(vec, src: int, dst: int):
    if src == dst:
        return vec
    F = field(dst)
    step = dst // src
    acc = [0] * F.phi
    for i, x in enumerate(vec):
        if x:
            for j, y in enumerate(F.powers[(i * step) % dst]):
                if y:
                    acc[j] += x * y
    return tuple(acc)


def _min_none(*xs):
    vals = [x for x in xs if x is not None]
    return min(vals) if vals else None


def _add_none(a, b):
    return None if a is None or b is None else a + b


class QExp:
    """An immutable truncated q-expansion.

    Build instances with :meth:`from_terms`, :meth:`constant`, :meth:`monomial`
    or :meth:`from_list`; arithmetic lifts coefficient levels and exponent
    denominators to their lcm.
    """

    __slots__ = ("level", "exp_den", "order", "den", "keys", "vecs")

    def __init__(self, level, exp_den, keys, vecs, den=1, order=None):
        if exp_den < 1 or level < 1:
            raise ValueError("level and exp_den must be positive")
        if order is not None:
            cut = [i for i, k in enumerate(keys) if k < order]
            if len(cut) != len(keys):
                keys = [keys[i] for i in cut]
                vecs = [vecs[i] for i in cut]
        pairs = [(k, v) for k, v in zip(keys, vecs) if any(v)]
        pairs.sort(key=lambda kv: kv[0])
        g = den
        for _, v in pairs:
            for x in v:
                if g == 1:
                    break
                g = gcd(g, x)
            if g == 1:
                break
        if not pairs:
            g = den
        if g > 1:
            pairs = [(k, tuple(x // g for x in v)) for k, v in pairs]
            den //= g
        limit = _max_terms()
        if limit is not None and len(pairs) > limit:
            raise SeriesTooLarge(f"{len(pairs)} terms exceeds QSERIES_MAX_TERMS={limit}")
        self.level = level
        self.exp_den = exp_den
        self.order = order
        self.den = den if pairs else 1
        self.keys = tuple(k for k, _ in pairs)
        self.vecs = tuple(v for _, v in pairs)

    # -- constructors -------------------------------------------------
    @classmethod
    def from_terms(cls, terms, level=None, exp_den=1, order=None):
        """Build from ``{k: coeff}`` where the exponent is ``k/exp_den``.

        Coefficients may be ints, Fractions or CycloNum of any level dividing
        ``level`` (default: lcm of the coefficient levels).
        """
        items = list(terms.items()) if isinstance(terms, dict) else list(terms)
        if level is None:
            level = 1
            for _, c in items:
                if isinstance(c, CycloNum):
                    level = lcm(level, c.level)
        cyc = []
        den = 1
        for k, c in items:
            if not isinstance(c, CycloNum):
                c = CycloNum.rational(c, level)
            elif c.level != level:
                c = c.embed(level)
            cyc.append((k, c))
            den = den * c.den // gcd(den, c.den)
        merged = {}
        for k, c in cyc:
            f = den // c.den
            v = [x * f for x in c.num]
            if k in merged:
                v = [x + y for x, y in zip(merged[k], v)]
            merged[k] = v
        keys = sorted(merged)
        return cls(level, exp_den, keys, [tuple(merged[k]) for k in keys], den, order)

    @classmethod
    def from_list(cls, coeffs, start=0, exp_den=1, order=None, level=None):
        """Coefficients of consecutive exponents ``(start + i)/exp_den``."""
        return cls.from_terms({start + i: c for i, c in enumerate(coeffs) if c}, level, exp_den, order)

    @classmethod
    def constant(cls, c, level=None, order=None):
        return cls.from_terms({0: c}, level, 1, order)

    @classmethod
    def zero(cls, level=1, exp_den=1, order=None):
        return cls(level, exp_den, [], [], 1, order)

    @classmethod
    def monomial(cls, c, exponent, level=None, order=None):
        e = Fraction(exponent)
        D = e.denominator
        if order is not None:
            o = Fraction(order)
            D = lcm(D, o.denominator)
            order = int(o * D)
        return cls.from_terms({int(e * D): c}, level, D, order)

    # -- inspection ---------------------------------------------------
    @property
    def prec(self):
        """Certified exponent bound as a Fraction, or None when exact."""
        return None if self.order is None else Fraction(self.order, self.exp_den)

    @property
    def terms(self) -> dict:
        return {k: CycloNum(self.level, v, self.den) for k, v in zip(self.keys, self.vecs)}

    def items(self):
        """``(exponent, coefficient)`` pairs with Fraction exponents."""
        for k, v in zip(self.keys, self.vecs):
            yield Fraction(k, self.exp_den), CycloNum(self.level, v, self.den)

    def is_zero(self) -> bool:
        return not self.keys

    def is_exact(self) -> bool:
        return self.order is None

    def __len__(self):
        return len(self.keys)

    def valuation(self):
        """Least exponent with nonzero coefficient (Fraction), None for zero."""
        return Fraction(self.keys[0], self.exp_den) if self.keys else None

    def leading_coefficient(self) -> CycloNum:
        if not self.keys:
            raise ZeroLeadingTerm("zero series has no leading term")
        return CycloNum(self.level, self.vecs[0], self.den)

    def coefficient(self, exponent) -> CycloNum:
        e = Fraction(exponent)
        if self.prec is not None and e >= self.prec:
            raise InsufficientOrder(f"exponent {e} is beyond the certified bound {self.prec}")
        k = e * self.exp_den
        if k.denominator != 1:
            return CycloNum.zero(self.level)
        try:
            i = self.keys.index(int(k))
        except ValueError:
            return CycloNum.zero(self.level)
        return CycloNum(self.level, self.vecs[i], self.den)

    def is_rational(self) -> bool:
        return all(not any(v[1:]) for v in self.vecs)

    def term_exp_den(self) -> int:
        """Smallest denominator putting every stored exponent on its lattice."""
        g = self.exp_den
        for k in self.keys:
            g = gcd(g, k)
        return self.exp_den // g

    def minimal_level(self) -> int:
        return self.reduce_level().level

    def reduce_level(self) -> "QExp":
        """Same series over the smallest cyclotomic field holding every coefficient."""
        from .cyclotomic import _prime_factors

        cur = self
        changed = True
        while changed and cur.level > 1:
            changed = False
            for p in _prime_factors(cur.level):
                sub = cur.level // p
                coeffs = {}
                for k, c in cur.terms.items():
                    r = c.restrict(sub)
                    if r is None:
                        break
                    coeffs[k] = r
                else:
                    cur = QExp.from_terms(coeffs, sub, cur.exp_den, cur.order)
                    changed = True
                    break
        return cur

    def __repr__(self):
        parts = []
        for (e, c), _ in zip(self.items(), range(6)):
            parts.append(f"({c})*q^{e}")
        if len(self.keys) > 6:
            parts.append("...")
        tail = "" if self.order is None else f" + O(q^{self.prec})"
        return f"QExp[M={self.level},D={self.exp_den}](" + " + ".join(parts or ["0"]) + tail + ")"

    # -- representation changes ---------------------------------------
    def lift(self, level=None, exp_den=None) -> "QExp":
        level = self.level if level is None else level
        exp_den = self.exp_den if exp_den is None else exp_den
        if level == self.level and exp_den == self.exp_den:
            return self
        if level % self.level or exp_den % self.exp_den:
            raise ValueError("can only lift to multiples of the current level/denominator")
        s = exp_den // self.exp_den
        vecs = [_embed_vec(v, self.level, level) for v in self.vecs]
        order = None if self.order is None else self.order * s
        return QExp(level, exp_den, [k * s for k in self.keys], vecs, self.den, order)

    def with_exp_den(self, D: int) -> "QExp":
        """Re-declare the exponent lattice as (1/D)Z.

        The caller asserts that the function is supported on that lattice; the
        certified order is rounded up to the next lattice point.
        """
        L = lcm(D, self.exp_den)
        a = self.lift(exp_den=L)
        step = L // D
        if any(k % step for k in a.keys):
            raise ValueError(f"terms are not supported on (1/{D})Z")
        order = None if a.order is None else -((-a.order) // step)
        return QExp(a.level, D, [k // step for k in a.keys], list(a.vecs), a.den, order)

    def truncate(self, prec) -> "QExp":
        """Drop everything at exponent ``>= prec`` and certify only below it."""
        p = Fraction(prec)
        if self.prec is not None and p > self.prec:
            raise InsufficientOrder(f"cannot certify to {p}; only {self.prec} available")
        D = lcm(self.exp_den, p.denominator)
        a = self.lift(exp_den=D)
        return QExp(a.level, D, list(a.keys), list(a.vecs), a.den, int(p * D))

    # -- arithmetic ---------------------------------------------------
    def _align(self, other: "QExp"):
        L = lcm(self.level, other.level)
        D = lcm(self.exp_den, other.exp_den)
        return self.lift(L, D), other.lift(L, D)

    @staticmethod
    def _coerce(x):
        if isinstance(x, QExp):
            return x
        if isinstance(x, (int, Rational, CycloNum)):
            return QExp.constant(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        den = a.den * b.den // gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        acc = {}
        for k, v in zip(a.keys, a.vecs):
            acc[k] = [x * fa for x in v]
        for k, v in zip(b.keys, b.vecs):
            if k in acc:
                acc[k] = [x + y * fb for x, y in zip(acc[k], v)]
            else:
                acc[k] = [y * fb for y in v]
        keys = sorted(acc)
        return QExp(a.level, a.exp_den, keys, [tuple(acc[k]) for k in keys], den, _min_none(a.order, b.order))

    __radd__ = __add__

    def __neg__(self):
        return QExp(self.level, self.exp_den, list(self.keys), [tuple(-x for x in v) for v in self.vecs], self.den, self.order)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QExp":
        """Multiply every coefficient by the scalar ``c``."""
        if isinstance(c, CycloNum):
            L = lcm(self.level, c.level)
            a = self.lift(L)
            cv = c.embed(L)
            F = field(L)
            vecs = [kernels.mulmod(v, cv.num, F.nz, F.phi) for v in a.vecs]
            return QExp(L, a.exp_den, list(a.keys), vecs, a.den * cv.den, a.order)
        f = Fraction(c)
        vecs = [tuple(x * f.numerator for x in v) for v in self.vecs]
        return QExp(self.level, self.exp_den, list(self.keys), vecs, self.den * f.denominator, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, CycloNum)) and not isinstance(other, QExp):
            return self.scale(other)
        if not isinstance(other, QExp):
            return NotImplemented
        a, b = self._align(other)
        D = a.exp_den
        va = a.keys[0] if a.keys else None
        vb = b.keys[0] if b.keys else None
        # Certified order: error terms A*O(q^Kb) + B*O(q^Ka) + O(q^(Ka+Kb)).
        cands = []
        if a.order is not None or b.order is not None:
            if va is not None and b.order is not None:
                cands.append(va + b.order)
            if vb is not None and a.order is not None:
                cands.append(vb + a.order)
            if a.order is not None and b.order is not None:
                cands.append(a.order + b.order)
        order = min(cands) if cands else None
        F = field(a.level)
        keys, vecs = kernels.convolve(list(a.keys), list(a.vecs), list(b.keys), list(b.vecs), F.nz, F.phi, order)
        return QExp(a.level, D, keys, vecs, a.den * b.den, order)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, CycloNum)):
            return self.scale(other)
        return NotImplemented

    def inv(self, prec=None) -> "QExp":
        """Multiplicative inverse by recursive coefficient solving.

        For an exact series with more than one term the caller must supply
        ``prec``; otherwise the certified bound is ``order - 2*valuation``.
        """
        if not self.keys:
            raise ZeroLeadingTerm("cannot invert a series that vanishes to its certified order")
        D = self.exp_den
        v = self.keys[0]
        lead = CycloNum(self.level, self.vecs[0], self.den)
        lead_inv = lead.inv()
        if len(self.keys) == 1 and self.order is None:
            return QExp.from_terms({-v: lead_inv}, self.level, D, None)
        if self.order is None:
            if prec is None:
                raise InsufficientOrder("inverse of an exact multi-term series needs an explicit prec")
            order = ceil(Fraction(prec) * D)
        else:
            order = self.order - 2 * v
            if prec is not None:
                order = min(order, ceil(Fraction(prec) * D))
        rel_cap = order + v
        if rel_cap <= 0:
            return QExp.zero(self.level, D, order)
        # 1 + t with t = (a / (lead q^v)) - 1, as integer vectors over delta.
        unit = self.scale(lead_inv)
        tk = [k - v for k in unit.keys[1:] if k - v < rel_cap]
        tv = list(unit.vecs[1 : 1 + len(tk)])
        delta = unit.den
        F = field(self.level)
        if delta != 1:
            # q -> delta^D q clears denominators: t_k -> T_k * delta^(k-1).
            tv = [tuple(x * delta ** (k - 1) for x in vec) for k, vec in zip(tk, tv)]
        keys, vecs = kernels.inverse_unit(tk, tv, F.nz, F.phi, rel_cap)
        if delta != 1:
            top = rel_cap - 1
            vecs = [tuple(x * delta ** (top - k) for x in vec) for k, vec in zip(keys, vecs)]
            den = delta**top
        else:
            den = 1
        inv_unit = QExp(self.level, D, [k - v for k in keys], vecs, den, order)
        return inv_unit.scale(lead_inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, CycloNum):
            return self.scale(1 / Fraction(other))
        if isinstance(other, CycloNum):
            return self.scale(other.inv())
        if isinstance(other, QExp):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n: int) -> "QExp":
        return int_pow(self, n)

    def __eq__(self, other):
        if not isinstance(other, QExp):
            o = self._coerce(other)
            if o is None:
                return NotImplemented
            other = o
        a, b = self._align(other)
        return a.order == b.order and a.keys == b.keys and a.vecs == b.vecs and a.den == b.den

    def __hash__(self):
        return hash((self.valuation(), self.prec))

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        return {
            "coeff_level": self.level,
            "exp_den": self.exp_den,
            "order": self.order,
            "terms": [{"k": k, "coeff": c.to_json()} for k, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QExp":
        M = int(obj["coeff_level"])
        terms = {int(t["k"]): CycloNum.from_json(t["coeff"]) for t in obj["terms"]}
        return cls.from_terms(terms, M, int(obj["exp_den"]), obj.get("order"))


def int_pow(a: QExp, n: int) -> QExp:
    """``a**n`` by square-and-multiply; negative ``n`` inverts first."""
    if n == 0:
        return QExp.constant(1, a.level)
    if n < 0:
        return int_pow(a.inv(), -n)
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


def rescale_exponents(a: QExp, N: int) -> QExp:
    """``h(tau) -> h(tau/N)``: every exponent ``e`` becomes ``e/N``."""
    return QExp(a.level, a.exp_den * N, list(a.keys), list(a.vecs), a.den, a.order)


def dilate_exponents(a: QExp, N: int) -> QExp:
    """``h(tau) -> h(N*tau)``: every exponent ``e`` becomes ``N*e``."""
    if a.exp_den % N == 0:
        return QExp(a.level, a.exp_den // N, list(a.keys), list(a.vecs), a.den, a.order)
    order = None if a.order is None else a.order * N
    return QExp(a.level, a.exp_den, [k * N for k in a.keys], list(a.vecs), a.den, order)


def shift_T(a: QExp, times: int = 1) -> QExp:
    """``h(tau) -> h(tau + times)``: scale ``q^(k/D)`` by ``exp(2 pi i k times / D)``."""
    D = a.exp_den
    L = lcm(a.level, D // gcd(D, times))
    b = a.lift(L)
    F = field(L)
    vecs = []
    for k, v in zip(b.keys, b.vecs):
        r = Fraction(k * times, D)
        e = (r.numerator * (L // r.denominator)) % L
        vecs.append(kernels.mulmod(v, F.powers[e], F.nz, F.phi) if e else v)
    return QExp(L, b.exp_den, list(b.keys), vecs, b.den, b.order)


def coeff_sigma_d(a: QExp, d: int) -> QExp:
    """Apply ``sigma_d`` (``zeta_M -> zeta_M**d``) to every coefficient."""
    if gcd(d, a.level) != 1:
        raise NotCoprime(f"gcd({d}, {a.level}) != 1")
    if a.level <= 2:
        return a
    F = field(a.level)
    M = a.level
    vecs = []
    for v in a.vecs:
        acc = [0] * F.phi
        for i, x in enumerate(v):
            if x:
                for j, y in enumerate(F.powers[(i * d) % M]):
                    if y:
                        acc[j] += x * y
        vecs.append(tuple(acc))
    return QExp(M, a.exp_den, list(a.keys), vecs, a.den, a.order)


def eq_to_order(a: QExp, b: QExp, K) -> bool:
    """True iff every coefficient of ``q^e`` with ``e < K`` agrees exactly."""
    K = Fraction(K)
    for s in (a, b):
        if s.prec is not None and s.prec < K:
            raise InsufficientOrder(f"series certified only to {s.prec}, need {K}")
    d = a - b
    return all(Fraction(k, d.exp_den) >= K for k in d.keys)


def add(a: QExp, b: QExp) -> QExp:
    return a + b


def neg(a: QExp) -> QExp:
    return -a


def mul(a: QExp, b: QExp) -> QExp:
    return a * b


def inv(a: QExp, prec=None) -> QExp:
    return a.inv(prec)
