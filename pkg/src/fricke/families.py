"""Fricke families and weak Fricke families of level N.

A family is a map ``v -> h_v`` on primitive vectors of level N.  Three kinds
of recipe families are supported, each a polynomial ``P(x, y, z, w)`` over Q
in designated generators:

* ``fricke`` (``4 | N``, ``N >= 8``): ``(r_v, 1/r_v, 1/(r_v - 16), s_v)``
* ``fricke4`` (``N = 4``): ``(r_v, 1/r_v, 1/(r_v - 16))``; ``w`` is unused
* ``weak`` (any ``N >= 2``): ``(j, 1/j, 1/(j - 1728), f_v)``

The weak conditions are: finite principal part at every cusp with poles only
over the elliptic orbits, dependence on ``+-v`` mod Z^2 only, and Galois
equivariance.

Verification covers the two checkable conditions: independence of the raw
representative (exact) and equivariance under a generating set of
GL2(Z/N)/{+-1}, exact on diagonal and translation generators and numeric on
``tau -> -1/tau``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable

from . import modfunc, numeric
from .cyclotomic import CycloNum
from .errors import (
    InsufficientOrder,
    KindMismatch,
    LevelMismatch,
    LevelNotDivisibleBy4,
    NonConstantQuotient,
    NoSolution,
    PreconditionViolated,
)
from .galois import GLMat, act_vec, diag, reduces_to_unipotent, sl2
from .modfunc import FracVec, as_raw, vectors
from .qseries import QExp, coeff_sigma_d, eq_to_order, int_pow, shift_T

KINDS = ("fricke", "fricke4", "weak")
GENERATORS = "xyzw"

Monomial = tuple[int, int, int, int]


# ---------------------------------------------------------------------------
# recipes


def _check_kind(level: int, kind: str):
    if kind not in KINDS:
        raise ValueError(f"unknown family kind {kind!r}")
    if kind == "fricke":
        if level % 4 or level < 8:
            raise LevelNotDivisibleBy4(f"kind 'fricke' needs 4 | N and N >= 8, got N={level}")
    elif kind == "fricke4":
        if level != 4:
            raise LevelMismatch("kind 'fricke4' is only defined at N = 4")
    elif level < 2:
        raise ValueError("level must be at least 2")


def default_kind(level: int) -> str:
    if level == 4:
        return "fricke4"
    if level % 4 == 0 and level >= 8:
        return "fricke"
    return "weak"


@dataclass(frozen=True)
class FamilySpec:
    """A polynomial recipe over Q in the generators of ``kind`` at level N.

    ``perturb`` (optional) adds ``delta`` to one coefficient at every vector
    other than ``(1/N, 0)``.  That breaks Galois equivariance on purpose and
    exists only as a negative control for the verifiers.
    """

    level: int
    kind: str
    poly: tuple[tuple[Monomial, Fraction], ...]
    perturb: tuple[Monomial, Fraction] | None = None

    def __post_init__(self):
        _check_kind(self.level, self.kind)
        merged: dict[Monomial, Fraction] = {}
        for mono, c in self.poly:
            mono = tuple(int(e) for e in mono)
            if len(mono) != 4 or min(mono) < 0:
                raise ValueError(f"bad monomial {mono}")
            merged[mono] = merged.get(mono, Fraction(0)) + Fraction(c)
        if self.kind == "fricke4" and any(m[3] for m in merged if merged[m]):
            raise KindMismatch("kind 'fricke4' has no w generator")
        object.__setattr__(self, "poly", tuple(sorted((m, c) for m, c in merged.items() if c)))

    # construction ----------------------------------------------------------

    @classmethod
    def from_dict(cls, level, kind, coeffs: dict) -> "FamilySpec":
        return cls(level, kind, tuple(coeffs.items()))

    @classmethod
    def generator(cls, name: str, level: int, kind: str | None = None) -> "FamilySpec":
        mono = [0, 0, 0, 0]
        mono[GENERATORS.index(name)] = 1
        return cls(level, kind or default_kind(level), ((tuple(mono), Fraction(1)),))

    @classmethod
    def constant(cls, c, level: int, kind: str | None = None) -> "FamilySpec":
        return cls(level, kind or default_kind(level), (((0, 0, 0, 0), Fraction(c)),))

    @classmethod
    def parse(cls, text: str, level: int, kind: str | None = None) -> "FamilySpec":
        """Parse a polynomial such as ``"w"`` or ``"x**2 - 16*y + 1/3"``."""
        import sympy

        syms = sympy.symbols(" ".join(GENERATORS))
        expr = sympy.sympify(text, locals=dict(zip(GENERATORS, syms)))
        poly = sympy.Poly(sympy.expand(expr), *syms)
        coeffs = {}
        for mono, c in poly.terms():
            c = sympy.Rational(c)
            coeffs[tuple(int(e) for e in mono)] = Fraction(int(c.p), int(c.q))
        return cls(level, kind or default_kind(level), tuple(coeffs.items()))

    # arithmetic ------------------------------------------------------------

    def _compatible(self, other: "FamilySpec"):
        if self.level != other.level:
            raise LevelMismatch(f"levels {self.level} and {other.level} differ")
        if self.kind != other.kind:
            raise KindMismatch(f"kinds {self.kind} and {other.kind} differ")

    def __add__(self, other: "FamilySpec") -> "FamilySpec":
        self._compatible(other)
        return FamilySpec(self.level, self.kind, self.poly + other.poly)

    def __neg__(self) -> "FamilySpec":
        return FamilySpec(self.level, self.kind, tuple((m, -c) for m, c in self.poly))

    def __sub__(self, other: "FamilySpec") -> "FamilySpec":
        return self + (-other)

    def __mul__(self, other: "FamilySpec") -> "FamilySpec":
        self._compatible(other)
        out = []
        for m1, c1 in self.poly:
            for m2, c2 in other.poly:
                out.append((tuple(a + b for a, b in zip(m1, m2)), c1 * c2))
        return FamilySpec(self.level, self.kind, tuple(out))

    def with_perturbation(self, delta, monomial: Monomial | None = None) -> "FamilySpec":
        mono = monomial or (self.poly[0][0] if self.poly else (0, 0, 0, 0))
        return FamilySpec(self.level, self.kind, self.poly, (tuple(mono), Fraction(delta)))

    @property
    def is_zero(self) -> bool:
        return not self.poly

    def degree(self) -> int:
        return max((sum(m) for m, _ in self.poly), default=0)

    def __str__(self):
        if not self.poly:
            return "0"
        parts = []
        for mono, c in self.poly:
            factors = [g if e == 1 else f"{g}^{e}" for g, e in zip(GENERATORS, mono) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    # serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "level": self.level,
            "kind": self.kind,
            "poly": [{"monomial": list(m), "coeff": _frac_str(c)} for m, c in self.poly],
        }
        if self.perturb is not None:
            out["perturb"] = {"monomial": list(self.perturb[0]), "delta": _frac_str(self.perturb[1])}
        return out

    @classmethod
    def from_json(cls, obj, level: int | None = None, kind: str | None = None) -> "FamilySpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        N = int(obj.get("level", level) if level is None else level)
        k = obj.get("kind") or kind or default_kind(N)
        poly = obj.get("poly", [])
        if isinstance(poly, str):
            spec = cls.parse(poly, N, k)
        else:
            terms = []
            for t in poly:
                if isinstance(t, str):
                    terms.extend(cls.parse(t, N, k).poly)
                else:
                    terms.append((tuple(t["monomial"]), Fraction(t["coeff"])))
            spec = cls(N, k, tuple(terms))
        p = obj.get("perturb")
        if p:
            spec = spec.with_perturbation(Fraction(p["delta"]), tuple(p["monomial"]) if "monomial" in p else None)
        return spec


def _frac_str(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def family_add(a: FamilySpec, b: FamilySpec) -> FamilySpec:
    return a + b


def family_mul(a: FamilySpec, b: FamilySpec) -> FamilySpec:
    return a * b


# ---------------------------------------------------------------------------
# families as objects


def _raw_of(v, N: int):
    if isinstance(v, FracVec):
        if v.level != N:
            raise LevelMismatch(f"vector level {v.level} differs from family level {N}")
        return v.raw
    v1, v2 = as_raw(v)
    lev = FracVec.from_fractions(v1, v2).level
    if lev != N:
        raise LevelMismatch(f"vector of level {lev} in a family of level {N}")
    return v1, v2


def _build(make: Callable[[int], QExp], K) -> QExp:
    return modfunc._adaptive(lambda P: make(modfunc._ceil_int(P)), K)


class Family:
    """Base class: ``component`` takes a FracVec or raw pair of level N."""

    level: int
    name = "family"

    def component_raw(self, raw, K) -> QExp:
        raise NotImplementedError

    def component(self, v, K) -> QExp:
        if not isinstance(v, FracVec):
            v = FracVec.from_fractions(*as_raw(v))
        return self.component_raw(_raw_of(v, self.level), K)

    def evaluate(self, raw, tau) -> complex:
        raise NotImplementedError

    def base(self, K) -> QExp:
        return self.component(FracVec(self.level, 1, 0), K)


class FrickeFunctionFamily(Family):
    """``{f_v}``."""

    name = "fricke-functions"

    def __init__(self, level: int):
        self.level = level

    def component_raw(self, raw, K):
        _raw_of(raw, self.level)
        return modfunc.fricke_f(tuple(as_raw(raw)), modfunc._ceil_int(K))

    def evaluate(self, raw, tau):
        return numeric.eval_fricke(raw, tau)


class SiegelPowerFamily(Family):
    """``{g_v^(12N)}``, computed at the vector exactly as given."""

    name = "siegel-12N"

    def __init__(self, level: int):
        self.level = level

    def component_raw(self, raw, K):
        _raw_of(raw, self.level)
        return modfunc.siegel_product([(tuple(as_raw(raw)), 12 * self.level)], K)

    def evaluate(self, raw, tau):
        return numeric.eval_siegel_direct(raw, tau) ** (12 * self.level)


class RecipeFamily(Family):
    """The family ``v -> P(generators at v)`` of a FamilySpec."""

    def __init__(self, spec: FamilySpec):
        self.spec = spec
        self.level = spec.level
        self.name = f"{spec.kind}:{spec}"

    def _poly_at(self, raw):
        if self.spec.perturb is None:
            return self.spec.poly
        if FracVec.from_fractions(*raw) == FracVec(self.level, 1, 0):
            return self.spec.poly
        mono, delta = self.spec.perturb
        d = dict(self.spec.poly)
        d[mono] = d.get(mono, Fraction(0)) + delta
        return tuple((m, c) for m, c in d.items() if c)

    def component_raw(self, raw, K):
        raw = tuple(_raw_of(raw, self.level))
        poly = self._poly_at(raw)
        return _build(lambda P: _eval_recipe(self.spec.kind, self.level, raw, poly, P), K)

    def evaluate(self, raw, tau):
        raw = tuple(as_raw(raw))
        gens = _numeric_generators(self.spec.kind, self.level, raw, tau)
        total = 0j
        for mono, c in self._poly_at(raw):
            term = complex(float(c))
            for g, e in zip(gens, mono):
                if e:
                    term *= g**e
            total += term
        return total


def family_for(spec_or_name, level: int | None = None) -> Family:
    if isinstance(spec_or_name, Family):
        return spec_or_name
    if isinstance(spec_or_name, FamilySpec):
        return RecipeFamily(spec_or_name)
    if spec_or_name in ("fricke-functions", "fricke_f"):
        return FrickeFunctionFamily(level)
    if spec_or_name in ("siegel-12N", "siegel12N"):
        return SiegelPowerFamily(level)
    raise ValueError(f"unknown family {spec_or_name!r}")


# ---------------------------------------------------------------------------
# generators


def _scaled(raw, m):
    return (m * raw[0], m * raw[1])


@lru_cache(maxsize=None)
def _generator_series(kind: str, N: int, raw, P: int):
    """Series ``(x, y, z, w)`` at ``raw``; each is built lazily on first use."""
    gens: dict[str, QExp] = {}

    def x():
        if "x" not in gens:
            if kind == "weak":
                gens["x"] = modfunc.j_invariant(P)
            else:
                gens["x"] = modfunc.siegel_product([(_scaled(raw, N // 2), 8), (_scaled(raw, N // 4), -8)], P)
        return gens["x"]

    def y():
        if "y" not in gens:
            gens["y"] = x().inv()
        return gens["y"]

    def z():
        if "z" not in gens:
            gens["z"] = (x() - (1728 if kind == "weak" else 16)).inv()
        return gens["z"]

    def w():
        if "w" not in gens:
            if kind == "weak":
                gens["w"] = modfunc.fricke_f(raw, P)
            elif kind == "fricke":
                gens["w"] = _s_raw(raw, N, P)
            else:
                raise KindMismatch("kind 'fricke4' has no w generator")
        return gens["w"]

    return (x, y, z, w)


def _s_raw(raw, N, P):
    fw = modfunc.fricke_f(_scaled(raw, N // 2), P)
    num = modfunc.fricke_f(raw, P) - fw
    den = modfunc.fricke_f(_scaled(raw, N // 4), P) - fw
    return num / den


def _eval_recipe(kind, N, raw, poly, P) -> QExp:
    getters = _generator_series(kind, N, raw, P)
    powers: dict[tuple[int, int], QExp] = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = int_pow(getters[i](), e)
        return powers[key]

    total = QExp.zero(order=None)
    for mono, c in poly:
        term = QExp.constant(c)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        total = total + term
    if not poly:
        return QExp.zero(order=P)
    return total


def _numeric_generators(kind, N, raw, tau):
    if kind == "weak":
        j = numeric.eval_j(tau)
        return (j, 1 / j, 1 / (j - 1728), numeric.eval_fricke(raw, tau))
    r = numeric.eval_siegel_product([(_scaled(raw, N // 2), 8), (_scaled(raw, N // 4), -8)], tau)
    w = 0j
    if kind == "fricke":
        fw = numeric.eval_fricke(_scaled(raw, N // 2), tau)
        w = (numeric.eval_fricke(raw, tau) - fw) / (numeric.eval_fricke(_scaled(raw, N // 4), tau) - fw)
    return (r, 1 / r, 1 / (r - 16), w)


def component(spec: FamilySpec, v, K) -> QExp:
    return RecipeFamily(spec).component(v, K)


def phi_N(spec, K) -> QExp:
    """The ``(1/N, 0)`` component."""
    return family_for(spec).base(K)


# ---------------------------------------------------------------------------
# verification


@dataclass
class Report:
    family: str
    level: int
    order: int
    checks: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def add(self, **entry):
        self.checks.append(entry)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "level": self.level,
            "order": self.order,
            "status": "pass" if self.passed else "fail",
            "checks": self.checks,
        }


def raw_representatives(v: FracVec):
    """Distinct raw vectors for the same class: ``v``, ``-v`` and two Z^2 shifts."""
    N = v.level
    a, b = v.a, v.b
    return [(Fraction(x, N), Fraction(y, N)) for x, y in ((a, b), (-a, -b), (a + N, b), (a, b - N))]


def verify_F2(family, K, vecs=None) -> Report:
    fam = family_for(family)
    N = fam.level
    rep = Report(fam.name, N, int(K))
    for v in vecs or vectors(N):
        ref = fam.component_raw(v.raw, K)
        for raw in raw_representatives(v)[1:]:
            try:
                ok = eq_to_order(fam.component_raw(raw, K), ref, K)
                rep.add(check="F2", v=str(v), raw=f"{raw[0]},{raw[1]}", status="pass" if ok else "fail")
            except InsufficientOrder as exc:
                rep.add(check="F2", v=str(v), raw=f"{raw[0]},{raw[1]}", status="fail", error=str(exc))
    return rep


def galois_sigma(a: QExp, d: int, N: int) -> QExp:
    """``zeta_N -> zeta_N^d`` on a series with coefficients in Q(zeta_N)."""
    b = a.reduce_level()
    if N % b.level:
        raise PreconditionViolated(f"coefficients lie in Q(zeta_{b.level}), outside Q(zeta_{N})")
    return coeff_sigma_d(b, d % b.level if b.level > 1 else 1)


def generating_set(N: int) -> list[tuple[str, GLMat]]:
    """Diagonal units, T and S: together they generate GL2(Z/N)/{+-1}."""
    gens = [(f"diag(1,{d})", diag(N, d)) for d in range(2, N) if gcd(d, N) == 1]
    gens.append(("T", GLMat(N, 1, 1, 0, 1)))
    gens.append(("S", GLMat(N, 0, -1, 1, 0)))
    return gens


def verify_F3(family, K, tol=1e-8, taus=("2i",), vecs=None) -> Report:
    """Equivariance ``h_v^gamma = h_(v gamma)`` on a generating set.

    Diagonal generators and T are checked exactly on q-series.  For S the
    values ``h_v(-1/tau)`` and ``h_(v2,-v1)(tau)`` are compared numerically by
    relative residual.
    """
    fam = family_for(family)
    N = fam.level
    rep = Report(fam.name, N, int(K))
    vecs = list(vecs or vectors(N))
    comps = {v: fam.component(v, K) for v in vecs}

    def comp(v):
        if v not in comps:
            comps[v] = fam.component(v, K)
        return comps[v]

    for name, g in generating_set(N):
        for v in vecs:
            w = act_vec(g, v)
            if name == "S":
                for tau in taus:
                    p = numeric.CPoint.of(tau)
                    v1, v2 = v.raw
                    lhs = fam.evaluate((v1, v2), p.act_S())
                    rhs = fam.evaluate((v2, -v1), p)
                    res = numeric.relative_residual(lhs, rhs)
                    rep.add(
                        check="F3",
                        generator="S",
                        v=str(v),
                        tau=str(tau),
                        residual=float(f"{res:.3e}"),
                        status="pass" if res <= tol else "fail",
                    )
                continue
            if name == "T":
                lhs = shift_T(comp(v))
            else:
                lhs = galois_sigma(comp(v), g.d, N)
            ok = eq_to_order(lhs, comp(w), K)
            rep.add(check="F3", generator=name, v=str(v), image=str(w), status="pass" if ok else "fail")
    return rep


# ---------------------------------------------------------------------------
# solving for recipes


def _rational_rows(series: QExp, lo: int, hi: int, D: int) -> list[Fraction]:
    """Rational coefficients of ``q^(k/D)`` for ``lo <= k < hi``."""
    t = series.lift(exp_den=D) if D % series.exp_den == 0 else None
    if t is None:
        raise PreconditionViolated("exponent lattice mismatch")
    terms = t.terms
    out = []
    for k in range(lo, hi):
        c = terms.get(k)
        out.append(Fraction(0) if c is None else c.rational_value())
    return out


def _solve(columns: list[list[Fraction]], rhs: list[Fraction]):
    """Exact least-structure solve ``A x = b``; free variables are set to zero."""
    n = len(columns)
    rows = [[columns[j][i] for j in range(n)] + [rhs[i]] for i in range(len(rhs))]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x


def _basis(kind: str, deg: int) -> list[Monomial]:
    """Partial-fraction monomials ``x^i, y^i, z^i`` times ``w^e``."""
    base = [(i, 0, 0) for i in range(deg + 1)]
    base += [(0, i, 0) for i in range(1, deg + 1)]
    base += [(0, 0, i) for i in range(1, deg + 1)]
    w_max = 0 if kind == "fricke4" else deg
    return [(a, b, c, e) for e in range(w_max + 1) for (a, b, c) in base]


def express_in_generators(target: QExp, level: int, max_degree: int = 4, kind: str | None = None) -> FamilySpec:
    """A recipe whose ``(1/N, 0)`` component equals ``target`` to its order.

    Degrees ``1 .. max_degree`` are tried in turn.  Each candidate is solved
    over Q on a window of ``unknowns + 10`` coefficients starting at the lowest
    valuation present, then re-expanded and checked on the full certified
    order of ``target``.
    """
    N = level
    kind = kind or default_kind(N)
    _check_kind(N, kind)
    if target.prec is None:
        raise InsufficientOrder("target must carry a certified order")
    if not target.is_rational():
        raise PreconditionViolated("target coefficients are not rational")
    if N % target.term_exp_den():
        raise PreconditionViolated(f"target exponents are not in (1/{N})Z")
    K = target.prec
    raw = (Fraction(1, N), Fraction(0))
    for deg in range(1, max_degree + 1):
        monos = _basis(kind, deg)
        series = [_eval_recipe(kind, N, raw, (((m), Fraction(1)),), modfunc._ceil_int(K) + 2 * deg + 2) for m in monos]
        if any(s.prec is not None and s.prec < K for s in series):
            series = [
                _build(lambda P, m=m: _eval_recipe(kind, N, raw, ((m, Fraction(1)),), P), K) for m in monos
            ]
        lo = min([s.valuation() for s in series if not s.is_zero()] + [target.valuation()])
        lo_k = int(lo * N)
        hi_k = lo_k + len(monos) + 10
        if Fraction(hi_k, N) > K:
            raise InsufficientOrder(f"need order {Fraction(hi_k, N)} to pin down {len(monos)} unknowns")
        cols = [_rational_rows(s, lo_k, hi_k, N) for s in series]
        sol = _solve(cols, _rational_rows(target, lo_k, hi_k, N))
        if sol is None:
            continue
        spec = FamilySpec(N, kind, tuple((m, c) for m, c in zip(monos, sol) if c))
        got = QExp.zero()
        for s, c in zip(series, sol):
            if c:
                got = got + s.scale(c)
        if eq_to_order(got.truncate(K), target, K):
            return spec
    raise NoSolution(f"no recipe of degree <= {max_degree} reproduces the target to order {K}")


# ---------------------------------------------------------------------------
# discriminants


def _pairwise_square_product(series: list[QExp]) -> QExp:
    out = None
    for m in range(len(series)):
        for n in range(m + 1, len(series)):
            d = series[m] - series[n]
            out = d * d if out is None else out * d * d
    return out


@dataclass
class DiscriminantResult:
    level: int
    d: int
    exponents: tuple[int, int]
    constant: Fraction
    order: int

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "d": self.d,
            "exponents": list(self.exponents),
            "constant": _frac_str(self.constant),
            "order": self.order,
        }


def discriminant_check_weak(N: int, K=15) -> DiscriminantResult:
    """``prod_(m<n) (f_m - f_n)^2 / (j^a (j - 1728)^b)`` over all ``f_v``.

    With ``d = |V_N/+-|`` the exponents are ``a = d(d-1)/3``,
    ``b = d(d-1)/2``.  Raises NonConstantQuotient unless the quotient is a
    rational constant to order ``K``.
    """
    vs = vectors(N)
    d = len(vs)
    if (d * (d - 1)) % 3:
        raise PreconditionViolated(f"d(d-1)/3 is not an integer for d={d}")
    a, b = d * (d - 1) // 3, d * (d - 1) // 2

    def build(P):
        P = modfunc._ceil_int(P)
        D = _pairwise_square_product([modfunc.fricke_f(v.raw, P) for v in vs])
        j = modfunc.j_invariant(P)
        return D / (int_pow(j, a) * int_pow(j - 1728, b))

    quot = modfunc._adaptive(build, K, margin=a + b)
    if quot.is_zero():
        raise NonConstantQuotient("quotient vanishes to the certified order")
    c = quot.coefficient(0)
    for e, coeff in quot.items():
        if e != 0:
            raise NonConstantQuotient(f"quotient has a q^{e} term {coeff}")
    if not c.is_rational():
        raise NonConstantQuotient(f"constant {c} is not rational")
    return DiscriminantResult(N, d, (a, b), c.rational_value(), int(K))


def discriminant_unit_cross_check(N: int, K=15) -> Fraction:
    """``(2^12 3^6)^p prod (g_(u+v) g_(u-v))^6 / (g_u g_v)^12`` over pairs.

    For ``d = 3`` (``p = 3`` pairs) this equals ``c^3`` with ``c`` from
    :func:`discriminant_check_weak`.
    """
    vs = [v.raw for v in vectors(N)]
    pairs = []
    npairs = 0
    for m in range(len(vs)):
        for n in range(m + 1, len(vs)):
            u, v = vs[m], vs[n]
            pairs += [
                ((u[0] + v[0], u[1] + v[1]), 6),
                ((u[0] - v[0], u[1] - v[1]), 6),
                (u, -12),
                (v, -12),
            ]
            npairs += 1
    U = modfunc.siegel_product(pairs, K)
    if U.is_zero() or any(e != 0 for e, _ in U.items()):
        raise NonConstantQuotient("product of units is not constant")
    c = U.coefficient(0)
    if not c.is_rational():
        raise NonConstantQuotient(f"unit product {c} is not rational")
    return (2**12 * 3**6) ** npairs * c.rational_value()


# ---------------------------------------------------------------------------
# Vandermonde check at level 8


def gamma1_mod4_elements(N: int = 8) -> list[GLMat]:
    """Elements of SL2(Z/N)/{+-1} that are ``+-[[1,0],[*,1]]`` mod 4."""
    return [g for g in sl2(N) if reduces_to_unipotent(g, 4)]


def conjugate_vectors(N: int = 8) -> tuple[list[FracVec], int]:
    """Orbit of ``(1/N, 0)`` under :func:`gamma1_mod4_elements`, and the
    coset count ``|H| / |Stab_H(e1)|``."""
    H = gamma1_mod4_elements(N)
    e1 = FracVec(N, 1, 0)
    orbit = sorted({act_vec(g, e1) for g in H})
    stab = sum(1 for g in H if act_vec(g, e1) == e1)
    return orbit, len(H) // stab


def vandermonde_trace_check(N: int = 8, K=10) -> Report:
    if N % 4 or N < 8:
        raise LevelNotDivisibleBy4(f"level {N} must be a multiple of 4 and at least 8")
    orbit, cosets = conjugate_vectors(N)
    rep = Report("vandermonde", N, int(K))
    rep.add(check="conjugate-count", d=len(orbit), cosets=cosets, status="pass" if len(orbit) == cosets else "fail")

    def build(P):
        P = modfunc._ceil_int(P)
        return _pairwise_square_product([_s_raw(v.raw, N, P) for v in orbit])

    prod = modfunc._adaptive(build, K, margin=4)
    reduced = prod.reduce_level()
    rep.add(check="rational-coefficients", level=reduced.level, status="pass" if reduced.is_rational() else "fail")
    den = reduced.term_exp_den()
    rep.add(check="exponent-denominators", denominator=den, status="pass" if 4 % den == 0 else "fail")
    lead = None if reduced.is_zero() else reduced.leading_coefficient()
    rep.add(
        check="leading-coefficient",
        valuation=str(reduced.valuation()) if lead is not None else None,
        value=str(lead.rational_value()) if lead is not None and lead.is_rational() else str(lead),
        status="pass" if lead is not None and not lead.is_zero() else "fail",
    )
    rep.vectors = [str(v) for v in orbit]
    return rep


__all__ = [
    "KINDS",
    "FamilySpec",
    "Family",
    "FrickeFunctionFamily",
    "SiegelPowerFamily",
    "RecipeFamily",
    "family_for",
    "family_add",
    "family_mul",
    "component",
    "phi_N",
    "verify_F2",
    "verify_F3",
    "express_in_generators",
    "discriminant_check_weak",
    "discriminant_unit_cross_check",
    "vandermonde_trace_check",
    "conjugate_vectors",
    "CycloNum",
]
