"""Floating-point evaluation at points of the upper half plane.

These routines are an independent oracle for the exact layer: the defining
products and lattice sums are evaluated directly, so agreement with the
q-series is a genuine cross-check.  Transformation laws under ``tau -> -1/tau``
can only be checked here.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DivergenceWarning, LatticePoint, SlowConvergence, ToleranceExceeded
from .modfunc import FracVec, as_raw, bernoulli2
from .qseries import QExp

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class CPoint:
    re: float
    im: float

    def __post_init__(self):
        if not self.im > 0:
            raise ValueError("tau must lie in the upper half plane")

    @classmethod
    def of(cls, tau) -> "CPoint":
        if isinstance(tau, CPoint):
            return tau
        if isinstance(tau, str):
            tau = complex(tau.replace(" ", "").replace("i", "j"))
        tau = complex(tau)
        return cls(tau.real, tau.imag)

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    def act_S(self) -> "CPoint":
        return CPoint.of(-1 / self.z)


def qpow(tau: complex, e) -> complex:
    """``exp(2 pi i tau e)`` for rational ``e``."""
    return cmath.exp(TWO_PI_I * tau * float(e))


def eval_qexp(a: QExp, tau) -> tuple[complex, float]:
    """Value of the truncated series and an estimate of the omitted tail.

    The estimate is the last included term times the geometric tail
    ``r / (1 - r)`` with ``r = |q|^(1/D)``.
    """
    t = CPoint.of(tau).z
    D = a.exp_den
    total = 0j
    last = 0.0
    for e, c in a.items():
        term = c.to_complex() * qpow(t, e)
        total += term
        last = abs(term)
    r = math.exp(-2 * math.pi * t.imag / D)
    if a.prec is None:
        return total, 0.0
    err = last * r / (1 - r) if r < 1 else math.inf
    if not math.isfinite(err) or err > abs(total):
        warnings.warn(f"series tail is not small at tau={t}", DivergenceWarning, stacklevel=2)
    return total, err


def _factor_count(tau: complex, tol=1e-18) -> int:
    r = math.exp(-2 * math.pi * tau.imag)
    return max(8, int(math.ceil(math.log(tol) / math.log(r))) + 2)


def eval_siegel_direct(v, tau, n_factors=None) -> complex:
    """``g_v(tau)`` from the infinite product, at the vector exactly as given."""
    v1, v2 = as_raw(v)
    t = CPoint.of(tau).z
    n = _factor_count(t) if n_factors is None else n_factors
    f1, f2 = float(v1), float(v2)
    val = -cmath.exp(1j * math.pi * f2 * (f1 - 1)) * qpow(t, bernoulli2(v1) / 2)
    ez = cmath.exp(TWO_PI_I * f2)
    val *= 1 - ez * cmath.exp(TWO_PI_I * t * f1)
    ns = np.arange(1, n + 1, dtype=float)
    qn = np.exp(TWO_PI_I * t * ns)
    qa = cmath.exp(TWO_PI_I * t * f1)
    prod = np.prod((1 - qn * qa * ez) * (1 - qn / qa / ez))
    return complex(val * prod)


def eval_siegel_product(pairs, tau) -> complex:
    """``prod g_v(tau)^m`` over ``(v, m)`` pairs."""
    out = 1 + 0j
    for v, m in pairs:
        out *= eval_siegel_direct(v, tau) ** m
    return out


def eval_wp_direct(v, tau, R: int = 60) -> complex:
    """``(2 pi i)^-2 wp(v1 tau + v2)`` by symmetric truncation ``|m|, |n| <= R``."""
    v1, v2 = as_raw(v)
    if v1.denominator == 1 and v2.denominator == 1:
        raise LatticePoint(f"{(v1, v2)} is a lattice point")
    t = CPoint.of(tau).z
    z = float(v1) * t + float(v2)
    m, n = np.meshgrid(np.arange(-R, R + 1), np.arange(-R, R + 1), indexing="ij")
    lam = (m * t + n).ravel()
    nonzero = (m != 0) | (n != 0)
    lam = lam[nonzero.ravel()]
    wp = 1 / z**2 + np.sum(1 / (z - lam) ** 2 - 1 / lam**2)
    return complex(wp / TWO_PI_I**2)


# ---------------------------------------------------------------------------
# level one building blocks, evaluated from their own q-series


def eval_eisenstein(weight: int, tau, terms: int | None = None) -> complex:
    from .modfunc import _divisor_sum

    t = CPoint.of(tau).z
    c, p = (240, 3) if weight == 4 else (-504, 5)
    n = _factor_count(t) if terms is None else terms
    return 1 + c * sum(_divisor_sum(k, p) * qpow(t, k) for k in range(1, n + 1))


def eval_delta(tau) -> complex:
    t = CPoint.of(tau).z
    n = _factor_count(t)
    qn = np.exp(TWO_PI_I * t * np.arange(1, n + 1))
    return complex(qpow(t, 1) * np.prod((1 - qn) ** 24))


def eval_j(tau) -> complex:
    e4 = eval_eisenstein(4, tau)
    return e4**3 / eval_delta(tau)


def eval_wp_series(v, tau) -> complex:
    """``(2 pi i)^-2 wp`` from the q-expansion summed in closed form per n."""
    v1, v2 = as_raw(v)
    t = CPoint.of(tau).z
    v1 -= math.floor(v1)
    v2 -= math.floor(v2)
    u = cmath.exp(TWO_PI_I * (float(v1) * t + float(v2)))
    n = _factor_count(t)
    qn = np.exp(TWO_PI_I * t * np.arange(1, n + 1))
    # sum_k k x^k = x / (1 - x)^2
    s = 1 / 12 + u / (1 - u) ** 2
    s += np.sum(qn * u / (1 - qn * u) ** 2 + qn / u / (1 - qn / u) ** 2 - 2 * qn / (1 - qn) ** 2)
    return complex(s)


def eval_fricke(v, tau, scale=12) -> complex:
    return scale * eval_eisenstein(4, tau) * eval_eisenstein(6, tau) * eval_wp_series(v, tau) / eval_delta(tau)


# ---------------------------------------------------------------------------
# transformation checks


def check_S_transform(v, tau, tol=1e-8) -> complex:
    """``zeta = g_v(-1/tau) / g_(v2, -v1)(tau)``; must be a 12th root of unity."""
    v1, v2 = as_raw(v)
    p = CPoint.of(tau)
    z = eval_siegel_direct((v1, v2), p.act_S()) / eval_siegel_direct((v2, -v1), p)
    if abs(abs(z) - 1) > tol or abs(z**12 - 1) > tol:
        raise ToleranceExceeded(f"ratio {z} is not a 12th root of unity within {tol}")
    return z


def relative_residual(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# ---------------------------------------------------------------------------
# cusp values of g_{1,4}


def eval_g14(tau) -> complex:
    """``(g_(1/2,0)(4 tau) / g_(1/4,0)(4 tau))^8`` from the direct products."""
    t4 = 4 * CPoint.of(tau).z
    half = eval_siegel_direct((Fraction(1, 2), Fraction(0)), t4)
    quarter = eval_siegel_direct((Fraction(1, 4), Fraction(0)), t4)
    return (half / quarter) ** 8


def cusp_value_g14(approach, tol=1e-3) -> complex:
    """Limit of ``g_{1,4}`` along ``approach``, with Aitken extrapolation.

    Warns ``SlowConvergence`` when the last two values differ by more than
    ``tol``.
    """
    vals = [eval_g14(CPoint.of(t)) for t in approach]
    est = vals[-1]
    if len(vals) >= 3:
        a, b, c = vals[-3:]
        den = a - 2 * b + c
        if abs(den) > 1e-14 * max(abs(a), abs(b), abs(c), 1.0):
            ait = c - (c - b) ** 2 / den
            if abs(ait - c) <= abs(c - b):
                est = ait
    if len(vals) >= 2 and abs(vals[-1] - vals[-2]) > tol:
        warnings.warn("cusp approach has not settled", SlowConvergence, stacklevel=2)
    return est


__all__ = [
    "CPoint",
    "FracVec",
    "eval_qexp",
    "eval_siegel_direct",
    "eval_siegel_product",
    "eval_wp_direct",
    "eval_wp_series",
    "eval_eisenstein",
    "eval_delta",
    "eval_j",
    "eval_fricke",
    "check_S_transform",
    "cusp_value_g14",
    "eval_g14",
    "relative_residual",
]
