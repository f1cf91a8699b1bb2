"""Coherent states a|z> = z|z> and the weight expansion for their completeness.

|z> = E(|z|^2)^(-1/2) sum_n z^n / sqrt({n}!) |n>.  Completeness asks for
f(x) = E(-x) g(x) with int_0^inf f(x) x^n Dx = {n}!; g = sum g_k x^k is
built from the coefficient recursion in :func:`weight_g_coeffs`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .params import Phase, QParam, Real
from .qcalc.calculus import ZeroBracketError, qexp_coeffs, moment_closed_form
from .qcalc.improper import QuadConfig, std_moment_integral
from .qcore import std_bracket, std_factorial


def _num(v) -> complex:
    return complex(v)


@dataclass
class CoherentState:
    z: complex
    q: QParam
    truncation: int
    coeffs: np.ndarray
    norm_const: float

    def overlap(self) -> float:
        """<z|z> over the truncated basis."""
        return float(np.sum(np.abs(self.coeffs) ** 2))


def build_coherent(z: complex, q: QParam, N: int = 64, allow_phase: bool = False) -> CoherentState:
    """c_{n+1} = z c_n / sqrt({n+1}), c_0 = E_N(|z|^2)^(-1/2) with E truncated at order N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if isinstance(q, Phase) and not allow_phase:
        raise ValueError("coherent states at phase-like q need allow_phase=True")
    z = complex(z)
    brackets = [_num(std_bracket(n, q)) for n in range(N + 1)]
    for m in range(1, N + 1):
        if abs(brackets[m]) < 1e-13:
            raise ZeroBracketError(m, q)
    c = np.zeros(N + 1, dtype=complex)
    c[0] = 1.0
    for n in range(N):
        c[n + 1] = z * c[n] / cmath.sqrt(brackets[n + 1])
    e_series = qexp_coeffs(N, q, allow_phase=allow_phase).coeffs
    x = abs(z) ** 2
    E = sum(_num(e_series[k]) * x**k for k in range(N + 1))
    c0 = 1 / cmath.sqrt(E)
    c *= c0
    return CoherentState(z, q, N, c, float(abs(c0)))


def eigenstate_residual(state: CoherentState) -> float:
    """|| (a - z)|z> || over levels 0..N-1 (the top level lacks its partner)."""
    N = state.truncation
    c = state.coeffs
    sq = np.array([cmath.sqrt(_num(std_bracket(n + 1, state.q))) for n in range(N)])
    diff = sq * c[1:] - state.z * c[:-1]
    return float(np.linalg.norm(diff))


def phi(j: int, q: QParam):
    """{j}/j = (q^(j-1) + q^(1-j))/2."""
    if j < 1:
        raise ValueError("phi(j) needs j >= 1")
    return (q.pow(j - 1) + q.pow(1 - j)) / 2


def _phi_fact(cache: List, i: int):
    out = Fraction(1)
    for j in range(1, i + 1):
        out = out * cache[j]
    return out


def _phi_prod(cache: List, lo: int, hi: int):
    out = Fraction(1)
    for j in range(lo, hi + 1):
        out = out * cache[j]
    return out


@dataclass
class WeightExpansion:
    q: QParam
    g: List
    phi_cache: List = field(default_factory=list)

    @property
    def K(self) -> int:
        return len(self.g) - 1

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.g):
            acc = acc * x + c
        return acc


def weight_g_coeffs(K: int, q: QParam) -> WeightExpansion:
    """g_0 = 1 and for k >= 1

    g_k = (-1)^k / (k! phi(k+2)!) * [phi(2) - sum_{i<k} g_i (-1)^i k!/(k-i)! prod_{j=k-i+1}^{k+2} phi(j)]

    with phi(i)! = phi(1) ... phi(i).
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    cache = [None] + [phi(j, q) for j in range(1, K + 3)]
    g = [Fraction(1)]
    for k in range(1, K + 1):
        acc = cache[2]
        for i in range(k):
            coef = (-1) ** i * Fraction(math.factorial(k), math.factorial(k - i))
            acc = acc - g[i] * coef * _phi_prod(cache, k - i + 1, k + 2)
        g.append((-1) ** k * acc / (math.factorial(k) * _phi_fact(cache, k + 2)))
    return WeightExpansion(q, g, cache)


def g_closed_forms(q: QParam):
    """The two lowest coefficients written out in closed form."""
    p2, p3, p4 = phi(2, q), phi(3, q), phi(4, q)
    f3 = p2 * p3
    f4 = f3 * p4
    g1 = p2 * (p3 - 1) / f3
    g2 = (p2 - p3 * p4 + 2 * p2 * (p3 - 1) * p4) / (2 * f4)
    return g1, g2


def moment_via_phi(m: int, q: QParam):
    """int_0^inf Dx E(-x) x^m = m! phi(m+2)! / phi(2)."""
    cache = [None] + [phi(j, q) for j in range(1, m + 3)]
    return math.factorial(m) * _phi_fact(cache, m + 2) / cache[2]


@dataclass
class CompletenessResult:
    n: int
    K: int
    residual: float                 # quadrature-based relative residual
    moment_residual: float          # same sum with closed-form moments
    integral: float
    target: float
    quadrature_error: float


@lru_cache(maxsize=256)
def _moment(m: int, q: Real, quad: QuadConfig):
    return std_moment_integral(m, q, quad=quad)


def completeness_residual(n: int, q: QParam, K: int = 12, quad: Optional[QuadConfig] = None) -> CompletenessResult:
    """|int_0^inf Dx E(-x) g_K(x) x^n - {n}!| / {n}!.

    The integral is split by linearity into sum_k g_k int Dx E(-x) x^(n+k);
    each moment comes from the half-line quadrature oracle.  The same sum
    with closed-form moments is reported alongside.
    """
    if not isinstance(q, Real) or q.q == 1:
        raise ValueError("completeness check needs a real q != 1")
    quad = quad or QuadConfig()
    g = [float(v) for v in weight_g_coeffs(K, q).g]
    target = float(std_factorial(n, q))
    total, err, exact_total = 0.0, 0.0, 0.0
    for k, gk in enumerate(g):
        r = _moment(n + k, q, quad)
        total += gk * r.value
        err += abs(gk) * r.error_estimate
        exact_total += gk * float(moment_closed_form(n + k, 1, q))
    return CompletenessResult(n, K, abs(total - target) / target, abs(exact_total - target) / target,
                              total, target, err / target)


@dataclass
class WeightValue:
    value: float
    x: float
    N: int
    K: int
    exp_product: float


def weight_function_eval(x: float, q: QParam, N: int = 64, K: int = 12) -> WeightValue:
    """mu(x) = E(x) E(-x) g(x) with E truncated at order N and g at order K."""
    if not isinstance(q, Real):
        raise ValueError("weight function needs a positive real q")
    e = [float(c) for c in qexp_coeffs(N, q).coeffs]
    Ep = sum(c * x**k for k, c in enumerate(e))
    Em = sum(c * (-x) ** k for k, c in enumerate(e))
    g = weight_g_coeffs(K, q)
    gx = sum(float(c) * x**k for k, c in enumerate(g.g))
    return WeightValue(Ep * Em * gx, x, N, K, Ep * Em)
