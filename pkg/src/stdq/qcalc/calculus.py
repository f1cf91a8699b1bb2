"""The symmetric (q <-> 1/q) deformed derivative, integral and exponential.

D_x = (T_q + T_{1/q})/2 * d/dx, with T_q f(x) = f(qx).  On monomials
D_x x^n = {n} x^(n-1); everything here acts coefficient-wise on
:class:`Polynomial` / :class:`PowerSeries`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Union

from ..params import Phase, QParam, Real
from ..qcore import std_bracket, std_factorial
from ..scalar import DEFAULT_TOL, close, is_exact, magnitude
from .series import Polynomial, PowerSeries

Series = Union[Polynomial, PowerSeries]


class ZeroBracketError(ZeroDivisionError):
    """A bracket {m} vanishes (only possible at phase-like q)."""

    def __init__(self, level: int, q: QParam):
        self.level = level
        super().__init__(f"{{{level}}} vanishes at {q}; division by a zero bracket")


class PhaseNotAllowedError(ValueError):
    pass


def _vanishes(b, q: QParam) -> bool:
    if is_exact(b):
        return b == 0
    return isinstance(q, Phase) and abs(b) < 1e-13


def _like(f: Series, coeffs) -> Series:
    if isinstance(f, PowerSeries):
        return PowerSeries(coeffs, f.truncation)
    return Polynomial(coeffs)


# -- derivative and integral -----------------------------------------------

def std_derivative(f: Series, q: QParam) -> Series:
    """c_n x^n -> {n} c_n x^(n-1).  For a series the top order becomes unknown (zero-filled)."""
    out = [std_bracket(n, q) * c for n, c in enumerate(f.coeffs)][1:]
    return _like(f, out)


def std_integral(f: Polynomial, q: QParam) -> Polynomial:
    """c_n x^n -> c_n x^(n+1)/{n+1}, zero integration constant."""
    out = [Fraction(0)]
    for n, c in enumerate(f.coeffs):
        b = std_bracket(n + 1, q)
        if _vanishes(b, q):
            if magnitude(c) == 0:
                out.append(Fraction(0))
                continue
            raise ZeroBracketError(n + 1, q)
        out.append(c / b)
    return Polynomial(out)


def std_derivative_power(f: Series, k: int, q: QParam) -> Series:
    for _ in range(k):
        f = std_derivative(f, q)
    return f


def dilate(f: Series, q: QParam, sign: int = 1) -> Series:
    """T_q f (sign=+1) or T_{1/q} f (sign=-1)."""
    return _like(f, [c * q.pow(sign * n) for n, c in enumerate(f.coeffs)])


def ordinary_derivative(f: Series) -> Series:
    return _like(f, [n * c for n, c in enumerate(f.coeffs)][1:])


def leibnitz_residual(f: Polynomial, g: Polynomial, q: QParam) -> Polynomial:
    """D(fg) minus the four-term product rule; zero polynomial when the rule holds."""
    D = lambda h: std_derivative(h, q)
    T = lambda h: dilate(h, q, 1)
    Tinv = lambda h: dilate(h, q, -1)
    dT = lambda h: T(h) - Tinv(h)
    rhs = (D(f) * Tinv(g) + T(f) * D(g)
           - dT(f) * Tinv(ordinary_derivative(g)) * Fraction(1, 2)
           + T(ordinary_derivative(f)) * dT(g) * Fraction(1, 2))
    return D(f * g) - rhs


# -- logarithm-extended path -----------------------------------------------

@dataclass(frozen=True)
class LogLaurentX:
    """sum_e c_e x^e + c_log * ln x, with integer (possibly negative) e."""

    terms: Dict[int, object]
    log_coeff: object = Fraction(0)

    def derivative(self, q: QParam) -> "LogLaurentX":
        out: Dict[int, object] = {}
        for e, c in self.terms.items():
            if e != 0:
                out[e - 1] = out.get(e - 1, 0) + std_bracket(e, q) * c
        if magnitude(self.log_coeff):
            # D ln x = (T_q + T_q^-1)(1/x)/2 = (q + 1/q)/(2x)
            out[-1] = out.get(-1, 0) + self.log_coeff * (q.pow(1) + q.pow(-1)) / 2
        return LogLaurentX({e: c for e, c in out.items() if magnitude(c)})

    def integral(self, q: QParam) -> "LogLaurentX":
        if magnitude(self.log_coeff):
            raise NotImplementedError("integrating ln x is outside the log-extended path")
        out: Dict[int, object] = {}
        log_coeff = Fraction(0)
        for e, c in self.terms.items():
            if e == -1:
                log_coeff = 2 * c / (q.pow(1) + q.pow(-1))
            else:
                out[e + 1] = c / std_bracket(e + 1, q)
        return LogLaurentX(out, log_coeff)

    def equals(self, other: "LogLaurentX", tol: float = DEFAULT_TOL) -> bool:
        keys = set(self.terms) | set(other.terms)
        ok = all(close(self.terms.get(e, Fraction(0)), other.terms.get(e, Fraction(0)), tol) for e in keys)
        return ok and close(self.log_coeff, other.log_coeff, tol)


def log_identities_check(q: QParam, tol: float = DEFAULT_TOL) -> bool:
    """D(2/(q+1/q) ln x) = 1/x and the matching integral of 1/x."""
    scale = 2 / (q.pow(1) + q.pow(-1))
    inv_x = LogLaurentX({-1: Fraction(1)})
    log_term = LogLaurentX({}, scale)
    return log_term.derivative(q).equals(inv_x, tol) and inv_x.integral(q).equals(log_term, tol)


# -- the deformed exponential ----------------------------------------------

def _check_phase(q: QParam, allow_phase: bool):
    if isinstance(q, Phase) and not allow_phase:
        raise PhaseNotAllowedError("the exponential at phase-like q needs allow_phase=True")


def qexp_coeffs(N: int, q: QParam, allow_phase: bool = False) -> PowerSeries:
    """1/{n}! for n = 0..N."""
    if N < 0:
        raise ValueError("N must be >= 0")
    _check_phase(q, allow_phase)
    out, fact = [Fraction(1)], Fraction(1)
    for n in range(1, N + 1):
        b = std_bracket(n, q)
        if _vanishes(b, q):
            raise ZeroBracketError(n, q)
        fact = fact * b
        out.append(1 / fact)
    return PowerSeries(out, N)


def qexp_coeffs_product(N: int, q: QParam, allow_phase: bool = False) -> PowerSeries:
    """2^n q^(n(n-1)/2) / (n! prod_{k<n} (1 + q^(2k)))."""
    _check_phase(q, allow_phase)
    out = []
    for n in range(N + 1):
        den = Fraction(math.factorial(n))
        for k in range(n):
            den = den * (1 + q.pow(2 * k))
        out.append(2**n * q.pow(n * (n - 1) // 2) / den)
    return PowerSeries(out, N)


def qexp_inverse_coeffs(N: int, q: QParam, allow_phase: bool = False) -> PowerSeries:
    """b_0 = 1, b_n = -1/{n}! - sum_{j=1}^{n-1} b_j/{n-j}!."""
    e = qexp_coeffs(N, q, allow_phase).coeffs
    b = [Fraction(1)]
    for n in range(1, N + 1):
        acc = -e[n]
        for j in range(1, n):
            acc = acc - b[j] * e[n - j]
        b.append(acc)
    return PowerSeries(b, N)


@dataclass
class QexpValue:
    value: object
    tail: float
    order: int
    converged: bool


def qexp_eval(x, q: QParam, N: int = 64) -> QexpValue:
    """Partial sum through x^N with a ratio-test estimate of the neglected tail."""
    if not isinstance(q, Real):
        raise ValueError("qexp_eval needs a positive real q")
    c = qexp_coeffs(N + 2, q).coeffs
    value = Polynomial(c[: N + 1])(x)
    t1 = magnitude(c[N + 1] * x ** (N + 1))
    t2 = magnitude(c[N + 2] * x ** (N + 2))
    if t1 == 0:
        return QexpValue(value, 0.0, N, True)
    ratio = t2 / t1
    if ratio >= 1:
        return QexpValue(value, math.inf, N, False)
    return QexpValue(value, t1 / (1 - ratio), N, True)


def qexp_eigen_residual(a, N: int, q: QParam) -> PowerSeries:
    """D E(ax) - a E(ax) on the order-N truncation; only order N survives."""
    if isinstance(q, Phase):
        raise ValueError("qexp_eigen_residual needs a real or symbolic q")
    E = qexp_coeffs(N, q).scale_x(a)
    return std_derivative(E, q) - E * a


# -- moments and Pochhammer forms ------------------------------------------

def moment_closed_form(n: int, a, q: QParam):
    """Integral over [0, inf) of E(-a x) x^n: (-1)^n a^-(n+1) prod_{k=1}^n {-k}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    a = Fraction(a) if isinstance(a, int) else a
    if a <= 0:
        raise ValueError("a must be positive")
    prod = Fraction(1)
    for k in range(1, n + 1):
        prod = prod * std_bracket(-k, q)
    return (-1) ** n * prod / a ** (n + 1)


def moment_factorial_form(n: int, q: QParam):
    """The a = 1 moment as 2{n+2}!/({2}(n+1)(n+2))."""
    return 2 * std_factorial(n + 2, q) / (std_bracket(2, q) * (n + 1) * (n + 2))


def pochhammer(a, Q, n: int):
    """(a; Q)_n = prod_{k<n} (1 - a Q^k)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out, Qk = Fraction(1), Fraction(1)
    for _ in range(n):
        out = out * (1 - a * Qk)
        Qk = Qk * Q
    return out


def qexp_coeffs_pochhammer(N: int, q: QParam) -> PowerSeries:
    """q^(n(n-1)/2) 2^n / (n! (-1; q^2)_n)."""
    q2 = q.pow(2)
    return PowerSeries([q.pow(n * (n - 1) // 2) * 2**n
                        / (math.factorial(n) * pochhammer(-1, q2, n)) for n in range(N + 1)], N)


def bibasic_coeff_check(N: int, q: QParam, tol: float = DEFAULT_TOL) -> bool:
    lhs = qexp_coeffs_pochhammer(N, q).coeffs
    rhs = qexp_coeffs(N, q, allow_phase=True).coeffs
    return all(close(x, y, tol) for x, y in zip(lhs, rhs))
