"""Energy levels of H = (a+ a + a a+)/2 and accidental degeneracies at phase-like q.

At q = exp(i theta), q^m + q^-m = 2 T_m(cos theta), so level differences
become integer combinations of Chebyshev polynomials in x = cos theta and
degeneracies are roots of polynomials on [-1, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from scipy.optimize import minimize_scalar

from .params import Phase, QParam
from .qcore import std_bracket


def _s(q: QParam, m: int):
    return q.pow(m) + q.pow(-m)


def energy(n: int, q: QParam):
    """E_n = [(n+1)(q^n + q^-n) + n(q^(n-1) + q^(1-n))] / 4."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(1, 4) * ((n + 1) * _s(q, n) + n * _s(q, n - 1))


def energy_from_brackets(n: int, q: QParam):
    return (std_bracket(n, q) + std_bracket(n + 1, q)) / 2


def energy_gap(n: int, q: QParam):
    """E_{n+1} - E_n = [(n+2)(q^(n+1) + q^-(n+1)) - n(q^(n-1) + q^(1-n))] / 4."""
    return Fraction(1, 4) * ((n + 2) * _s(q, n + 1) - n * _s(q, n - 1))


def energy_gap_factored(n: int, q: QParam):
    """The same gap as [2(q^(n+1) + q^-(n+1)) + n(q - 1/q)(q^n - q^-n)] / 4."""
    return Fraction(1, 4) * (2 * _s(q, n + 1)
                             + n * (q.pow(1) - q.pow(-1)) * (q.pow(n) - q.pow(-n)))


def chebyshev_T(n: int, x):
    """T_n(x) by the three-term recurrence (valid for any x, exact for rationals)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    t0, t1 = 1, x
    if n == 0:
        return t0 * (x ** 0)
    for _ in range(n - 1):
        t0, t1 = t1, 2 * x * t1 - t0
    return t1


def gap_chebyshev(n: int, x):
    """(n+1) T_{n+1}(x) - n x T_n(x); equals energy_gap at x = cos(theta)."""
    return (n + 1) * chebyshev_T(n + 1, x) - n * x * chebyshev_T(n, x)


@dataclass(frozen=True)
class DegeneracyQuery:
    n: int
    r: int

    def __post_init__(self):
        if self.n < 0 or self.r < 1:
            raise ValueError("degeneracy query needs n >= 0 and r >= 1")


def degeneracy_poly(query: DegeneracyQuery, x):
    """2(E_{n+r} - E_n) in x = cos(theta)."""
    n, r = query.n, query.r
    T = lambda m: chebyshev_T(m, x)
    val = (n + r + 1) * T(n + r) + (n + r) * T(n + r - 1) - (n + 1) * T(n)
    if n > 0:
        val = val - n * T(n - 1)
    return val


def degeneracy_poly_regrouped(query: DegeneracyQuery, x):
    """(n+1)(T_{n+r} - T_n) + n(T_{n+r-1} - T_{n-1}) + r(T_{n+r} + T_{n+r-1})."""
    n, r = query.n, query.r
    T = lambda m: chebyshev_T(m, x)
    val = (n + 1) * (T(n + r) - T(n)) + r * (T(n + r) + T(n + r - 1))
    if n > 0:
        val = val + n * (T(n + r - 1) - T(n - 1))
    return val


@dataclass
class DegeneracyRoot:
    theta: float
    x: float
    residual: float
    bracket: Tuple[float, float]


@dataclass
class DegeneracySolution:
    query: DegeneracyQuery
    roots: List[DegeneracyRoot] = field(default_factory=list)
    grazing: List[DegeneracyRoot] = field(default_factory=list)

    @property
    def thetas(self) -> List[float]:
        return sorted(r.theta for r in self.roots)

    @property
    def xs(self) -> List[float]:
        return sorted({r.x for r in self.roots})


def _level_residual(query: DegeneracyQuery, theta: float) -> float:
    q = Phase(theta)
    return abs(complex(energy(query.n + query.r, q) - energy(query.n, q)))


def _bisect(f, lo: float, hi: float, flo: float, tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _theta_pair(x: float) -> List[float]:
    x = max(-1.0, min(1.0, x))
    if x == -1.0:
        return [math.pi]          # theta = -pi names the same q = -1
    if x == 1.0:
        return [0.0]
    t = math.acos(x)
    return [t, -t]


def find_degeneracies(query: DegeneracyQuery, tol: float = 1e-12,
                      grid: Optional[int] = None) -> DegeneracySolution:
    """All x in [-1, 1] with E_{n+r} = E_n at q = exp(i arccos x).

    Sign scan over Chebyshev points (at least 8(n+r+1) of them), bisection
    down to double precision, and a local-minimum probe for tangential
    zeros that show no sign change.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    f = lambda x: degeneracy_poly(query, x)
    M = max(grid or 0, 8 * (query.n + query.r + 1))
    xs = sorted({math.cos(math.pi * j / M) for j in range(M + 1)})
    xs[0], xs[-1] = -1.0, 1.0
    vals = [f(x) for x in xs]
    sol = DegeneracySolution(query)
    found: List[Tuple[float, Tuple[float, float]]] = []
    for i, (x, v) in enumerate(zip(xs, vals)):
        if v == 0:
            found.append((x, (x, x)))
        elif i + 1 < len(xs) and vals[i + 1] != 0 and (v < 0) != (vals[i + 1] < 0):
            root = _bisect(f, x, xs[i + 1], v, min(tol, 1e-15))
            found.append((root, (x, xs[i + 1])))
    for x, br in found:
        for th in _theta_pair(x):
            sol.roots.append(DegeneracyRoot(th, x, _level_residual(query, th), br))
    # tangential zeros: |p| has an interior local minimum with no sign change
    for i in range(1, len(xs) - 1):
        a, b, c = vals[i - 1], vals[i], vals[i + 1]
        if b == 0 or (a < 0) != (b < 0) or (b < 0) != (c < 0):
            continue
        if abs(b) <= abs(a) and abs(b) <= abs(c):
            res = minimize_scalar(lambda t: abs(f(t)), bounds=(xs[i - 1], xs[i + 1]),
                                  method="bounded", options={"xatol": 1e-14})
            if abs(res.fun) <= 10 * tol:
                for th in _theta_pair(float(res.x)):
                    sol.grazing.append(DegeneracyRoot(th, float(res.x), _level_residual(query, th),
                                                      (xs[i - 1], xs[i + 1])))
    sol.roots.sort(key=lambda r: r.theta)
    return sol
