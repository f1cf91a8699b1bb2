"""Numerical oracle for the deformed integral over the half line.

The deformed integral is the operator series
    int Dx f = sum_n (-1)^n int [f(q^(2n+1) x) + f(q^-(2n+1) x)] dx.
Over [0, inf) each term rescales to (q^-(2n+1) + q^(2n+1)) * I with
I = int_0^inf f(x) dx, so the value is I times the Euler sum of the
dilation series (which is 2/(q + 1/q)).

For f built from E(-x) the ordinary integral I is itself delicate: for
q != 1, E(-x) is entire of order zero, dips to ~1e-6 and then oscillates
with growing amplitude between geometrically spaced zeros.  I is taken as
the Levin-accelerated sum of the integrals between consecutive zeros
("lumps").  Lumps are integrated exactly from the polynomial
antiderivative in high precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import mpmath

from ..params import QParam, Real


class NonConvergentIntegralError(ArithmeticError):
    """The lump or dilation series does not behave like a summable alternating series."""


@dataclass(frozen=True)
class QuadConfig:
    dps: int = 100           # working precision for lumps and acceleration
    guard_digits: int = 30   # digits kept in reserve after cancellation
    x_cap: float = 1e6       # furthest abscissa scanned for zeros
    max_lumps: int = 52      # zeros of the integrand to use (also capped by precision)
    min_lumps: int = 8
    exp_terms: int = 600     # terms of the E(-x) series before range truncation
    scan_step: float = 0.25  # initial grid for sign changes (grows with x)


@dataclass
class ImproperResult:
    value: float
    plain_integral: float
    dilation_sum: float
    error_estimate: float
    lumps_used: int
    lump_values: List[float] = field(default_factory=list)


def euler_transform(terms: Sequence, dps: int = 60):
    """Euler (E,1) sum of sum_n (-1)^n a_n given a_0, a_1, ...

    Returns (value, last_term) where last_term is the size of the final
    contribution.  Differences are formed in high precision since the
    binomial sums cancel heavily.
    """
    with mpmath.workdps(dps):
        a = [_mpf(t) for t in terms]
        total = mpmath.mpf(0)
        last = mpmath.mpf(0)
        diffs = list(a)
        for k in range(len(a)):
            last = (-1) ** k * diffs[0] / mpmath.mpf(2) ** (k + 1)
            total += last
            diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        return total, abs(last)


def dilation_sum(q: QParam, terms: Optional[int] = None, dps: int = 60):
    """Euler sum of sum_n (-1)^n (q^(2n+1) + q^-(2n+1)); equals 2/(q + 1/q).

    The transformed series converges like r^k with r = |1 - q^(+-2)|/2, so
    first-order Euler summation needs q^2 < 3.  With ``terms=None`` the
    length is chosen from r and the working precision is raised to absorb
    the growth of the raw terms.
    """
    qv = _real_value(q)
    qf = float(qv)
    rate = max(abs(1 - qf * qf), abs(1 - 1 / (qf * qf))) / 2
    if terms is None:
        if rate >= 1:
            raise NonConvergentIntegralError(f"dilation series for q={qv} is outside the Euler summability disc")
        terms = min(4000, max(60, int(math.ceil(-25 / math.log10(rate))) if rate > 0 else 60))
    dps = max(dps, int(terms * abs(math.log10(qf)) * 2) + 40)
    with mpmath.workdps(dps):
        qm = _mpf(qv)
        a = [qm ** (2 * n + 1) + qm ** (-(2 * n + 1)) for n in range(terms)]
        val, last = euler_transform(a, dps)
        if not abs(last) < mpmath.mpf(10) ** (-15) * max(1, abs(val)):
            raise NonConvergentIntegralError(
                f"dilation series for q={qv} not Euler-summable with {terms} terms")
        return val, last


def _mpf(x):
    """mpf from int, float, Fraction or mpf at the current working precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _real_value(q: QParam):
    if not isinstance(q, Real):
        raise ValueError("the half-line integral needs a positive real q")
    if q.q == 1:
        raise ValueError("q = 1 is the classical integral; the dilation series needs q != 1")
    return q.q if isinstance(q.q, float) else _mpf(q.q)


class SeriesIntegrand:
    """x^n * sum_k c_k x^k with mpmath coefficients; integrated exactly per interval."""

    def __init__(self, coeffs: Sequence, power: int = 0, dps: int = 100):
        self.dps = dps
        self.power = power
        with mpmath.workdps(dps):
            self.coeffs = [_mpf(c) for c in coeffs]
            self._rev = list(reversed(self.coeffs))
            # antiderivative of x^(n+k) is x^(n+k+1)/(n+k+1)
            anti = [c / (k + power + 1) for k, c in enumerate(self.coeffs)]
            self._anti = list(reversed(anti))

    def __call__(self, x):
        with mpmath.workdps(self.dps):
            x = mpmath.mpf(x)
            return mpmath.polyval(self._rev, x) * x ** self.power

    def integral(self, a, b):
        with mpmath.workdps(self.dps):
            F = lambda x: mpmath.polyval(self._anti, x) * x ** (self.power + 1)
            return F(mpmath.mpf(b)) - F(mpmath.mpf(a))

    def _log10_coeffs(self) -> List[float]:
        return [float(mpmath.log10(abs(c))) if c else -math.inf for c in self.coeffs]

    def peak_digits(self, x) -> float:
        """log10 of the largest term |c_k| x^(n+k): the cancellation the sum has to absorb."""
        lx = math.log10(float(x))
        return max(lc + (k + self.power) * lx for k, lc in enumerate(self._log10_coeffs()))

    def cancellation_digits(self, x) -> float:
        """Digits lost at x: largest term against the value of the sum."""
        v = abs(self(x))
        if v == 0:
            return math.inf
        return self.peak_digits(x) - float(mpmath.log10(v))

    def truncated(self, x_cap: float, dps: int) -> "SeriesIntegrand":
        """Drop trailing terms that stay below 10^-dps on [0, x_cap]."""
        lx = math.log10(x_cap)
        lc = self._log10_coeffs()
        keep = len(lc)
        while keep > 1 and lc[keep - 1] + (keep - 1 + self.power) * lx < -dps:
            keep -= 1
        if keep == len(lc):
            raise NonConvergentIntegralError("series too short for the requested range")
        return SeriesIntegrand(self.coeffs[:keep], self.power, self.dps)


def qexp_neg_coeffs(q: QParam, a=1, dps: int = 80, terms: Optional[int] = None) -> List:
    """Coefficients (-a)^k/{k}! of E(-a x) in mpmath precision."""
    qv = _real_value(q)
    with mpmath.workdps(dps):
        qm = mpmath.mpf(qv)
        if terms is None:
            terms = 600
        out, fact = [mpmath.mpf(1)], mpmath.mpf(1)
        for k in range(1, terms + 1):
            fact *= mpmath.mpf(k) / 2 * (qm ** (k - 1) + qm ** (1 - k))
            out.append((-_mpf(a)) ** k / fact)
        return out


def _bisect(f: Callable, lo, hi, flo, rel=mpmath.mpf(10) ** -16):
    # a zero location error only moves the partial sums at second order
    while hi - lo > rel * hi:
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return mid
        if mpmath.sign(fm) == mpmath.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def sign_changes(f: Callable, start, stop, step, count: int, growth: int = 50,
                 budget: Optional[float] = None) -> List:
    """First ``count`` sign changes of f on (start, stop); the scan step grows like x/growth.

    With ``budget`` set (and f a SeriesIntegrand), scanning also stops once
    the digits lost to cancellation between zeros exceed the budget.
    """
    roots = []
    x = mpmath.mpf(start)
    fx = f(x)
    h = mpmath.mpf(step)
    while len(roots) < count and x < stop:
        y = x + h
        fy = f(y)
        if fx == 0:
            roots.append(x)
        elif mpmath.sign(fx) != mpmath.sign(fy):
            z = _bisect(f, x, y, fx)
            if budget is not None and roots:
                mid = mpmath.sqrt(roots[-1] * z)
                if f.cancellation_digits(mid) > budget:
                    break
            roots.append(z)
        x, fx = y, fy
        h = max(mpmath.mpf(step), x / growth)
    return roots


def accelerate(partial: Sequence, min_terms: int):
    """Sidi t-transform of a partial-sum sequence; picks the length where estimates settle.

    Returns (value, gap) with gap the change from the previous length.
    """
    estimates = []
    for m in range(min_terms, len(partial) + 1):
        L = mpmath.levin(method="sidi", variant="t")
        val, _ = L.update_psum(partial[:m])
        estimates.append(val)
    if len(estimates) < 2:
        raise NonConvergentIntegralError("too few lumps to judge convergence")
    best, best_gap = estimates[-1], abs(estimates[-1] - estimates[-2])
    # prefer the longest run; fall back to the most stable pair if the tail drifts
    for i in range(len(estimates) - 1, 0, -1):
        gap = abs(estimates[i] - estimates[i - 1])
        if gap < best_gap:
            best, best_gap = estimates[i], gap
    return best, best_gap


def lump_integral(f: SeriesIntegrand, quad: QuadConfig, zeros: Optional[Sequence] = None):
    """Accelerated int_0^inf f over lumps between sign changes.

    ``zeros`` may be supplied when they are known (x^n E(-x) shares the
    zeros of E(-x)).  Returns (value, error_estimate, lump values).
    """
    with mpmath.workdps(quad.dps):
        f = f.truncated(quad.x_cap, quad.dps)
        if zeros is None:
            zeros = sign_changes(f, mpmath.mpf(quad.scan_step), quad.x_cap, quad.scan_step,
                                 quad.max_lumps, budget=quad.dps - quad.guard_digits)
        zeros = list(zeros)[: quad.max_lumps]
        if len(zeros) < quad.min_lumps + 1:
            raise NonConvergentIntegralError(
                f"only {len(zeros)} sign changes found; integrand has no usable lump structure")
        edges = [mpmath.mpf(0)] + zeros
        lumps = [f.integral(edges[i], edges[i + 1]) for i in range(len(edges) - 1)]
        for i in range(2, len(lumps)):
            if mpmath.sign(lumps[i]) == mpmath.sign(lumps[i - 1]):
                raise NonConvergentIntegralError(f"lumps {i - 1} and {i} do not alternate")
        partial, s = [], mpmath.mpf(0)
        for v in lumps:
            s += v
            partial.append(s)
        best, gap = accelerate(partial, quad.min_lumps)
        return best, gap, lumps


def std_improper_integral(f: SeriesIntegrand, q: QParam, terms: Optional[int] = None,
                          quad: Optional[QuadConfig] = None,
                          zeros: Optional[Sequence] = None) -> ImproperResult:
    """int_0^inf Dx f(x) = [Euler sum of the dilation series] * int_0^inf f(x) dx.

    ``terms`` is the length of the Euler-transformed dilation series.
    """
    quad = quad or QuadConfig()
    dil, dil_err = dilation_sum(q, terms, quad.dps)
    plain, err, lumps = lump_integral(f, quad, zeros)
    with mpmath.workdps(quad.dps):
        value = dil * plain
        return ImproperResult(float(value), float(plain), float(dil),
                              float(abs(dil) * err + abs(plain) * dil_err),
                              len(lumps), [float(v) for v in lumps])


def exp_integrand(q: QParam, a=1, quad: Optional[QuadConfig] = None) -> SeriesIntegrand:
    quad = quad or QuadConfig()
    return SeriesIntegrand(qexp_neg_coeffs(q, a, quad.dps, quad.exp_terms), 0, quad.dps)


@lru_cache(maxsize=32)
def exp_zeros(q: QParam, a=1, quad: Optional[QuadConfig] = None) -> Tuple:
    """Positive zeros of E(-a x), shared by every x^n E(-a x)."""
    quad = quad or QuadConfig()
    f = exp_integrand(q, a, quad).truncated(quad.x_cap, quad.dps)
    with mpmath.workdps(quad.dps):
        return tuple(sign_changes(f, mpmath.mpf(quad.scan_step), quad.x_cap, quad.scan_step,
                                  quad.max_lumps, budget=quad.dps - quad.guard_digits))


def moment_integrand(n: int, q: QParam, a=1, quad: Optional[QuadConfig] = None,
                     weight: Optional[Sequence] = None) -> SeriesIntegrand:
    """E(-a x) x^n, optionally times a polynomial weight sum_k w_k x^k."""
    quad = quad or QuadConfig()
    c = qexp_neg_coeffs(q, a, quad.dps, quad.exp_terms)
    if weight is not None:
        with mpmath.workdps(quad.dps):
            w = [_mpf(v) for v in weight]
            prod = [mpmath.mpf(0)] * (len(c) + len(w) - 1)
            for i, ci in enumerate(c):
                for j, wj in enumerate(w):
                    prod[i + j] += ci * wj
            c = prod
    return SeriesIntegrand(c, n, quad.dps)


def std_moment_integral(n: int, q: QParam, a=1, quad: Optional[QuadConfig] = None) -> ImproperResult:
    """Numerical int_0^inf Dx E(-a x) x^n."""
    quad = quad or QuadConfig()
    return std_improper_integral(moment_integrand(n, q, a, quad), q, quad=quad,
                                 zeros=exp_zeros(q, a, quad))
