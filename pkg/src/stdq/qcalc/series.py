"""Polynomials and truncated power series in x with Scalar coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence

from ..scalar import is_zero, magnitude, to_json

DEFAULT_TRUNCATION = 64


def _trim(c: List) -> List:
    c = list(c)
    while c and is_zero(c[-1]):
        c.pop()
    return c


class Polynomial:
    """sum c_n x^n; trailing zero coefficients are dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def monomial(cls, n: int, c=1) -> "Polynomial":
        return cls([Fraction(0)] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int):
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def map(self, fn: Callable[[int, object], object]) -> "Polynomial":
        return Polynomial([fn(n, c) for n, c in enumerate(self.coeffs)])

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_abs(self) -> float:
        return max((magnitude(c) for c in self.coeffs), default=0.0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(i) + other.coeff(i) for i in range(m)])

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self - other).is_zero()

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self):
        return {"truncation": None, "coeffs": [to_json(c) for c in self.coeffs]}

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"


class PowerSeries:
    """Coefficients c_0..c_N of a series known only through order N."""

    __slots__ = ("coeffs", "truncation")

    def __init__(self, coeffs: Sequence, truncation: int = None):
        coeffs = list(coeffs)
        if truncation is None:
            truncation = len(coeffs) - 1
        if truncation < 0:
            raise ValueError("truncation order must be >= 0")
        coeffs = coeffs[: truncation + 1]
        coeffs += [Fraction(0)] * (truncation + 1 - len(coeffs))
        self.coeffs = coeffs
        self.truncation = truncation

    @classmethod
    def one(cls, N: int) -> "PowerSeries":
        return cls([Fraction(1)], N)

    def coeff(self, n: int):
        return self.coeffs[n] if 0 <= n <= self.truncation else Fraction(0)

    def _order(self, other: "PowerSeries") -> int:
        return min(self.truncation, other.truncation)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        N = self._order(other)
        return PowerSeries([self.coeffs[i] + other.coeffs[i] for i in range(N + 1)], N)

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.truncation)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * other for c in self.coeffs], self.truncation)
        N = self._order(other)
        out = []
        for n in range(N + 1):
            acc = Fraction(0)
            for k in range(n + 1):
                acc = acc + self.coeffs[k] * other.coeffs[n - k]
            out.append(acc)
        return PowerSeries(out, N)

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        """1/f through the same order; needs c_0 != 0."""
        c0 = self.coeffs[0]
        if is_zero(c0):
            raise ZeroDivisionError("power series reciprocal needs a nonzero constant term")
        out = [1 / c0]
        for n in range(1, self.truncation + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-acc / c0)
        return PowerSeries(out, self.truncation)

    def scale_x(self, a) -> "PowerSeries":
        """f(a x)."""
        out, p = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * p)
            p = p * a
        return PowerSeries(out, self.truncation)

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)

    def __call__(self, x):
        return self.to_polynomial()(x)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.truncation == other.truncation and all(
            is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs))

    def to_json(self):
        return {"truncation": self.truncation, "coeffs": [to_json(c) for c in self.coeffs]}

    def __repr__(self):
        return f"PowerSeries(N={self.truncation}, {[str(c) for c in self.coeffs[:6]]}...)"
