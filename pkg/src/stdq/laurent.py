"""Exact arithmetic in one indeterminate ``q``.

``Laurent`` holds a finite sum ``sum c_e q**e`` with rational coefficients and
integer (possibly negative) exponents.  ``RatFunc`` is a quotient of two such
sums, kept in lowest terms, and is what division produces whenever the result
is not itself a Laurent polynomial.

Both types mix freely with ``int`` and ``Fraction``; mixing with floats is a
``TypeError`` on purpose, since nothing in the exact backend may round.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Callable, Dict, Iterable, List, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.densearith import dup_exquo
from sympy.polys.euclidtools import dup_gcd

Exact = Union[int, Fraction, "Laurent", "RatFunc"]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"exact arithmetic does not accept {type(c).__name__}")


class Laurent:
    """Immutable Laurent polynomial over the rationals."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[Dict[int, object], Iterable[Tuple[int, object]], None] = None):
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        c: Dict[int, Fraction] = {}
        for e, v in items:
            v = _frac(v)
            if v:
                e = int(e)
                s = c.get(e, 0) + v
                if s:
                    c[e] = s
                else:
                    c.pop(e, None)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: Dict[int, Fraction]) -> "Laurent":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "Laurent":
        return cls({exp: coeff})

    @classmethod
    def const(cls, value) -> "Laurent":
        return cls({0: value})

    @classmethod
    def gen(cls) -> "Laurent":
        return cls({1: 1})

    # -- inspection -----------------------------------------------------
    def items(self) -> List[Tuple[int, Fraction]]:
        return sorted(self._c.items())

    def coeff(self, exp: int) -> Fraction:
        return self._c.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_constant(self) -> bool:
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    @property
    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    @property
    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    def norm1(self) -> Fraction:
        return sum((abs(v) for v in self._c.values()), Fraction(0))

    def invert(self) -> "Laurent":
        """Substitute q -> 1/q."""
        return Laurent._raw({-e: v for e, v in self._c.items()})

    def evaluate(self, x):
        """Value at a number ``x`` (float, complex or Fraction)."""
        return sum((v * x**e for e, v in self._c.items()), 0 * x)

    def evaluate_with(self, power: Callable[[int], object]):
        """Value given a callable returning q**e; used for phase-like q."""
        total = 0
        for e, v in self._c.items():
            total = total + v * power(e)
        return total

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        if isinstance(other, RatFunc):
            return other + self
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return Laurent._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._raw({e: -v for e, v in self._c.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return (-other) + self
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return other * self
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return Laurent._raw({})
            return Laurent._raw({e: v * other for e, v in self._c.items()})
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        c: Dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return Laurent._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division by zero")
            inv = 1 / Fraction(other)
            return Laurent._raw({e: v * inv for e, v in self._c.items()})
        if isinstance(other, RatFunc):
            return RatFunc.make(self * other.den, other.num)
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc.make(self, other)

    def __rtruediv__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc.make(other, self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("Laurent powers must be integers")
        if k < 0:
            if self.is_monomial():
                (e, v), = self._c.items()
                return Laurent._raw({e * k: v**k})
            return RatFunc.make(Laurent.const(1), self ** (-k))
        result = Laurent.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return other == self
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            if set(self._c) <= {0}:
                # constants must hash like the equal Fraction
                self._hash = hash(self._c.get(0, Fraction(0)))
            else:
                self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"Laurent({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _as_laurent(x):
    if isinstance(x, Laurent):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Laurent.const(x)
    return NotImplemented


# -- dense univariate helpers (ascending coefficient lists over Q) ---------

def _to_dense(p: Laurent) -> Tuple[List[Fraction], int]:
    lo = p.min_exp
    dense = [Fraction(0)] * (p.max_exp - lo + 1)
    for e, v in p._c.items():
        dense[e - lo] = v
    return dense, lo


def _from_dense(d: List[Fraction], shift: int) -> Laurent:
    return Laurent._raw({i + shift: v for i, v in enumerate(d) if v})


def _trim(a: List[Fraction]) -> List[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _scale_zz(a: List[Fraction]) -> Tuple[List, int]:
    """(descending integer coefficients of den*a, den)."""
    den = 1
    for v in a:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [ZZ(v.numerator * (den // v.denominator)) for v in reversed(a)], den


def _primitive_zz(a: List[Fraction]) -> List:
    return _scale_zz(a)[0]


def _exact_quo(a: List[Fraction], g_zz: List) -> List[Fraction]:
    """a / g where g (descending, integer) is known to divide a over Q."""
    a_zz, den = _scale_zz(a)
    q = dup_exquo(a_zz, g_zz, ZZ)
    return [Fraction(int(v), den) for v in reversed(q)]


def _gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """Monic gcd over Q, computed on primitive integer images (sympy's heuristic gcd)."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a or not b:
        g = a or b
        if not g:
            return [Fraction(1)]
        return [v / g[-1] for v in g]
    g = _gcd_zz(a, b)
    lead = Fraction(int(g[0]))
    return [Fraction(int(v)) / lead for v in reversed(g)]


def _gcd_zz(a: List[Fraction], b: List[Fraction]) -> List:
    return dup_gcd(_primitive_zz(a), _primitive_zz(b), ZZ)


class RatFunc:
    """Quotient of Laurent polynomials in lowest terms.

    The denominator is stored with lowest exponent 0 and leading (highest)
    coefficient 1, so equal functions have equal representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Laurent, den: Laurent):
        # use RatFunc.make; this constructor trusts its arguments
        self.num = num
        self.den = den

    @staticmethod
    def make(num, den) -> Exact:
        num = _as_laurent(num)
        den = _as_laurent(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            return Laurent._raw({})
        if den.is_monomial():
            (e, v), = den._c.items()
            return Laurent._raw({k - e: c / v for k, c in num._c.items()})
        dn, ln = _to_dense(num)
        dd, ld = _to_dense(den)
        g = _gcd_zz(dn, dd)
        if len(g) > 1:
            dn = _exact_quo(dn, g)
            dd = _exact_quo(dd, g)
        lead = dd[-1]
        if len(dd) == 1:
            return _from_dense([v / lead for v in dn], ln - ld)
        return RatFunc(_from_dense([v / lead for v in dn], ln - ld),
                       _from_dense([v / lead for v in dd], 0))

    def is_zero(self) -> bool:
        return False

    def invert(self) -> Exact:
        return RatFunc.make(self.num.invert(), self.den.invert())

    def evaluate(self, x):
        return self.num.evaluate(x) / self.den.evaluate(x)

    def evaluate_with(self, power):
        return self.num.evaluate_with(power) / self.den.evaluate_with(power)

    def norm1(self) -> Fraction:
        return self.num.norm1()

    def _parts(self, other):
        if isinstance(other, RatFunc):
            return other.num, other.den
        o = _as_laurent(other)
        if o is NotImplemented:
            return None
        return o, Laurent.const(1)

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        on, od = p
        if od == self.den:
            return RatFunc.make(self.num + on, self.den)
        return RatFunc.make(self.num * od + on * self.den, self.den * od)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        on, od = p
        return RatFunc.make(self.num * on, self.den * od)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        on, od = p
        return RatFunc.make(self.num * od, self.den * on)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        on, od = p
        return RatFunc.make(on * self.den, od * self.num)

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc.make(self.den ** (-k), self.num ** (-k))
        return RatFunc.make(self.num ** k, self.den ** k)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        on, od = p
        return self.num * od == on * self.den

    def __hash__(self):
        if self.den == 1:
            return hash(self.num)
        return hash((self.num, self.den))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"RatFunc(({self.num}) / ({self.den}))"

    __str__ = __repr__


Q = Laurent.gen()
