"""Deformation parameters.

A parameter is positive real (float or exact ``Fraction``), phase-like
``q = exp(i*theta)``, or the symbolic indeterminate.  Every formula in the
package is written against :meth:`QParam.pow`, so the same code evaluates
exactly, in floating point, or on the unit circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .laurent import Laurent

Number = Union[int, float, Fraction, complex]


class QParam:
    """Common interface; use :func:`real`, :func:`phase`, :func:`symbolic`."""

    exact = False

    def pow(self, k: int):
        raise NotImplementedError

    def inverse(self) -> "QParam":
        raise NotImplementedError

    def value(self):
        return self.pow(1)

    def is_one(self) -> bool:
        return False


@dataclass(frozen=True)
class Real(QParam):
    q: Union[float, Fraction]

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, (int, float, Fraction)):
            raise TypeError("real deformation parameter must be a number")
        if isinstance(self.q, int):
            object.__setattr__(self, "q", Fraction(self.q))
        if isinstance(self.q, float) and not math.isfinite(self.q):
            raise ValueError("deformation parameter must be finite")
        if self.q <= 0:
            raise ValueError(f"real deformation parameter must be positive, got {self.q}")

    @property
    def exact(self) -> bool:  # type: ignore[override]
        return isinstance(self.q, Fraction)

    def pow(self, k: int):
        return self.q**k

    def inverse(self) -> "Real":
        return Real(1 / self.q)

    def is_one(self) -> bool:
        return self.q == 1

    def __str__(self):
        return f"real:{self.q}"


@dataclass(frozen=True)
class Phase(QParam):
    """q = exp(i*theta).

    ``theta_pi`` carries theta/pi exactly when known; powers are then reduced
    modulo 2*pi in rational arithmetic, and multiples of pi/2 give exact
    values (so {2} at theta = pi/2 is exactly zero).
    """

    theta: float
    theta_pi: Optional[Fraction] = None

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError("phase angle must be finite")
        if abs(self.theta) > math.pi + 1e-15:
            raise ValueError(f"phase angle must lie in [-pi, pi], got {self.theta}")

    @classmethod
    def of_pi(cls, frac) -> "Phase":
        frac = Fraction(frac)
        return cls(float(frac) * math.pi, frac)

    def pow(self, k: int) -> complex:
        if self.theta_pi is not None:
            t = (k * self.theta_pi) % 2
            if (2 * t).denominator == 1:
                return {Fraction(0): 1 + 0j, Fraction(1, 2): 1j,
                        Fraction(1): -1 + 0j, Fraction(3, 2): -1j}[t]
            ang = float(t) * math.pi
        else:
            ang = k * self.theta
        return complex(math.cos(ang), math.sin(ang))

    def inverse(self) -> "Phase":
        return Phase(-self.theta, None if self.theta_pi is None else -self.theta_pi)

    def is_one(self) -> bool:
        return self.theta == 0

    def __str__(self):
        if self.theta_pi is not None:
            return f"phase:{self.theta_pi}*pi"
        return f"phase:{self.theta}"


@dataclass(frozen=True)
class Symbolic(QParam):
    """The indeterminate q raised to ``power`` (power=-1 is q^-1)."""

    power: int = 1
    exact = True

    def pow(self, k: int) -> Laurent:
        return Laurent.monomial(self.power * k)

    def inverse(self) -> "Symbolic":
        return Symbolic(-self.power)

    def __str__(self):
        return "symbolic" if self.power == 1 else f"symbolic^{self.power}"


def real(q) -> Real:
    return Real(q)


def phase(theta: float) -> Phase:
    return Phase(theta)


def phase_pi(frac) -> Phase:
    return Phase.of_pi(frac)


def symbolic() -> Symbolic:
    return Symbolic(1)


ONE = Real(Fraction(1))

