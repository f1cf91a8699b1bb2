"""Structure functions (q-brackets) of the deformed oscillator families.

All brackets are built from ``q.pow(k)`` so they run unchanged on exact
Laurent polynomials, exact rationals, floats and unit-circle phases.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .params import QParam, Phase
from .scalar import DEFAULT_TOL, close, is_exact, magnitude, real_part


class NonPositiveBracketWarning(UserWarning):
    """A bracket value at phase-like q is zero or negative."""


def std_bracket(n: int, q: QParam, warn: bool = False):
    """{n} = (n/2)(q^(n-1) + q^(1-n)); negative n is allowed."""
    val = Fraction(n, 2) * (q.pow(n - 1) + q.pow(1 - n))
    if warn and isinstance(q, Phase) and n >= 1 and real_part(val) <= 0:
        warnings.warn(f"{{{n}}} = {real_part(val):.3g} is not positive at {q}",
                      NonPositiveBracketWarning, stacklevel=2)
    return val


def std_factorial(n: int, q: QParam):
    if n < 0:
        raise ValueError("factorial needs n >= 0")
    out = Fraction(1)
    for k in range(1, n + 1):
        out = out * std_bracket(k, q)
    return out


def bm_bracket(n: int, q: QParam):
    """[n] = (q^n - q^-n)/(q - q^-1), via the finite sum so q = 1 needs no limit."""
    if n < 0:
        return -bm_bracket(-n, q)
    total = Fraction(0)
    for k in range(n):
        total = total + q.pow(n - 1 - 2 * k)
    return total


def _pq_sum(n: int, p: QParam, q: QParam):
    # (p^n - q^n)/(p - q) = sum p^(n-1-k) q^k; the sum is already the p = q limit n q^(n-1)
    total = Fraction(0)
    for k in range(n):
        total = total + p.pow(n - 1 - k) * q.pow(k)
    return total


def pq_structure(n: int, p: QParam, q: QParam):
    if n < 0:
        raise ValueError("(p,q)-bracket needs n >= 0")
    return _pq_sum(n, p, q)


def glued_structure(n: int, t, p: QParam, q: QParam, P: QParam, Q: QParam):
    """t*[n]_{p,q} + (1-t)*[n]_{P,Q}."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"gluing weight must lie in [0, 1], got {t}")
    return t * pq_structure(n, p, q) + (1 - t) * pq_structure(n, P, Q)


# -- identity checks -------------------------------------------------------

@dataclass
class IdentityCheck:
    """Outcome of an identity check; truthy when every case held."""

    name: str
    checked: int = 0
    failures: List[Tuple[str, int, float]] = field(default_factory=list)
    max_residual: float = 0.0

    def record(self, label: str, n: int, lhs, rhs, tol: float):
        self.checked += 1
        diff = lhs - rhs
        res = magnitude(diff)
        self.max_residual = max(self.max_residual, res)
        if not close(lhs, rhs, tol):
            self.failures.append((label, n, res))

    def __bool__(self):
        return not self.failures


def hybrid_identities_check(n: int, q: QParam, tol: float = DEFAULT_TOL) -> IdentityCheck:
    """{n} against n([n]-[n-2])/2 and, for n >= 2, n[2(n-1)]/(2[n-1])."""
    if n < 1:
        raise ValueError("hybrid identities need n >= 1")
    chk = IdentityCheck("hybrid")
    lhs = std_bracket(n, q)
    chk.record("difference", n, lhs, Fraction(n, 2) * (bm_bracket(n, q) - bm_bracket(n - 2, q)), tol)
    if n >= 2:
        den = 2 * bm_bracket(n - 1, q)
        if magnitude(den) == 0:
            chk.failures.append(("ratio", n, float("inf")))
        else:
            chk.record("ratio", n, lhs, n * bm_bracket(2 * (n - 1), q) / den, tol)
    return chk


def negative_bracket_identity(k: int, q: QParam, tol: float = DEFAULT_TOL) -> IdentityCheck:
    """{-k} = -k/(k+2) {k+2}."""
    if k < 1:
        raise ValueError("needs k >= 1")
    chk = IdentityCheck("negative")
    chk.record("negative", k, std_bracket(-k, q), -Fraction(k, k + 2) * std_bracket(k + 2, q), tol)
    return chk


# -- structure function descriptors ----------------------------------------

class StructureFunction:
    """phi(n) for one oscillator family, plus the level E_n = (phi(n) + phi(n+1))/2."""

    name = "abstract"

    def __call__(self, n: int):
        raise NotImplementedError

    def energy(self, n: int):
        return (self(n) + self(n + 1)) / 2

    @property
    def exact(self) -> bool:
        return is_exact(self(2))


@dataclass(frozen=True)
class STD(StructureFunction):
    q: QParam
    name = "std"

    def __call__(self, n):
        return std_bracket(n, self.q)


@dataclass(frozen=True)
class BM(StructureFunction):
    q: QParam
    name = "bm"

    def __call__(self, n):
        return bm_bracket(n, self.q)


@dataclass(frozen=True)
class PQ(StructureFunction):
    p: QParam
    q: QParam
    name = "pq"

    def __call__(self, n):
        return pq_structure(n, self.p, self.q)


@dataclass(frozen=True)
class Glued(StructureFunction):
    t: Fraction
    p: QParam
    q: QParam
    P: QParam
    Q: QParam
    name = "glued"

    def __call__(self, n):
        return glued_structure(n, self.t, self.p, self.q, self.P, self.Q)

    @classmethod
    def from_std(cls, q: QParam) -> "Glued":
        return cls(Fraction(1, 2), q, q, q.inverse(), q.inverse())


@dataclass(frozen=True)
class Classical(StructureFunction):
    name = "classical"

    def __call__(self, n):
        return Fraction(n)
