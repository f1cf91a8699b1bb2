"""Truncated Fock-space ladder operators for a deformed oscillator.

a|n> = sqrt({n}) |n-1>,  a+|n> = sqrt({n+1}) |n+1>,  N|n> = n|n>.

Numeric parameters give dense numpy matrices.  Exact parameters (symbolic
or rational q) use :class:`RadicalMatrix`, whose entries are formal sums
c*sqrt(s); this keeps every check exact although sqrt({n}) is not itself
a Laurent polynomial.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .params import Phase, QParam
from .qcore import std_bracket, std_factorial
from .scalar import DEFAULT_TOL, close, is_exact, magnitude, real_part


# -- exact radical entries -------------------------------------------------

class Radical:
    """Formal sum of c_i * sqrt(s_i) with exact c_i, s_i.

    sqrt(s)*sqrt(s) is simplified to s; other products keep the radicand
    s1*s2.  That is enough for every identity checked here, which only ever
    pairs an entry with its mirror or with a number-operator entry.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[object, object]] = None):
        self.terms = {s: c for s, c in (terms or {}).items() if not _exact_zero(c)}

    @classmethod
    def rational(cls, c) -> "Radical":
        return cls({Fraction(1): c})

    @classmethod
    def sqrt(cls, s) -> "Radical":
        return cls({s: Fraction(1)})

    def __add__(self, other: "Radical") -> "Radical":
        t = dict(self.terms)
        for s, c in other.terms.items():
            t[s] = t.get(s, 0) + c
        return Radical(t)

    def __neg__(self):
        return Radical({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "Radical") -> "Radical":
        t: Dict[object, object] = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                if s1 == s2:
                    s, c = Fraction(1), c1 * c2 * s1
                elif s1 == 1:
                    s, c = s2, c1 * c2
                elif s2 == 1:
                    s, c = s1, c1 * c2
                else:
                    s, c = s1 * s2, c1 * c2
                t[s] = t.get(s, 0) + c
        return Radical(t)

    def squared_value(self):
        """The exact square, defined when the sum has one radicand."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) != 1:
            raise ValueError("square of a multi-radicand sum is not tracked")
        (s, c), = self.terms.items()
        return c * c * s

    def is_zero(self) -> bool:
        return not self.terms

    def size(self) -> float:
        return float(sum(magnitude(c) for c in self.terms.values()))


def _exact_zero(c) -> bool:
    return magnitude(c) == 0


class RadicalMatrix:
    """Sparse square matrix of :class:`Radical` entries."""

    def __init__(self, dim: int, entries: Optional[Dict[Tuple[int, int], Radical]] = None):
        self.dim = dim
        self.entries = {k: v for k, v in (entries or {}).items() if not v.is_zero()}

    def __getitem__(self, ij) -> Radical:
        return self.entries.get(ij, Radical())

    def __matmul__(self, other: "RadicalMatrix") -> "RadicalMatrix":
        out: Dict[Tuple[int, int], Radical] = {}
        rows: Dict[int, List[Tuple[int, Radical]]] = {}
        for (k, j), v in other.entries.items():
            rows.setdefault(k, []).append((j, v))
        for (i, k), u in self.entries.items():
            for j, v in rows.get(k, ()):
                out[(i, j)] = out.get((i, j), Radical()) + u * v
        return RadicalMatrix(self.dim, out)

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, Radical()) + v
        return RadicalMatrix(self.dim, out)

    def __neg__(self):
        return RadicalMatrix(self.dim, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def block_max(self, size: int) -> float:
        return max((v.size() for (i, j), v in self.entries.items() if i < size and j < size), default=0.0)

    def transpose(self) -> "RadicalMatrix":
        return RadicalMatrix(self.dim, {(j, i): v for (i, j), v in self.entries.items()})


# -- operators -------------------------------------------------------------

@dataclass
class FockOps:
    dim: int
    q: QParam
    a: object
    a_dag: object
    n_op: object
    exact: bool
    nonpositive_levels: List[int] = field(default_factory=list)


def _principal_sqrt(v):
    if isinstance(v, complex):
        return cmath.sqrt(v)
    return math.sqrt(v) if v >= 0 else cmath.sqrt(v)


def build_fock(dim: int, q: QParam) -> FockOps:
    if dim < 2:
        raise ValueError("Fock truncation needs dim >= 2")
    brackets = [std_bracket(n, q) for n in range(dim)]
    flagged = [n for n in range(1, dim) if not is_exact(brackets[n]) and real_part(brackets[n]) <= 1e-14]
    if q.exact:
        a = RadicalMatrix(dim, {(n - 1, n): Radical.sqrt(brackets[n]) for n in range(1, dim)})
        n_op = RadicalMatrix(dim, {(n, n): Radical.rational(Fraction(n)) for n in range(1, dim)})
        return FockOps(dim, q, a, a.transpose(), n_op, True, flagged)
    dtype = complex if isinstance(q, Phase) else float
    a = np.zeros((dim, dim), dtype=dtype)
    for n in range(1, dim):
        v = brackets[n]
        a[n - 1, n] = _principal_sqrt(v.real if dtype is float and isinstance(v, complex) else v)
    return FockOps(dim, q, a, a.T.copy(), np.diag(np.arange(dim, dtype=float)).astype(dtype), False, flagged)


def commutator_rhs(n: int, q: QParam):
    """(1 + (1 - 1/q) n) q^n / 2 + (1 + (1 - q) n) q^-n / 2."""
    half = Fraction(1, 2)
    return (half * (1 + (1 - q.pow(-1)) * n) * q.pow(n)
            + half * (1 + (1 - q.pow(1)) * n) * q.pow(-n))


def _check_block(ops: FockOps, res_diag: List, scale: float) -> float:
    return max((magnitude(r) for r in res_diag), default=0.0) / scale


def algebra_residual(ops: FockOps) -> float:
    """max |(a a+ - a+ a) - rhs| over the block that excludes the truncation edge.

    Exact backends return 0.0 exactly when the identity holds.  In floats
    the residual is relative to max(1, max |rhs|), since entries grow like
    n q^-n and carry ulp-level error of that size.
    """
    m = ops.dim - 1
    if ops.exact:
        comm = ops.a @ ops.a_dag - ops.a_dag @ ops.a
        rhs = RadicalMatrix(ops.dim, {(n, n): Radical.rational(commutator_rhs(n, ops.q)) for n in range(m)})
        return (comm - rhs).block_max(m)
    comm = ops.a @ ops.a_dag - ops.a_dag @ ops.a
    rhs = np.array([complex(commutator_rhs(n, ops.q)) for n in range(m)])
    diff = comm[:m, :m] - np.diag(rhs)
    scale = max(1.0, float(np.max(np.abs(rhs))))
    return float(np.max(np.abs(diff))) / scale


def number_commutators_residual(ops: FockOps) -> float:
    """max of |[N, a+] - a+| and |[N, a] + a| on the interior block."""
    m = ops.dim - 1
    N, a, ad = ops.n_op, ops.a, ops.a_dag
    if ops.exact:
        r1 = (N @ ad - ad @ N) - ad
        r2 = (N @ a - a @ N) + a
        return max(r1.block_max(m), r2.block_max(m))
    r1 = (N @ ad - ad @ N) - ad
    r2 = (N @ a - a @ N) + a
    scale = max(1.0, float(np.max(np.abs(a))))
    return max(float(np.max(np.abs(r1[:m, :m]))), float(np.max(np.abs(r2[:m, :m])))) / scale


def number_operator_residual(ops: FockOps) -> float:
    """a+ a against diag({n}); exact zero in the exact backend, relative in floats."""
    prod = ops.a_dag @ ops.a
    if ops.exact:
        want = RadicalMatrix(ops.dim, {(n, n): Radical.rational(std_bracket(n, ops.q)) for n in range(ops.dim)})
        return (prod - want).block_max(ops.dim)
    want = np.diag([complex(std_bracket(n, ops.q)) for n in range(ops.dim)])
    return float(np.max(np.abs(prod - want))) / max(1.0, float(np.max(np.abs(want))))


@dataclass
class RealizationCheck:
    ok: bool
    first_mismatch: Optional[Tuple[str, int]] = None
    max_residual: float = 0.0

    def __bool__(self):
        return self.ok


def coordinate_realization_check(max_n: int, q: QParam, tol: float = DEFAULT_TOL) -> RealizationCheck:
    """a ~ D_x, a+ ~ x, N ~ x d/dx on the basis x^n / sqrt({n}!).

    Compares squared matrix elements, which are exact in the exact
    backend: (D_x coefficient)^2 {n-1}!/{n}! against {n}, and so on.
    """
    from .qcalc.calculus import ordinary_derivative, std_derivative
    from .qcalc.series import Polynomial

    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    worst = 0.0
    for n in range(max_n + 1):
        xn = Polynomial.monomial(n)
        checks = []
        if n >= 1:
            d = std_derivative(xn, q).coeff(n - 1)
            elem_sq = d * d * std_factorial(n - 1, q) / std_factorial(n, q)
            checks.append(("a", elem_sq, std_bracket(n, q)))
        up = (xn * Polynomial.monomial(1)).coeff(n + 1)
        elem_sq = up * up * std_factorial(n + 1, q) / std_factorial(n, q)
        checks.append(("a_dag", elem_sq, std_bracket(n + 1, q)))
        num = ordinary_derivative(xn) * Polynomial.monomial(1)
        checks.append(("N", num.coeff(n), Fraction(n)))
        for name, got, want in checks:
            worst = max(worst, magnitude(got - want))
            if not close(got, want, tol):
                return RealizationCheck(False, (name, n), worst)
    return RealizationCheck(True, None, worst)
