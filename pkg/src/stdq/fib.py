"""Fibonacci and quasi-Fibonacci classification of oscillator spectra.

An oscillator is Fibonacci when its levels E_n = (phi(n) + phi(n+1))/2 obey
E_{n+1} = lam E_n + rho E_{n-1} with constant lam, rho; quasi-Fibonacci
when the coefficients depend on n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from .params import QParam, Real, Symbolic
from .qcore import STD, Glued, StructureFunction
from .scalar import DEFAULT_TOL, is_exact, is_zero, magnitude


class DegenerateLevelsError(ZeroDivisionError):
    """The 2x2 system for (lam_n, rho_n) is singular at this n."""

    def __init__(self, n: int, what: str = "phi(n)^2 - phi(n+1) phi(n-1)"):
        self.n = n
        super().__init__(f"degenerate level triple at n={n}: {what} vanishes")


class InadmissibleKError(ValueError):
    pass


def _scale_tol(tol: float, *terms) -> float:
    return tol * max(1.0, sum(magnitude(t) for t in terms))


def recurrence_residual(E: Callable[[int], object], n: int, lam, rho):
    """E_{n+1} - lam E_n - rho E_{n-1} together with the size of its terms."""
    a, b, c = E(n + 1), lam * E(n), rho * E(n - 1)
    return a - b - c, magnitude(a) + magnitude(b) + magnitude(c)


def _residual_ok(res, scale, tol) -> bool:
    if is_exact(res):
        return is_zero(res)
    return magnitude(res) <= tol * max(1.0, scale)


# -- constant-coefficient test ---------------------------------------------

@dataclass
class FibonacciVerdict:
    is_fibonacci: Optional[bool]          # None: low levels degenerate, undecided
    lam: object = None
    rho: object = None
    witness: Optional[int] = None
    residual: float = 0.0
    exact: bool = False

    def __bool__(self):
        return bool(self.is_fibonacci)


def fibonacci_test(sf: StructureFunction, n_max: int = 12, tol: float = DEFAULT_TOL) -> FibonacciVerdict:
    """Fit (lam, rho) to the first two level triples, then test n = 3..n_max.

    With exact parameters a nonzero residual is a proof that no constant
    pair exists; with floats the residual is relative to the term sizes.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    E = sf.energy
    E0, E1, E2, E3 = E(0), E(1), E(2), E(3)
    det = E1 * E1 - E0 * E2
    exact = is_exact(det)
    if is_zero(det, _scale_tol(tol, E1 * E1, E0 * E2)):
        return FibonacciVerdict(None, exact=exact)
    lam = (E2 * E1 - E0 * E3) / det
    rho = (E1 * E3 - E2 * E2) / det
    worst = 0.0
    for n in range(3, n_max + 1):
        res, scale = recurrence_residual(E, n, lam, rho)
        rel = magnitude(res) / max(1.0, scale)
        worst = max(worst, rel)
        if not _residual_ok(res, scale, tol):
            return FibonacciVerdict(False, lam, rho, n, rel, exact)
    return FibonacciVerdict(True, lam, rho, None, worst, exact)


def std_system_residuals(q: QParam) -> Tuple:
    """Residuals of the four basis-coefficient equations at lam = 2q, rho = -q^2.

    Matching the n q^n, q^n, n q^-n and q^-n parts of
    E_{n+1} = lam E_n + rho E_{n-1} for the symmetric bracket.
    """
    qq, qi = q.pow(1), q.pow(-1)
    lam, rho = 2 * qq, -q.pow(2)
    e1 = (1 + qq) - (lam * (qi + 1) + rho * (q.pow(-2) + qi))
    e2 = (1 + 2 * qq) - (lam - rho * q.pow(-2))
    e3 = (1 + qi) - (qq + 1) * (lam + rho * qq)
    e4 = (1 + 2 * qi) - (lam - rho * q.pow(2))
    return e1, e2, e3, e4


# -- quasi-Fibonacci coefficients ------------------------------------------

@dataclass
class QuasiFibCoeffs:
    n: int
    lambda_n: object
    rho_n: object
    method: str                     # "simplest-splitting" or "general-K"
    k_spec: Optional[str] = None
    residual: float = 0.0


def quasi_fib_simple(n: int, sf: StructureFunction, tol: float = DEFAULT_TOL) -> QuasiFibCoeffs:
    """lam_n, rho_n from phi(n+2) = lam phi(n+1) + rho phi(n), phi(n+1) = lam phi(n) + rho phi(n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p0, p1, p2, p3 = sf(n - 1), sf(n), sf(n + 1), sf(n + 2)
    den = p1 * p1 - p2 * p0
    if is_zero(den, _scale_tol(tol, p1 * p1, p2 * p0)):
        raise DegenerateLevelsError(n)
    if is_zero(p1, tol):
        raise DegenerateLevelsError(n, "phi(n)")
    rho = (p3 * p1 - p2 * p2) / den
    lam = (p2 - rho * p0) / p1
    res, scale = recurrence_residual(sf.energy, n, lam, rho)
    return QuasiFibCoeffs(n, lam, rho, "simplest-splitting", None, magnitude(res) / max(1.0, scale))


def std_closed_form(n: int, q: QParam):
    """Closed forms of lam_n, rho_n for the symmetric bracket (simplest splitting).

    D     = (1 + q^-2n)(q^2 + q^(2n-2)) - n^2 (q - 1/q)^2
    lam_n = [2(1 + q^-2n)(q + q^(2n-1)) - (n-1)(n+2)(q + 1/q)(q - 1/q)^2] / D
    rho_n = -[(q^n + q^-n)^2 - n(n+2)(q - 1/q)^2] / D
    """
    qm = q.pow(1) - q.pow(-1)
    qp = q.pow(1) + q.pow(-1)
    D = (1 + q.pow(-2 * n)) * (q.pow(2) + q.pow(2 * n - 2)) - n * n * qm * qm
    if is_zero(D, DEFAULT_TOL):
        raise DegenerateLevelsError(n, "closed-form denominator")
    lam = (2 * (1 + q.pow(-2 * n)) * (q.pow(1) + q.pow(2 * n - 1)) - (n - 1) * (n + 2) * qp * qm * qm) / D
    s = q.pow(n) + q.pow(-n)
    rho = -(s * s - n * (n + 2) * qm * qm) / D
    return lam, rho


def _s(q: QParam, m: int):
    return q.pow(m) + q.pow(-m)


def k_zero(q: QParam, n: int):
    """K = 0: lam_n = 2."""
    return Fraction(0)


def k_tilde(q: QParam, n: int):
    """[(n+2) s_{n+1} + (n-1) s_{n-2}] / [(n+1) s_n + n s_{n-1}], s_m = q^m + q^-m."""
    return ((n + 2) * _s(q, n + 1) + (n - 1) * _s(q, n - 2)) / ((n + 1) * _s(q, n) + n * _s(q, n - 1))


def k_unit_rho(q: QParam, n: int):
    """K = -1 + K~, the choice that makes rho_n = -1."""
    return k_tilde(q, n) - 1


BUILTIN_K = {"zero": k_zero, "unit-rho": k_unit_rho}


def check_k_admissible(K: Callable, n: int, eps: float = 1e-6, bound: float = 1e-4):
    """K(q, n) must vanish as q -> 1; probed at q = 1 +- eps."""
    for qv in (1 + eps, 1 - eps):
        val = K(Real(qv), n)
        if magnitude(val) > bound:
            raise InadmissibleKError(f"K(q={qv}, n={n}) = {val} does not vanish as q -> 1")


def quasi_fib_general(n: int, q: QParam, K: Callable = k_zero, k_spec: Optional[str] = None,
                      check: bool = True) -> QuasiFibCoeffs:
    """lam_n = 2 + K(q, n) with rho_n fixed by the level relation for the symmetric spectrum."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if check:
        check_k_admissible(K, n)
    k = K(q, n)
    num = ((n + 2) * _s(q, n + 1) - (n + 1) * _s(q, n) - 2 * n * _s(q, n - 1)
           - k * ((n + 1) * _s(q, n) + n * _s(q, n - 1)))
    den = n * _s(q, n - 1) + (n - 1) * _s(q, n - 2)
    if is_zero(den, DEFAULT_TOL):
        raise DegenerateLevelsError(n, "n s_{n-1} + (n-1) s_{n-2}")
    lam, rho = 2 + k, num / den
    res, scale = recurrence_residual(STD(q).energy, n, lam, rho)
    return QuasiFibCoeffs(n, lam, rho, "general-K", k_spec or getattr(K, "__name__", None),
                          magnitude(res) / max(1.0, scale))


# -- five-parameter family -------------------------------------------------

@dataclass
class FiveParResult:
    verdict: FibonacciVerdict
    exceptional: Optional[str]     # "same-pair", "inverse-swap" or None
    claimed_fibonacci: bool        # the predicted verdict for these parameters
    consistent: bool               # verdict agrees with the prediction

    def __bool__(self):
        return self.consistent


def _same(a: QParam, b: QParam) -> bool:
    return a == b or (magnitude(a.pow(1) - b.pow(1)) == 0)


def fivepar_exception(t, p: QParam, q: QParam, P: QParam, Q: QParam) -> Optional[str]:
    if _same(p, P) and _same(q, Q):
        return "same-pair"
    if _same(P, q.inverse()) and _same(Q, p.inverse()):
        return "inverse-swap"
    return None


def fivepar_fibonacci_check(t, p: QParam, q: QParam, P: QParam, Q: QParam,
                            n_max: int = 12, tol: float = DEFAULT_TOL) -> FiveParResult:
    """Run the Fibonacci test on the glued family and compare with the predicted exceptions."""
    for x in (p, q, P, Q):
        if not isinstance(x, (Real, Symbolic)):
            raise ValueError("five-parameter check needs real or symbolic parameters")
    verdict = fibonacci_test(Glued(Fraction(t), p, q, P, Q), n_max, tol)
    exc = fivepar_exception(t, p, q, P, Q)
    claimed = exc is not None
    return FiveParResult(verdict, exc, claimed, verdict.is_fibonacci is claimed)


def fivepar_sample(count: int = 20, seed: int = 0) -> List[Tuple]:
    """Seeded exact parameter sets (t, p, q, P, Q) cycling generic, same-pair and inverse-swap."""
    rng = random.Random(seed)
    pool = [Fraction(a, b) for a in range(1, 8) for b in range(1, 8) if Fraction(a, b) != 1]
    ts = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)]
    out = []
    for i in range(count):
        t = rng.choice(ts)
        p, q = Real(rng.choice(pool)), Real(rng.choice(pool))
        kind = i % 3
        if kind == 1:
            P, Q = p, q
        elif kind == 2:
            P, Q = q.inverse(), p.inverse()
        else:
            while True:
                P, Q = Real(rng.choice(pool)), Real(rng.choice(pool))
                if fivepar_exception(t, p, q, P, Q) is None:
                    break
        out.append((t, p, q, P, Q))
    return out
