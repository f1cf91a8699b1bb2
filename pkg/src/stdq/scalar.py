"""Helpers shared by both arithmetic backends.

Scalars are plain Python values: ``int``/``Fraction``/``Laurent``/``RatFunc``
in the exact backend, ``float``/``complex`` in the numeric one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict

from .laurent import Laurent, RatFunc

DEFAULT_TOL = 1e-12


def is_exact(x) -> bool:
    return isinstance(x, (Laurent, RatFunc, Fraction)) or (isinstance(x, int) and not isinstance(x, bool))


def is_zero(x, tol: float = 0.0) -> bool:
    if isinstance(x, (Laurent, RatFunc)):
        return x.is_zero()
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


def magnitude(x) -> float:
    """A size for residual reporting: |x| numerically, coefficient l1-norm exactly."""
    if isinstance(x, (Laurent, RatFunc)):
        return float(x.norm1())
    return float(abs(x))


def close(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Exact equality for exact scalars, mixed abs/rel tolerance otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    diff = abs(complex(a) - complex(b))
    scale = max(1.0, abs(complex(a)), abs(complex(b)))
    return diff <= tol * scale


def invert_q(x):
    """Apply q -> 1/q to an exact scalar; numbers are returned unchanged."""
    if isinstance(x, (Laurent, RatFunc)):
        return x.invert()
    return x


def real_part(x) -> float:
    if isinstance(x, complex):
        return x.real
    return float(x)


def evaluate(x, q):
    """Evaluate an exact scalar at a numeric deformation parameter."""
    if isinstance(x, (Laurent, RatFunc)):
        return x.evaluate_with(q.pow)
    return x


def to_json(x) -> Dict[str, Any]:
    """Wire form: ``{"re", "im"}`` for numbers, ``{"laurent": {exp: "p/q"}}`` for exact values."""
    if isinstance(x, RatFunc):
        return {"ratfunc": {"num": to_json(x.num)["laurent"], "den": to_json(x.den)["laurent"]}}
    if isinstance(x, Laurent):
        return {"laurent": {str(e): str(v) for e, v in x.items()}}
    if is_exact(x):
        x = Fraction(x)
        return {"laurent": {"0": str(x)} if x else {}}
    z = complex(x)
    return {"re": z.real, "im": z.imag}


def from_json(obj: Dict[str, Any]):
    if "ratfunc" in obj:
        num = Laurent({int(e): Fraction(v) for e, v in obj["ratfunc"]["num"].items()})
        den = Laurent({int(e): Fraction(v) for e, v in obj["ratfunc"]["den"].items()})
        return RatFunc.make(num, den)
    if "laurent" in obj:
        return Laurent({int(e): Fraction(v) for e, v in obj["laurent"].items()})
    if obj.get("im", 0.0) == 0.0:
        return float(obj["re"])
    return complex(obj["re"], obj["im"])
