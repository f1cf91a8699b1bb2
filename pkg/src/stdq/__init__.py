"""Exact and numerical tools for a symmetric q-deformed oscillator."""

from .laurent import Laurent, RatFunc, Q
from .params import QParam, Real, Phase, Symbolic, real, phase, phase_pi, symbolic
from .qcore import (
    std_bracket, std_factorial, bm_bracket, pq_structure, glued_structure,
    hybrid_identities_check, negative_bracket_identity,
    StructureFunction, STD, BM, PQ, Glued, Classical,
)

__all__ = [
    "Laurent", "RatFunc", "Q", "QParam", "Real", "Phase", "Symbolic", "real", "phase", "phase_pi", "symbolic",
    "std_bracket", "std_factorial", "bm_bracket", "pq_structure", "glued_structure",
    "hybrid_identities_check", "negative_bracket_identity",
    "StructureFunction", "STD", "BM", "PQ", "Glued", "Classical",
]

__version__ = "0.1.0"
