import math
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stdq import (BM, PQ, STD, Classical, Glued, bm_bracket, glued_structure, hybrid_identities_check,
                  negative_bracket_identity, pq_structure, std_bracket, std_factorial)
from stdq.laurent import Q
from stdq.params import Real, phase, phase_pi, real, symbolic
from stdq.qcore import NonPositiveBracketWarning
from stdq.scalar import invert_q

rational_q = st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=12)


def oracle(n, q):
    return n / 2 * (q ** (n - 1) + q ** (1 - n))


@pytest.mark.parametrize("n", range(0, 8))
def test_q_one_gives_integers(n):
    assert std_bracket(n, real(1)) == n


def test_known_values():
    assert std_bracket(2, real(2)) == Fraction(5, 2)
    assert std_bracket(2, phase_pi(Fraction(1, 2))) == 0
    assert std_bracket(3, symbolic()) == Fraction(3, 2) * (Q**2 + Q**-2)


@given(st.integers(-12, 12), st.floats(0.2, 5))
def test_float_matches_formula(n, qv):
    assert std_bracket(n, Real(qv)) == pytest.approx(oracle(n, qv), rel=1e-12)


@given(st.integers(1, 15), rational_q)
def test_exact_matches_float(n, qv):
    assert float(std_bracket(n, Real(qv))) == pytest.approx(oracle(n, float(qv)), rel=1e-12)


def test_phase_matches_cosine():
    th = 0.7
    for n in range(1, 10):
        assert std_bracket(n, phase(th)) == pytest.approx(n * math.cos((n - 1) * th), abs=1e-12)


def test_factorial():
    q = real(Fraction(3, 2))
    assert std_factorial(0, q) == 1
    assert std_factorial(4, q) == math.prod(std_bracket(k, q) for k in range(1, 5))
    with pytest.raises(ValueError):
        std_factorial(-1, q)


def test_symmetric_under_inversion():
    q = symbolic()
    for n in range(-5, 20):
        assert invert_q(std_bracket(n, q)) == std_bracket(n, q)


def test_bm_bracket():
    q = real(2.0)
    for n in range(-4, 8):
        want = (2.0**n - 2.0**-n) / (2.0 - 0.5)
        assert bm_bracket(n, q) == pytest.approx(want)
    assert bm_bracket(5, real(1)) == 5


def test_pq_bracket_and_limit():
    p, q = real(Fraction(2)), real(Fraction(3))
    assert pq_structure(4, p, q) == Fraction(2**4 - 3**4, 2 - 3)
    assert pq_structure(4, q, q) == 4 * 3**3
    with pytest.raises(ValueError):
        pq_structure(-1, p, q)


def test_glued_reduces_to_std():
    q = symbolic()
    g = Glued.from_std(q)
    for n in range(12):
        assert g(n) == std_bracket(n, q)
    with pytest.raises(ValueError):
        glued_structure(2, Fraction(3, 2), q, q, q, q)


@pytest.mark.parametrize("q", [symbolic(), real(Fraction(7, 5)), real(0.8), phase(0.9)])
def test_hybrid_identities(q):
    for n in range(1, 15):
        assert hybrid_identities_check(n, q)


def test_hybrid_ratio_at_vanishing_bm_bracket():
    # [2] = q + 1/q vanishes at q = i, so the ratio form is undefined there
    chk = hybrid_identities_check(3, phase_pi(Fraction(1, 2)))
    assert ("ratio", 3, float("inf")) in chk.failures


@pytest.mark.parametrize("q", [symbolic(), real(0.6), phase(2.0)])
def test_negative_bracket(q):
    for k in range(1, 20):
        assert negative_bracket_identity(k, q)


def test_nonpositive_warning():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        std_bracket(3, phase_pi(Fraction(1, 2)), warn=True)
    assert any(issubclass(x.category, NonPositiveBracketWarning) for x in w)


def test_energy_and_descriptors():
    assert Classical().energy(3) == Fraction(7, 2)
    assert STD(real(1)).energy(0) == Fraction(1, 2)
    assert STD(symbolic()).exact and not STD(real(0.5)).exact
    assert BM(real(1))(3) == 3
    assert PQ(real(1), real(1))(3) == 3
