from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stdq.laurent import Laurent, RatFunc, Q, _gcd

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=7)
laurents = st.dictionaries(st.integers(-4, 4), coeff, max_size=5).map(Laurent)
points = st.fractions(min_value=Fraction(1, 5), max_value=5, max_denominator=9)


def test_construction_drops_zeros():
    p = Laurent({2: 0, 1: Fraction(1, 2), -1: 3})
    assert p.items() == [(-1, Fraction(3)), (1, Fraction(1, 2))]
    assert Laurent().is_zero()


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        Laurent({1: 0.5})


def test_basic_arithmetic():
    assert (Q + 1) * (Q - 1) == Q**2 - 1
    assert (Q + Q**-1) ** 2 == Q**2 + 2 + Q**-2
    assert (Q**3).invert() == Q**-3


def test_division_by_monomial_stays_laurent():
    r = (Q**3 + Q) / Q
    assert isinstance(r, Laurent) and r == Q**2 + 1


def test_ratfunc_reduces_to_lowest_terms():
    r = (Q**2 - 1) / (Q - 1)
    assert isinstance(r, Laurent) and r == Q + 1
    s = (Q + 2) / (Q**2 + 1)
    assert isinstance(s, RatFunc)
    assert s.den.coeff(2) == 1 and s.den.min_exp == 0


def test_constant_hash_matches_fraction():
    assert hash(Laurent.const(Fraction(3, 2))) == hash(Fraction(3, 2))
    assert Laurent.const(1) == 1
    assert {Fraction(1): "x"}[Laurent.const(1)] == "x"


def test_gcd_is_monic_common_factor():
    a = [Fraction(c) for c in (-1, 0, 1)]       # q^2 - 1
    b = [Fraction(c) for c in (1, 2, 1)]        # (q + 1)^2
    assert _gcd(a, b) == [Fraction(1), Fraction(1)]
    assert _gcd([Fraction(2)], [Fraction(0), Fraction(1)]) == [Fraction(1)]


@given(laurents, laurents, points)
def test_evaluation_is_a_ring_homomorphism(a, b, x):
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert (a - b).evaluate(x) == a.evaluate(x) - b.evaluate(x)


@given(laurents, laurents, points)
def test_ratfunc_evaluation(a, b, x):
    if b.is_zero() or b.evaluate(x) == 0:
        return
    r = a / b
    assert r.evaluate(x) == a.evaluate(x) / b.evaluate(x)
    assert r * b == a


@given(laurents, points)
def test_invert_is_substitution(a, x):
    assert a.invert().evaluate(x) == a.evaluate(1 / x)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        Q / Laurent()
