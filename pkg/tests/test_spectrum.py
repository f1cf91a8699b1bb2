import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stdq.params import Real, phase, real, symbolic
from stdq.spectrum import (DegeneracyQuery, chebyshev_T, degeneracy_poly, degeneracy_poly_regrouped, energy,
                           energy_from_brackets, energy_gap, energy_gap_factored, find_degeneracies,
                           gap_chebyshev)

xs = st.fractions(min_value=-1, max_value=1, max_denominator=13)


def test_energy_forms_agree_symbolically():
    q = symbolic()
    for n in range(20):
        assert energy(n, q) == energy_from_brackets(n, q)
        assert energy_gap(n, q) == energy(n + 1, q) - energy(n, q)
        assert energy_gap_factored(n, q) == energy_gap(n, q)


def test_classical_ladder():
    q = real(1)
    assert [energy(n, q) for n in range(5)] == [Fraction(2 * n + 1, 2) for n in range(5)]
    assert energy(0, symbolic()) == Fraction(1, 2)
    with pytest.raises(ValueError):
        energy(-1, q)


@given(st.integers(0, 15), st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=9))
def test_gap_positive_for_real_q(n, qv):
    # for real q > 0 the spectrum is strictly increasing
    assert energy_gap(n, Real(qv)) > 0


def test_chebyshev_values():
    assert [chebyshev_T(n, Fraction(1, 2)) for n in range(4)] == [1, Fraction(1, 2), Fraction(-1, 2), -1]
    for n in range(8):
        assert chebyshev_T(n, math.cos(0.7)) == pytest.approx(math.cos(0.7 * n))
    with pytest.raises(ValueError):
        chebyshev_T(-1, 0.3)


@pytest.mark.parametrize("theta", [0.3, 1.1, 2.5])
def test_chebyshev_gap_matches_energy_gap(theta):
    q = phase(theta)
    for n in range(12):
        assert complex(energy_gap(n, q)).real == pytest.approx(gap_chebyshev(n, math.cos(theta)), abs=1e-12)
        assert abs(complex(energy_gap(n, q)).imag) < 1e-12


@given(st.integers(0, 8), st.integers(1, 8), xs)
def test_regrouped_polynomial(n, r, x):
    qry = DegeneracyQuery(n, r)
    assert degeneracy_poly(qry, x) == degeneracy_poly_regrouped(qry, x)


def test_degeneracy_poly_is_twice_level_difference():
    theta = 0.9
    q = phase(theta)
    for n, r in [(0, 1), (2, 3), (5, 2)]:
        diff = complex(energy(n + r, q) - energy(n, q)).real
        assert degeneracy_poly(DegeneracyQuery(n, r), math.cos(theta)) == pytest.approx(2 * diff, abs=1e-12)


def test_ground_and_first_level_meet_at_quarter_turn():
    sol = find_degeneracies(DegeneracyQuery(0, 1))
    assert sol.thetas == pytest.approx([-math.pi / 2, math.pi / 2], abs=1e-12)
    assert all(r.residual < 1e-12 for r in sol.roots)


@pytest.mark.parametrize("n,r", [(0, 2), (1, 1), (3, 2), (4, 5), (10, 3)])
def test_roots_are_level_crossings(n, r):
    sol = find_degeneracies(DegeneracyQuery(n, r))
    assert sol.roots
    for root in sol.roots:
        assert root.residual < 1e-10
        assert -math.pi <= root.theta <= math.pi
        assert math.cos(root.theta) == pytest.approx(root.x, abs=1e-12)


def test_root_count_bounded_by_degree():
    for n, r in [(2, 2), (6, 1), (5, 4)]:
        assert len(find_degeneracies(DegeneracyQuery(n, r)).xs) <= n + r


def test_query_validation():
    with pytest.raises(ValueError):
        DegeneracyQuery(-1, 1)
    with pytest.raises(ValueError):
        DegeneracyQuery(0, 0)
    with pytest.raises(ValueError):
        find_degeneracies(DegeneracyQuery(0, 1), tol=0)
