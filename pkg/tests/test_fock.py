import math
from fractions import Fraction

import numpy as np
import pytest

from stdq.fock import (Radical, RadicalMatrix, algebra_residual, build_fock, commutator_rhs,
                       coordinate_realization_check, number_commutators_residual, number_operator_residual)
from stdq.laurent import Q
from stdq.params import phase, phase_pi, real, symbolic
from stdq.qcore import std_bracket


def test_radical_square_collapses():
    r = Radical.sqrt(Q + Q**-1)
    assert (r * r).terms == {Fraction(1): Q + Q**-1}
    assert r.squared_value() == Q + Q**-1
    assert (r - r).is_zero()


def test_radical_matrix_product():
    a = RadicalMatrix(3, {(0, 1): Radical.sqrt(Fraction(2)), (1, 2): Radical.sqrt(Fraction(3))})
    aa = a @ a
    assert aa[(0, 2)].terms == {Fraction(6): Fraction(1)}
    assert (a.transpose() @ a)[(1, 1)].terms == {Fraction(1): Fraction(2)}


def test_classical_commutator_is_identity():
    ops = build_fock(10, real(1.0))
    comm = ops.a @ ops.a_dag - ops.a_dag @ ops.a
    assert np.allclose(np.diag(comm)[:-1], 1.0)
    assert commutator_rhs(5, real(1)) == 1


def test_commutator_rhs_matches_bracket_difference():
    q = symbolic()
    for n in range(12):
        assert commutator_rhs(n, q) == std_bracket(n + 1, q) - std_bracket(n, q)


@pytest.mark.parametrize("dim", [2, 5, 8])
@pytest.mark.parametrize("q", [symbolic(), real(Fraction(3, 4)), real(Fraction(5, 2))])
def test_exact_backend_zero_residuals(dim, q):
    ops = build_fock(dim, q)
    assert ops.exact
    assert algebra_residual(ops) == 0
    assert number_commutators_residual(ops) == 0
    assert number_operator_residual(ops) == 0


@pytest.mark.parametrize("q", [real(0.8), real(1.25), phase_pi(Fraction(1, 5)), phase(0.3)])
def test_float_backend(q):
    ops = build_fock(40, q)
    assert algebra_residual(ops) <= 1e-12
    assert number_commutators_residual(ops) <= 1e-12
    assert number_operator_residual(ops) <= 1e-12


def test_annihilator_elements():
    q = real(0.7)
    ops = build_fock(6, q)
    for n in range(1, 6):
        assert ops.a[n - 1, n] == pytest.approx(math.sqrt(std_bracket(n, q)))


def test_nonpositive_levels_flagged_at_phase():
    ops = build_fock(12, phase_pi(Fraction(1, 5)))
    # {n} = n cos((n-1) pi/5) <= 0 for n - 1 in 3..7 (mod 10)
    assert ops.nonpositive_levels[:5] == [4, 5, 6, 7, 8]
    assert build_fock(12, real(0.9)).nonpositive_levels == []


@pytest.mark.parametrize("q", [symbolic(), real(Fraction(2, 3)), real(1.7), phase(0.4)])
def test_coordinate_realization(q):
    assert coordinate_realization_check(10, q)


def test_dimension_validation():
    with pytest.raises(ValueError):
        build_fock(1, real(0.5))
