import math
from fractions import Fraction

import pytest

from stdq.coherent import (build_coherent, completeness_residual, eigenstate_residual, g_closed_forms,
                           moment_via_phi, phi, weight_function_eval, weight_g_coeffs)
from stdq.params import Real, phase, phase_pi, real, symbolic
from stdq.qcalc.calculus import ZeroBracketError, moment_closed_form
from stdq.qcalc.improper import QuadConfig
from stdq.qcore import std_bracket


def test_classical_coherent_state():
    s = build_coherent(1 + 0.5j, real(1.0), N=60)
    assert s.norm_const == pytest.approx(math.exp(-abs(1 + 0.5j) ** 2 / 2), rel=1e-12)
    assert s.overlap() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("qv", [0.8, 0.95, 1.1])
def test_eigenstate_and_normalisation(qv):
    s = build_coherent(0.7 - 0.4j, Real(qv), N=64)
    assert eigenstate_residual(s) < 1e-12
    assert s.overlap() == pytest.approx(1.0, abs=1e-10)


def test_phase_requires_opt_in():
    with pytest.raises(ValueError):
        build_coherent(0.5, phase(0.2))
    s = build_coherent(0.5, phase(0.2), N=20, allow_phase=True)
    assert eigenstate_residual(s) < 1e-12
    with pytest.raises(ZeroBracketError):
        build_coherent(0.5, phase_pi(Fraction(1, 2)), N=10, allow_phase=True)
    with pytest.raises(ValueError):
        build_coherent(0.5, real(0.9), N=0)


def test_phi_is_bracket_over_n():
    q = symbolic()
    for j in range(1, 10):
        assert phi(j, q) * j == std_bracket(j, q)
    with pytest.raises(ValueError):
        phi(0, q)


def test_weight_coefficients_closed_forms():
    for q in (symbolic(), real(Fraction(3, 4)), real(Fraction(7, 5))):
        g = weight_g_coeffs(2, q).g
        assert g[0] == 1
        assert (g[1], g[2]) == g_closed_forms(q)


def test_weight_is_one_at_classical_q():
    w = weight_g_coeffs(6, real(1))
    assert w.g == [1, 0, 0, 0, 0, 0, 0]
    assert w(Fraction(5)) == 1 and w.K == 6
    with pytest.raises(ValueError):
        weight_g_coeffs(-1, real(1))


def test_moment_via_phi_equals_closed_form():
    q = symbolic()
    for m in range(10):
        assert moment_via_phi(m, q) == moment_closed_form(m, 1, q)


def test_completeness_closed_form_moments_residual_is_tiny_for_low_k():
    # only the exact-moment sum is checked here; the quadrature sum is covered in acceptance
    quad = QuadConfig()
    r = completeness_residual(0, Real(0.9), K=1, quad=quad)
    assert r.target == pytest.approx(1.0)
    assert r.moment_residual == pytest.approx(r.residual, abs=1e-6)
    with pytest.raises(ValueError):
        completeness_residual(0, real(1), K=1)
    with pytest.raises(ValueError):
        completeness_residual(0, phase(0.2), K=1)


def test_weight_function_value():
    v = weight_function_eval(0.5, Real(0.9), N=40, K=4)
    assert v.value == pytest.approx(v.exp_product * float(weight_g_coeffs(4, Real(0.9))(0.5)))
    # at q = 1 the product E(x) E(-x) is exactly 1
    assert weight_function_eval(1.5, real(1.0), N=60, K=3).value == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        weight_function_eval(0.5, phase(0.2))
