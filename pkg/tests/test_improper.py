import math
from fractions import Fraction

import mpmath
import pytest

from stdq.params import Real, symbolic
from stdq.qcalc.calculus import moment_closed_form
from stdq.qcalc.improper import (NonConvergentIntegralError, QuadConfig, SeriesIntegrand, accelerate,
                                 dilation_sum, euler_transform, exp_zeros, qexp_neg_coeffs, sign_changes,
                                 std_improper_integral, std_moment_integral)


def test_euler_transform_on_log2():
    terms = [Fraction(1, k + 1) for k in range(60)]      # sum (-1)^k/(k+1) = ln 2
    val, last = euler_transform(terms, 50)
    assert abs(val - mpmath.log(2)) < 1e-15
    assert abs(last) < 1e-15


@pytest.mark.parametrize("qv", [0.6, 0.9, 1.1, 1.6])
def test_dilation_sum_closed_form(qv):
    val, err = dilation_sum(Real(qv))
    assert float(val) == pytest.approx(2 / (qv + 1 / qv), rel=1e-14)


def test_dilation_sum_outside_euler_disc():
    # first-order Euler summation of sum (-q^2)^n needs q^2 < 3
    with pytest.raises(NonConvergentIntegralError):
        dilation_sum(Real(2.0))


def test_dilation_sum_needs_real_q():
    with pytest.raises(ValueError):
        dilation_sum(symbolic())
    with pytest.raises(ValueError):
        dilation_sum(Real(1.0))


def test_series_integrand_antiderivative():
    f = SeriesIntegrand([1, -2, 3], power=1, dps=30)     # x - 2x^2 + 3x^3
    assert float(f.integral(0, 2)) == pytest.approx(2 - 16 / 3 + 12)
    assert float(f(2)) == pytest.approx(2 - 8 + 24)


def test_classical_exponential_coefficients():
    c = qexp_neg_coeffs(Real(1 + 1e-12), 1, dps=30, terms=10)
    assert [float(v) for v in c] == pytest.approx([(-1) ** k / math.factorial(k) for k in range(11)])
    with pytest.raises(ValueError):
        qexp_neg_coeffs(Real(Fraction(1)), 1)


def test_sign_changes_of_cosine_like():
    with mpmath.workdps(30):
        zs = sign_changes(mpmath.cos, mpmath.mpf("0.1"), 20, 0.25, 5)
    assert [float(z) for z in zs] == pytest.approx([(k + 0.5) * math.pi for k in range(5)], abs=1e-12)


def test_accelerate_alternating_partial_sums():
    with mpmath.workdps(40):
        partial, s = [], mpmath.mpf(0)
        for k in range(30):
            s += mpmath.mpf(-1) ** k / (2 * k + 1)
            partial.append(s)
        best, gap = accelerate(partial, 8)
        assert abs(best - mpmath.pi / 4) < 1e-20


def test_zeros_of_exponential_alternate_and_grow():
    zs = exp_zeros(Real(0.9))
    assert len(zs) >= 20
    assert all(b > a for a, b in zip(zs, zs[1:]))


@pytest.mark.parametrize("qv", [0.9, 1.1])
def test_low_moments_match_closed_form(qv):
    for n in range(3):
        r = std_moment_integral(n, Real(qv))
        want = float(moment_closed_form(n, 1, Real(qv)))
        assert r.value == pytest.approx(want, rel=1e-7)
        assert r.dilation_sum == pytest.approx(2 / (qv + 1 / qv), rel=1e-14)


def test_scaled_argument():
    r = std_moment_integral(1, Real(0.9), a=Fraction(2))
    assert r.value == pytest.approx(float(moment_closed_form(1, Fraction(2), Real(0.9))), rel=1e-8)


def test_integrand_that_does_not_alternate():
    # E(+x) grows without sign changes: no lumps, no answer
    quad = QuadConfig(dps=40, guard_digits=10, x_cap=50.0, max_lumps=10, min_lumps=4, exp_terms=200)
    c = [abs(v) for v in qexp_neg_coeffs(Real(0.9), 1, quad.dps, quad.exp_terms)]
    f = SeriesIntegrand(c, 0, quad.dps)
    with pytest.raises(NonConvergentIntegralError):
        std_improper_integral(f, Real(0.9), quad=quad)
