import math
from fractions import Fraction

import pytest

from stdq.laurent import Q
from stdq.params import ONE, Phase, Real, phase, phase_pi, symbolic
from stdq.scalar import close, evaluate, from_json, is_exact, is_zero, magnitude, to_json


def test_real_validation():
    assert Real(2).q == Fraction(2) and Real(2).exact
    assert not Real(0.5).exact
    for bad in (0, -1, 0.0, float("inf")):
        with pytest.raises(ValueError):
            Real(bad)
    with pytest.raises(TypeError):
        Real("2")


def test_phase_exact_quarter_turns():
    q = phase_pi(Fraction(1, 2))
    assert q.pow(1) == 1j and q.pow(2) == -1 and q.pow(4) == 1
    assert phase_pi(Fraction(1, 3)).pow(3) == -1
    with pytest.raises(ValueError):
        Phase(4.0)


def test_phase_power_matches_exp():
    q = phase(0.3)
    assert abs(q.pow(7) - complex(math.cos(2.1), math.sin(2.1))) < 1e-15


def test_inverse():
    assert Real(Fraction(2, 3)).inverse() == Real(Fraction(3, 2))
    assert phase_pi(Fraction(1, 4)).inverse().theta_pi == Fraction(-1, 4)
    assert symbolic().inverse().pow(1) == Q**-1
    assert ONE.is_one()


def test_scalar_helpers():
    assert is_exact(Fraction(1, 2)) and is_exact(Q) and not is_exact(0.5)
    assert is_zero(Q - Q) and is_zero(1e-14, 1e-12) and not is_zero(Fraction(1, 10**9))
    assert magnitude(2 * Q - 3) == 5
    assert close(1.0, 1.0 + 1e-13) and not close(Fraction(1), Fraction(1, 10**20) + 1)
    assert evaluate(Q**2 + 1, Real(Fraction(2))) == 5


@pytest.mark.parametrize("x", [Fraction(3, 4), 2.5, 1 + 2j, Q**2 - Fraction(1, 3) * Q**-1, (Q + 2) / (Q**2 + 1)])
def test_json_round_trip(x):
    back = from_json(to_json(x))
    assert back == x or (isinstance(x, Fraction) and back == Q * 0 + x)
