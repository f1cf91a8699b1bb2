from fractions import Fraction

import pytest

from stdq.expr import ExprError, compile_k, parse, tokenize
from stdq.laurent import Q
from stdq.params import real, symbolic


def k(text, q=None, n=3):
    return compile_k(text)(q or symbolic(), n)


def test_precedence_and_associativity():
    assert k("1+2*3") == 7
    assert k("2^3^2") == 512
    assert k("-2^2") == -4
    assert k("(1-2)-3") == -4 and k("1-2-3") == -4
    assert k("8/2/2") == 2


def test_exact_decimals_and_variables():
    assert k("0.25*n") == Fraction(3, 4)
    assert k("q^2 - q^-1") == Q**2 - Q**-1
    assert k("(q-1)^2*n", real(Fraction(3, 2)), 4) == 1
    assert k("q**2") == Q**2
    assert k(".5") == Fraction(1, 2)


def test_tokenizer_positions():
    toks = tokenize(" q +  n")
    assert [(t.kind, t.text, t.pos) for t in toks] == [("var", "q", 1), ("op", "+", 3), ("var", "n", 6), ("end", "", 7)]


@pytest.mark.parametrize("text,pos", [("", 0), ("1 +", 3), ("q $ 2", 2), ("(1+2", 4), ("1 2", 2), ("q^0.5", 1)])
def test_errors_carry_positions(text, pos):
    with pytest.raises(ExprError) as e:
        k(text)
    assert e.value.position == pos


def test_division_by_zero_is_reported():
    with pytest.raises(ExprError) as e:
        k("1/(n-3)")
    assert e.value.position == 1


def test_parse_once():
    tree = parse("n*q")
    assert tree[0] == "*"
    assert compile_k("n*q").__name__ == "n*q"
