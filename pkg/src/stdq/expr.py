"""A tiny arithmetic language for user-supplied K(q, n).

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          right associative, binds tighter than unary minus
    atom   := NUMBER | 'q' | 'n' | '(' expr ')'

Numbers are read exactly (``0.25`` is 1/4) so symbolic q stays exact.
Exponents must evaluate to integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

from .params import QParam

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([qn])|(\*\*|[-+*/^()]))")


class ExprError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True)
class Token:
    kind: str      # "num", "var", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out, i = [], 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ExprError(f"unexpected character {text[i]!r}", i)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Token("num", m.group(1), start))
        elif m.group(2):
            out.append(Token("var", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(Token("op", op, start))
        i = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str):
        t = self.take()
        if t.kind != "op" or t.text != op:
            raise ExprError(f"expected {op!r}", t.pos)

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ExprError(f"unexpected {t.text!r}", t.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            t = self.take()
            node = (t.text, t.pos, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            t = self.take()
            node = (t.text, t.pos, node, self.unary())
        return node

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            self.take()
            return ("neg", t.pos, self.unary())
        if t.kind == "op" and t.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text == "^":
            self.take()
            return ("^", t.pos, base, self.unary())
        return base

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return ("num", t.pos, Fraction(t.text))
        if t.kind == "var":
            return ("var", t.pos, t.text)
        if t.kind == "op" and t.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "end":
            raise ExprError("unexpected end of expression", t.pos)
        raise ExprError(f"unexpected {t.text!r}", t.pos)


def parse(text: str):
    if not text.strip():
        raise ExprError("empty expression", 0)
    return _Parser(text).parse()


def _as_int(v, pos: int) -> int:
    try:
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        if isinstance(v, int):
            return v
        if isinstance(v, float) and v.is_integer():
            return int(v)
    except (TypeError, ValueError):
        pass
    raise ExprError("exponent must be an integer", pos)


def evaluate(node, q: QParam, n: int):
    kind, pos = node[0], node[1]
    if kind == "num":
        return node[2]
    if kind == "var":
        return q.pow(1) if node[2] == "q" else Fraction(n)
    if kind == "neg":
        return -evaluate(node[2], q, n)
    a = evaluate(node[2], q, n)
    b = evaluate(node[3], q, n)
    if kind == "+":
        return a + b
    if kind == "-":
        return a - b
    if kind == "*":
        return a * b
    if kind == "/":
        try:
            return a / b
        except ZeroDivisionError:
            raise ExprError("division by zero", pos) from None
    if kind == "^":
        e = _as_int(b, pos)
        if node[2][0] == "var" and node[2][2] == "q":
            return q.pow(e)
        return a ** e
    raise ExprError(f"unknown node {kind}", pos)


def compile_k(text: str) -> Callable:
    """Parse once; return K(q, n) usable by the quasi-Fibonacci builder."""
    tree = parse(text)

    def K(q: QParam, n: int):
        return evaluate(tree, q, n)

    K.__name__ = text
    return K
