"""Parsing of polynomial / rational expressions over QQ(i).

Grammar (usual precedence, `^` for nonnegative integer powers):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-')* power
    power  := atom ('^' UINT)?
    atom   := UINT | IMAG | NAME | '(' expr ')'

`IMAG` is an integer immediately followed by `i` (`i`, `3i`); `NAME` is any
other identifier, so `i` itself cannot be a variable.  `/` builds a rational
function; `parse_mpoly` additionally requires the denominator to be constant.
The canonical renderings produced by this package parse back exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ExprParseError
from .mpoly import MPoly
from .ratfunc import RatFunc
from .scalars import GaussRat

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<imag>\d*i)(?![A-Za-z0-9_])|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ExprParseError(f"unexpected character {text[pos:pos + 1]!r}", pos)
        for kind in ("imag", "int", "name", "op"):
            val = m.group(kind)
            if val is not None:
                tokens.append(_Token(kind, val, m.start(kind)))
                break
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.k] if self.k < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ExprParseError("unexpected end of expression", len(self.text))
        self.k += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.next()
        if tok.kind != "op" or tok.text != op:
            raise ExprParseError(f"expected {op!r}, found {tok.text!r}", tok.pos)

    def parse(self) -> RatFunc:
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExprParseError(f"trailing input {tok.text!r}", tok.pos)
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "op" and tok.text in "+-":
                self.next()
                rhs = self.term()
                value = value + rhs if tok.text == "+" else value - rhs
            else:
                return value

    def term(self) -> RatFunc:
        value = self.unary()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "op" and tok.text in "*/":
                self.next()
                rhs = self.unary()
                if tok.text == "*":
                    value = value * rhs
                else:
                    if rhs.num.is_zero():
                        raise ExprParseError("division by zero", tok.pos)
                    value = value / rhs
            else:
                return value

    def unary(self) -> RatFunc:
        sign = 1
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "op" and tok.text in "+-":
                self.next()
                if tok.text == "-":
                    sign = -sign
            else:
                break
        value = self.power()
        return -value if sign < 0 else value

    def power(self) -> RatFunc:
        value = self.atom()
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == "^":
            self.next()
            etok = self.next()
            if etok.kind != "int":
                raise ExprParseError("exponent must be a nonnegative integer", etok.pos)
            value = value ** int(etok.text)
        return value

    def atom(self) -> RatFunc:
        tok = self.next()
        if tok.kind == "int":
            return RatFunc.const(GaussRat(int(tok.text)))
        if tok.kind == "imag":
            mag = tok.text[:-1]
            coeff = GaussRat(0, int(mag) if mag else 1)
            return RatFunc.const(coeff)
        if tok.kind == "name":
            return RatFunc.from_poly(MPoly.var(tok.text))
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ExprParseError(f"unexpected token {tok.text!r}", tok.pos)


def parse_ratfunc(text: str) -> RatFunc:
    """Parse a rational expression into a numerator/denominator pair."""
    return _Parser(text).parse()


def parse_mpoly(text: str) -> MPoly:
    """Parse a polynomial expression; scalar denominators are folded in."""
    rf = parse_ratfunc(text)
    if not rf.den.is_constant():
        raise ExprParseError(f"not a polynomial: {text!r}")
    return rf.num.scale(rf.den.constant_value().inverse())


def parse_gaussrat(text: str) -> GaussRat:
    """Parse a scalar literal such as `-3/4`, `i/2`, or `(1+2i)/5`."""
    p = parse_mpoly(text)
    if not p.is_constant():
        raise ExprParseError(f"not a scalar: {text!r}")
    return p.constant_value()
