"""Text grammar for polynomial and rational-function coefficients.

Accepted tokens: integers, variable names ``[A-Za-z_][A-Za-z0-9_]*``,
operators ``+ - * / ^`` and parentheses; whitespace is insignificant.
Rational literals like ``3/4`` are just division, so ``poly/poly`` strings
parse to rational functions with the same grammar.
"""

import re
from fractions import Fraction

from ..errors import ValidationError
from .poly import Poly, RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([()+\-*/^]))")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.i = 0

    def _location(self, pos: int) -> str:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return f"line {line}, column {col}"

    def _scan(self):
        pos = 0
        while pos < len(self.text):
            m = _TOKEN.match(self.text, pos)
            if not m:
                if self.text[pos:].strip() == "":
                    break
                raise ValidationError(
                    f"unexpected character {self.text[pos:].strip()[0]!r} at {self._location(pos)}")
            if m.group(1):
                self.tokens.append(("int", int(m.group(1)), m.start(1)))
            elif m.group(2):
                self.tokens.append(("name", m.group(2), m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg: str, tok):
        raise ValidationError(f"{msg} at {self._location(tok[2])}")


class _Parser:
    def __init__(self, text: str, variables):
        self.lex = _Lexer(text)
        self.variables = tuple(variables)

    def parse(self) -> RationalFunction:
        value = self.expr()
        tok = self.lex.peek()
        if tok[0] != "end":
            self.lex.error(f"trailing input {tok[1]!r}", tok)
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while True:
            tok = self.lex.peek()
            if tok[:2] == ("op", "+"):
                self.lex.next()
                value = value + self.term()
            elif tok[:2] == ("op", "-"):
                self.lex.next()
                value = value - self.term()
            else:
                return value

    def term(self) -> RationalFunction:
        value = self.unary()
        while True:
            tok = self.lex.peek()
            if tok[:2] == ("op", "*"):
                self.lex.next()
                value = value * self.unary()
            elif tok[:2] == ("op", "/"):
                self.lex.next()
                divisor = self.unary()
                if divisor.is_zero():
                    self.lex.error("division by zero", tok)
                value = value / divisor
            else:
                return value

    def unary(self) -> RationalFunction:
        tok = self.lex.peek()
        if tok[:2] == ("op", "-"):
            self.lex.next()
            return -self.unary()
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        tok = self.lex.peek()
        if tok[:2] == ("op", "^"):
            self.lex.next()
            etok = self.lex.next()
            if etok[0] != "int":
                self.lex.error("exponent must be a nonnegative integer", etok)
            n = etok[1]
            out = RationalFunction.constant(1, self.variables)
            for _ in range(n):
                out = out * base
            return out
        return base

    def atom(self) -> RationalFunction:
        tok = self.lex.next()
        if tok[0] == "int":
            return RationalFunction.constant(Fraction(tok[1]), self.variables)
        if tok[0] == "name":
            if tok[1] not in self.variables:
                self.lex.error(f"unknown variable {tok[1]!r}", tok)
            return RationalFunction.from_poly(Poly.variable(tok[1], self.variables))
        if tok[:2] == ("op", "("):
            value = self.expr()
            closing = self.lex.next()
            if closing[:2] != ("op", ")"):
                self.lex.error("expected ')'", closing)
            return value
        self.lex.error(f"unexpected token {tok[1]!r}", tok)


def parse_rational(text: str, variables) -> RationalFunction:
    """Parse text to a rational function over the declared variables."""
    if not isinstance(text, str) or not text.strip():
        raise ValidationError("empty coefficient expression")
    return _Parser(text, variables).parse()


def parse_poly(text: str, variables) -> Poly:
    """Parse text that must denote a polynomial (constant denominator)."""
    value = parse_rational(text, variables)
    if not value.is_polynomial():
        raise ValidationError(f"expected a polynomial, got denominator {value.den}")
    return value.as_poly()
