"""Text form of polynomials.

Grammar (single line, 1-based columns in errors)::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor ("*"? factor)*          -- adjacency is multiplication
    factor := coeff | var | factor "^" nat | "(" expr ")"
    coeff  := int ["/" nat]

Variables are single letters from the configured set (default x, y, z, t);
``xt^2`` therefore parses as x*t^2.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .poly import Polynomial, format_polynomial

DEFAULT_VARIABLES: tuple[str, ...] = ("x", "y", "z", "t")


class _Token:
    __slots__ = ("kind", "text", "column")

    def __init__(self, kind: str, text: str, column: int):
        self.kind = kind
        self.text = text
        self.column = column


def _tokenize(text: str, variables: Sequence[str]) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        col = i + 1
        if ch.isspace():
            if ch == "\n":
                raise ParseError("unexpected newline", 1, col)
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], col))
            i = j
            continue
        if ch.isalpha():
            if ch not in variables:
                raise ParseError(f"unknown variable {ch!r}", 1, col)
            tokens.append(_Token("var", ch, col))
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(_Token(ch, ch, col))
            i += 1
            continue
        raise ParseError(f"invalid character {ch!r}", 1, col)
    tokens.append(_Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], variables: tuple[str, ...]):
        self.tokens = tokens
        self.pos = 0
        self.variables = variables

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str) -> _Token:
        token = self.peek()
        if token.kind != kind:
            raise ParseError(f"expected {kind!r}, found {token.text or 'end of input'!r}", 1, token.column)
        return self.take()

    def parse_expr(self) -> Polynomial:
        sign = 1
        if self.peek().kind in "+-":
            sign = -1 if self.take().kind == "-" else 1
        total = self.parse_term() * sign
        while self.peek().kind in "+-":
            op = self.take().kind
            term = self.parse_term()
            total = total + term if op == "+" else total - term
        return total

    def parse_term(self) -> Polynomial:
        total = self.parse_power()
        while True:
            nxt = self.peek()
            if nxt.kind == "*":
                self.take()
                total = total * self.parse_power()
            elif nxt.kind in ("int", "var", "("):
                total = total * self.parse_power()
            else:
                return total

    def parse_power(self) -> Polynomial:
        base = self.parse_atom()
        while self.peek().kind == "^":
            self.take()
            token = self.expect("int")
            base = base ** int(token.text)
        return base

    def parse_atom(self) -> Polynomial:
        token = self.peek()
        if token.kind == "int":
            self.take()
            value = Fraction(int(token.text))
            if self.peek().kind == "/":
                self.take()
                denom = self.expect("int")
                if int(denom.text) == 0:
                    raise ParseError("zero denominator", 1, denom.column)
                value = value / int(denom.text)
            return Polynomial.constant(self.variables, value)
        if token.kind == "var":
            self.take()
            return Polynomial.variable(token.text, self.variables)
        if token.kind == "(":
            self.take()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise ParseError(
            f"expected a coefficient, variable or '(', found {token.text or 'end of input'!r}",
            1,
            token.column,
        )


def parse_polynomial(
    text: str, variables: Sequence[str] = DEFAULT_VARIABLES
) -> Polynomial:
    """Parse ``text`` into a Polynomial over the given ordered variables."""
    variables = tuple(variables)
    tokens = _tokenize(text, variables)
    parser = _Parser(tokens, variables)
    result = parser.parse_expr()
    end = parser.peek()
    if end.kind != "end":
        raise ParseError(f"trailing input {end.text!r}", 1, end.column)
    return result


# short alias used throughout the test-suite
parse = parse_polynomial
