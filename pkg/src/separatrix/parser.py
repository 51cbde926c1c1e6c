"""Reading and writing polynomials in x, y with Q(i) coefficients.

Grammar (whitespace is ignored)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := 'x' | 'y' | 'i' | rational | '(' expr ')'
    rational := int ('/' posint)?

Juxtaposition is not multiplication: ``2x`` is rejected, ``2*x`` is not.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from .errors import ParseError
from .gaussian import GaussRational
from .polynomial import BiPoly

_BASE_START = {"x", "y", "i", "integer", "("}


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        k = 0
        while k < len(text):
            ch = text[k]
            if ch.isspace():
                k += 1
            elif ch.isdigit():
                start = k
                while k < len(text) and text[k].isdigit():
                    k += 1
                self.tokens.append(("integer", text[start:k], start))
            elif ch in "xyi+-*/^()":
                self.tokens.append((ch, ch, k))
                k += 1
            else:
                raise ParseError(k, _BASE_START | {"+", "-", "*", "^", ")"}, text)
        self.tokens.append(("end", "", len(text)))
        self.pos = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> Tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected) -> ParseError:
        return ParseError(self.peek()[2], expected, self.text)


def parse_poly(text: str) -> BiPoly:
    lex = _Lexer(text)
    result = _expr(lex)
    if lex.peek()[0] != "end":
        raise lex.fail({"+", "-", "*", "^", "end of input"})
    return result


def _expr(lex: _Lexer) -> BiPoly:
    sign = 1
    if lex.peek()[0] in ("+", "-"):
        sign = -1 if lex.take()[0] == "-" else 1
    acc = _term(lex).scale(sign)
    while lex.peek()[0] in ("+", "-"):
        op = lex.take()[0]
        t = _term(lex)
        acc = acc + t if op == "+" else acc - t
    return acc


def _term(lex: _Lexer) -> BiPoly:
    acc = _factor(lex)
    while lex.peek()[0] == "*":
        lex.take()
        acc = acc * _factor(lex)
    return acc


def _factor(lex: _Lexer) -> BiPoly:
    base = _base(lex)
    if lex.peek()[0] == "^":
        lex.take()
        kind, value, _ = lex.peek()
        if kind != "integer":
            raise lex.fail({"integer"})
        lex.take()
        return base ** int(value)
    return base


def _base(lex: _Lexer) -> BiPoly:
    kind, value, _ = lex.peek()
    if kind == "x":
        lex.take()
        return BiPoly.x()
    if kind == "y":
        lex.take()
        return BiPoly.y()
    if kind == "i":
        lex.take()
        return BiPoly.const(GaussRational(0, 1))
    if kind == "integer":
        lex.take()
        num = int(value)
        if lex.peek()[0] == "/":
            lex.take()
            k2, v2, _ = lex.peek()
            if k2 != "integer" or int(v2) == 0:
                raise lex.fail({"positive integer"})
            lex.take()
            return BiPoly.const(Fraction(num, int(v2)))
        return BiPoly.const(num)
    if kind == "(":
        lex.take()
        inner = _expr(lex)
        if lex.peek()[0] != ")":
            raise lex.fail({")", "+", "-", "*", "^"})
        lex.take()
        return inner
    raise lex.fail(_BASE_START)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def _imag(q: Fraction) -> str:
    return "i" if q == 1 else f"{q}*i"


def _signed_coeff(c: GaussRational) -> Tuple[int, str, bool]:
    """Returns (sign, magnitude text, magnitude is one)."""
    if c.im == 0:
        return (1 if c.re > 0 else -1), str(abs(c.re)), abs(c.re) == 1
    if c.re == 0:
        return (1 if c.im > 0 else -1), _imag(abs(c.im)), False
    op = "+" if c.im > 0 else "-"
    return 1, f"({c.re} {op} {_imag(abs(c.im))})", False


def format_poly(p: BiPoly) -> str:
    """Canonical text: ascending total degree, then descending power of x."""
    if p.is_zero():
        return "0"
    order = sorted(p.terms, key=lambda e: (e[0] + e[1], -e[0]))
    out = []
    for n, (i, j) in enumerate(order):
        sign, mag, unit = _signed_coeff(p.terms[(i, j)])
        mono = _monomial(i, j)
        if mono:
            body = mono if unit else f"{mag}*{mono}"
        else:
            body = mag
        if n == 0:
            out.append(body if sign > 0 else f"-{body}")
        else:
            out.append(f"{'+' if sign > 0 else '-'} {body}")
    return " ".join(out)
