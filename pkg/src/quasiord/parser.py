"""Parser for the polynomial input language.

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ['^' nat]
    base     := rational | ident | '(' expr ')'
    rational := nat ['/' nat]

Whitespace (including newlines) is insignificant; there is no implicit
multiplication.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence, Tuple

from .algebra import Poly
from .errors import ParseError, UnknownVariable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    line_starts = [0] + [m.end() for m in re.finditer(r"\n", text)]

    def where(p):
        line = 0
        for i, s in enumerate(line_starts):
            if s <= p:
                line = i
        return line + 1, p - line_starts[line] + 1

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        line, col = where(start)
        if m.group(1):
            toks.append(_Tok("nat", m.group(1), line, col))
        elif m.group(2):
            toks.append(_Tok("ident", m.group(2), line, col))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            toks.append(_Tok(ch, ch, line, col))
        pos = m.end()
    line, col = where(len(text))
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, gens: Sequence[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.gens = tuple(gens)

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = "a number" if kind == "nat" else repr(kind)
            got = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {want}, found {got}", tok.line, tok.col)
        self.i += 1
        return tok

    def expr(self) -> Poly:
        neg = False
        if self.peek().kind == "-":
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek().kind in "+-" and self.peek().kind != "eof":
            op = self.take().kind
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek().kind == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        b = self.base()
        if self.peek().kind == "^":
            self.take()
            k = int(self.take("nat").text)
            b = b ** k
        return b

    def base(self) -> Poly:
        tok = self.peek()
        if tok.kind == "nat":
            self.take()
            num = int(tok.text)
            if self.peek().kind == "/":
                self.take()
                den_tok = self.take("nat")
                den = int(den_tok.text)
                if den == 0:
                    raise ParseError("zero denominator", den_tok.line, den_tok.col)
                return Poly.const(self.gens, Fraction(num, den))
            return Poly.const(self.gens, num)
        if tok.kind == "ident":
            self.take()
            if tok.text not in self.gens:
                raise UnknownVariable(f"unknown variable {tok.text!r}", tok.line, tok.col)
            return Poly.var(self.gens, tok.text)
        if tok.kind == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        got = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"expected a number, variable or '(', found {got}", tok.line, tok.col)


def parse_polynomial(text: str, gens: Sequence[str]) -> Poly:
    """Parse ``text`` into a polynomial over the ordered variables ``gens``."""
    p = _Parser(text, gens)
    result = p.expr()
    tok = p.peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)
    return result
