"""Parsing and printing of operator expressions and instance files.

Entry syntax: sums of terms over the atoms ``t`` and ``D`` with integer or
rational constants, ``*`` for products, ``/`` for division by a D-free
factor, ``^`` for integer powers, and parentheses.  Examples::

    1 + (t+2)*D + D^2
    2*t + t^2 + t*D
    (-1/2)/(t)*D

Instance files are UTF-8 text: a header line ``n m [euler]`` followed by n
rows of m ``;``-separated entries.  ``#`` starts a comment that runs to the
end of the line.  Printing is canonical (ascending D-powers, reduced monic
denominators) and round-trips through the parser.
"""

from __future__ import annotations

from typing import List, NamedTuple, Optional, Tuple

from .errors import ParseError
from .field import Derivation, Rat, RatFun
from .matrix_elim import OreMatrix
from .ore import OrePoly, format_ore


class _Token(NamedTuple):
    kind: str  # 'int' | 'name' | 'op'
    text: str
    column: int


_OPS = set("+-*/^();")


def _tokenize(text: str, line: int = 0) -> List[_Token]:
    out: List[_Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            break
        col = i + 1
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(_Token("int", text[i:j], col))
            i = j
        elif c.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            out.append(_Token("name", text[i:j], col))
            i = j
        elif c in _OPS:
            out.append(_Token("op", c, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", line, col)
    return out


class _EntryParser:
    """Precedence-climbing parser producing OrePoly values directly."""

    def __init__(self, tokens: List[_Token], derivation: Derivation, line: int = 0):
        self.tokens = tokens
        self.pos = 0
        self.derivation = derivation
        self.line = line

    def _peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> _Token:
        tok = self._peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.line,
                             self.tokens[-1].column if self.tokens else 0)
        self.pos += 1
        return tok

    def _error(self, message: str, tok: Optional[_Token]) -> ParseError:
        return ParseError(message, self.line, tok.column if tok else 0)

    def parse(self) -> OrePoly:
        value = self._expr(0)
        tok = self._peek()
        if tok is not None:
            raise self._error(f"unexpected token {tok.text!r}", tok)
        return value

    # precedence: 0 additive, 1 multiplicative, 2 power
    def _expr(self, min_prec: int) -> OrePoly:
        value = self._atom()
        while True:
            tok = self._peek()
            if tok is None or tok.kind != "op":
                return value
            op = tok.text
            if op in "+-":
                prec = 0
            elif op in "*/":
                prec = 1
            elif op == "^":
                prec = 2
            else:
                return value
            if prec < min_prec:
                return value
            self._next()
            if op == "^":
                rhs_tok = self._next()
                if rhs_tok.kind != "int":
                    raise self._error("exponent must be an integer", rhs_tok)
                value = self._power(value, int(rhs_tok.text), rhs_tok)
                continue
            rhs = self._expr(prec + 1)
            if op == "+":
                value = value + rhs
            elif op == "-":
                value = value - rhs
            elif op == "*":
                value = value * rhs
            else:
                value = self._divide(value, rhs, tok)
        # unreachable

    def _power(self, base: OrePoly, exponent: int, tok: _Token) -> OrePoly:
        if exponent < 0:
            raise self._error("negative exponents are not supported", tok)
        out = OrePoly.one(self.derivation)
        for _ in range(exponent):
            out = out * base
        return out

    def _divide(self, num: OrePoly, den: OrePoly, tok: _Token) -> OrePoly:
        if den.is_zero:
            raise self._error("division by zero", tok)
        if den.deg != 0:
            raise self._error("divisor must be free of D", tok)
        return num.left_scale(den.coeffs[0].inverse())

    def _atom(self) -> OrePoly:
        tok = self._next()
        if tok.kind == "int":
            return OrePoly.scalar(Rat(int(tok.text)), self.derivation)
        if tok.kind == "name":
            if tok.text == "t":
                return OrePoly.scalar(RatFun((0, 1)), self.derivation)
            if tok.text == "D":
                return OrePoly.d_power(1, self.derivation)
            raise self._error(f"unknown symbol {tok.text!r}", tok)
        if tok.text == "(":
            value = self._expr(0)
            closer = self._next()
            if closer.text != ")":
                raise self._error("expected ')'", closer)
            return value
        if tok.text == "-":
            return -self._atom_with_power()
        if tok.text == "+":
            return self._atom_with_power()
        raise self._error(f"unexpected token {tok.text!r}", tok)

    def _atom_with_power(self) -> OrePoly:
        # a unary sign binds to the full power/product chain of its operand
        return self._expr(1)


def parse_entry(text: str, derivation: Derivation = Derivation.STANDARD,
                line: int = 0) -> OrePoly:
    """Parse one operator entry; raises ParseError with line/column info."""
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError("empty entry", line, 1)
    return _EntryParser(tokens, derivation, line).parse()


def print_entry(f: OrePoly) -> str:
    """Canonical text for an operator; ``parse_entry`` inverts it."""
    return format_ore(f)


class Instance(NamedTuple):
    """A parsed instance file: the matrix plus its derivation tag."""

    matrix: OreMatrix
    derivation: Derivation


def parse_instance(text: str) -> Instance:
    """Parse an instance file (header ``n m [euler]`` plus entry rows)."""
    lines = text.splitlines()
    header: Optional[Tuple[int, int, Derivation]] = None
    rows: List[List[OrePoly]] = []
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if header is None:
            parts = body.split()
            if len(parts) not in (2, 3):
                raise ParseError("header must be 'n m [euler]'", lineno, 1)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("header dimensions must be integers", lineno, 1)
            if n < 1 or m < 1:
                raise ParseError("dimensions must be positive", lineno, 1)
            deriv = Derivation.STANDARD
            if len(parts) == 3:
                if parts[2] != "euler":
                    raise ParseError(f"unknown derivation tag {parts[2]!r}", lineno, 1)
                deriv = Derivation.EULER
            header = (n, m, deriv)
            continue
        n, m, deriv = header
        cells = body.split(";")
        if len(cells) != m:
            raise ParseError(f"expected {m} entries, found {len(cells)}", lineno, 1)
        rows.append([parse_entry(cell, deriv, lineno) for cell in cells])
    if header is None:
        raise ParseError("missing header line", 1, 1)
    n, m, deriv = header
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}", len(lines), 1)
    return Instance(OreMatrix(rows), deriv)


def format_instance(matrix: OreMatrix) -> str:
    """Serialize a matrix in the instance file format."""
    tag = " euler" if matrix.derivation is Derivation.EULER else ""
    lines = [f"{matrix.rows} {matrix.cols}{tag}"]
    for row in matrix.entries:
        lines.append(" ; ".join(print_entry(e) for e in row))
    return "\n".join(lines) + "\n"
