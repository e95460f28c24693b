"""Text syntax for differential operators.

Grammar (ASCII, whitespace insignificant between tokens):

    expr     := term (("+"|"-") term)*
    term     := ("-")? factor ("*" factor)*
    factor   := atom ("^" nat)?
    atom     := rational | var | "(" expr ")"
    var      := ("x"|"d") nat
    rational := int ("/" nat)?

Products must be written with an explicit `*` (juxtaposition is a syntax
error), exponents are non-negative integer literals, and a variable name
is a single token: `x1`, never `x 1`.  Products evaluate left-to-right in
the noncommutative ring, so parse("d1*x1") is x1*d1 + 1.

Printing emits the canonical normal form: terms in descending degrevlex
order, x-factors before d-factors inside each term, rationals as p/q.
parse(print(p), n) == p always.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExponentError, OpSyntaxError, VariableIndexError
from .weyl import DiffOp, Polynomial, mul


# ---------------------------------------------------------------------------
# tokens

_PUNCT = set("+-*^()")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "var", one of +-*^(), "eof"
    value: object
    line: int
    col: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            num = int(text[start:i])
            den = 1
            # a slash glued to digits is part of the literal; no whitespace
            if i < len(text) and text[i] == "/" and i + 1 < len(text) and text[i + 1].isdigit():
                i += 1
                dstart = i
                while i < len(text) and text[i].isdigit():
                    i += 1
                den = int(text[dstart:i])
                if den == 0:
                    raise OpSyntaxError("zero denominator in rational literal", line, col)
            tokens.append(Token("num", Fraction(num, den), line, col))
            col += i - start
            continue
        if ch in ("x", "d"):
            if i + 1 >= len(text) or not text[i + 1].isdigit():
                raise OpSyntaxError(f"expected variable index right after '{ch}'", line, col)
            start = i
            i += 1
            while i < len(text) and text[i].isdigit():
                i += 1
            idx = int(text[start + 1:i])
            tokens.append(Token("var", (ch, idx), line, col))
            col += i - start
            continue
        raise OpSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("eof", None, line, col))
    return tokens


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Num:
    value: Fraction
    line: int
    col: int


@dataclass(frozen=True)
class Var:
    kind: str  # "x" or "d"
    index: int
    line: int
    col: int


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Neg:
    child: object


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise OpSyntaxError(f"expected {kind!r}, found {_describe(tok)}", tok.line, tok.col)
        return self.advance()

    def parse_expr(self):
        node = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self):
        if self.peek().kind == "-":
            self.advance()
            node = Neg(self.parse_factor())
        else:
            node = self.parse_factor()
        while self.peek().kind == "*":
            self.advance()
            node = BinOp("*", node, self.parse_factor())
        return node

    def parse_factor(self):
        node = self.parse_atom()
        if self.peek().kind == "^":
            self.advance()
            tok = self.peek()
            if tok.kind == "-":
                raise ExponentError("negative exponent", tok.line, tok.col)
            if tok.kind != "num":
                raise OpSyntaxError(f"expected integer exponent, found {_describe(tok)}", tok.line, tok.col)
            if tok.value.denominator != 1:
                raise ExponentError("non-integer exponent", tok.line, tok.col)
            self.advance()
            node = Pow(node, int(tok.value))
        return node

    def parse_atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Num(tok.value, tok.line, tok.col)
        if tok.kind == "var":
            self.advance()
            kind, idx = tok.value
            return Var(kind, idx, tok.line, tok.col)
        if tok.kind == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        raise OpSyntaxError(f"expected a value, found {_describe(tok)}", tok.line, tok.col)


def _describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "num":
        return f"number {tok.value}"
    if tok.kind == "var":
        return f"variable {tok.value[0]}{tok.value[1]}"
    return repr(tok.kind)


def _evaluate(node, n: int, allow_d: bool) -> DiffOp:
    if isinstance(node, Num):
        return DiffOp.constant(node.value, n)
    if isinstance(node, Var):
        if not 1 <= node.index <= n:
            raise VariableIndexError(
                f"variable {node.kind}{node.index} out of range 1..{n}", node.line, node.col
            )
        if node.kind == "d":
            if not allow_d:
                raise OpSyntaxError("d-variables not allowed in a polynomial", node.line, node.col)
            return DiffOp.d(node.index, n)
        return DiffOp.x(node.index, n)
    if isinstance(node, Neg):
        return -_evaluate(node.child, n, allow_d)
    if isinstance(node, BinOp):
        left = _evaluate(node.left, n, allow_d)
        right = _evaluate(node.right, n, allow_d)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return mul(left, right)
    if isinstance(node, Pow):
        base = _evaluate(node.base, n, allow_d)
        result = DiffOp.one(n)
        for _ in range(node.exponent):
            result = mul(result, base)
        return result
    raise TypeError(f"unknown AST node {node!r}")


def parse(text: str, n: int) -> DiffOp:
    """Parse an operator expression; the result is fully normalized."""
    parser = _Parser(_tokenize(text))
    node = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "eof":
        raise OpSyntaxError(f"unexpected {_describe(tail)} after expression", tail.line, tail.col)
    return _evaluate(node, n, allow_d=True)


def parse_poly(text: str, n: int) -> Polynomial:
    """Parse a commutative polynomial (d-variables rejected)."""
    parser = _Parser(_tokenize(text))
    node = parser.parse_expr()
    tail = parser.peek()
    if tail.kind != "eof":
        raise OpSyntaxError(f"unexpected {_describe(tail)} after expression", tail.line, tail.col)
    return _evaluate(node, n, allow_d=False).coefficient_polynomial()


# ---------------------------------------------------------------------------
# printing

def _render_term(a: tuple[int, ...], b: tuple[int, ...], coeff: Fraction) -> tuple[bool, str]:
    """Return (negative, body) for one canonical term."""
    factors = []
    for i, e in enumerate(a):
        if e:
            factors.append(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}")
    for i, e in enumerate(b):
        if e:
            factors.append(f"d{i + 1}^{e}" if e > 1 else f"d{i + 1}")
    mag = -coeff if coeff < 0 else coeff
    if not factors:
        return coeff < 0, str(mag)
    body = "*".join(factors)
    if mag == 1:
        return coeff < 0, body
    return coeff < 0, f"{mag}*{body}"


def _join_terms(rendered: list[tuple[bool, str]]) -> str:
    if not rendered:
        return "0"
    parts = []
    for i, (neg, body) in enumerate(rendered):
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def print_op(p: DiffOp) -> str:
    """Canonical rendering; parse(print_op(p), p.n) == p."""
    return _join_terms([_render_term(a, b, c) for (a, b), c in p.sorted_terms()])


def print_poly(f: Polynomial) -> str:
    zero_b = (0,) * f.n
    return _join_terms([_render_term(a, zero_b, c) for a, c in f.sorted_terms()])
