"""Polynomial expression grammar: tokenizer, AST, evaluation and printing.

Grammar (``docs/grammar.md`` is the normative copy)::

    expr     := term (("+" | "-") term)*
    term     := unary ("*" unary)*
    unary    := "-" unary | power
    power    := atom ("^" exponent)?
    exponent := "-"? atom ("^" exponent)?     (must evaluate to an integer >= 0)
    atom     := NUMBER | IDENT | "(" expr ")"
    NUMBER   := DIGITS ("/" DIGITS)?

``^`` binds tightest and is right-associative; unary minus binds tighter
than ``*``. ``**`` is accepted as a synonym of ``^``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import Poly
from .scalars import COMPLEX, REAL, I

RESERVED_PARAM = "t"
IMAGINARY_UNIT = "i"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>\*\*|[-+*^()])"
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ws":
            for k, ch in enumerate(chunk):
                if ch == "\n":
                    line += 1
                    line_start = pos + k + 1
        else:
            if kind == "op" and chunk == "**":
                chunk = "^"
            if kind == "num" and "/" in chunk and int(chunk.split("/")[1]) == 0:
                raise ParseError("zero denominator", line, col)
            tokens.append(Token(kind, chunk, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str
    line: int = 0
    column: int = 0


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: object


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.take()
        if tok.text != text:
            what = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {text!r}, found {what}", tok.line, tok.column)
        return tok

    def parse(self):
        if self.peek().kind == "eof":
            tok = self.peek()
            raise ParseError("empty expression", tok.line, tok.column)
        node = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
        return node

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().text == "*":
            self.take()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self):
        if self.peek().text == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            return Pow(base, self.exponent())
        return base

    def exponent(self):
        if self.peek().text == "-":
            self.take()
            return Neg(self.exponent())
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            return Pow(base, self.exponent())
        return base

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return Num(Fraction(tok.text))
        if tok.kind == "ident":
            return Var(tok.text, tok.line, tok.column)
        if tok.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"unexpected {what}", tok.line, tok.column)


def parse_expr(text: str):
    """Parse text into an AST without resolving identifiers."""
    return _Parser(text).parse()


def _idents(node, out):
    if isinstance(node, Var):
        out.append(node)
    elif isinstance(node, Neg):
        _idents(node.operand, out)
    elif isinstance(node, BinOp):
        _idents(node.left, out)
        _idents(node.right, out)
    elif isinstance(node, Pow):
        _idents(node.base, out)
        _idents(node.exponent, out)
    return out


def _eval(node, vars, field):
    if isinstance(node, Num):
        return Poly.constant(vars, node.value, field)
    if isinstance(node, Var):
        if node.name == IMAGINARY_UNIT and field == COMPLEX and node.name not in vars:
            return Poly.constant(vars, I, field)
        return Poly.var(vars, node.name, field)
    if isinstance(node, Neg):
        return -_eval(node.operand, vars, field)
    if isinstance(node, BinOp):
        a = _eval(node.left, vars, field)
        b = _eval(node.right, vars, field)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    if isinstance(node, Pow):
        e = _eval(node.exponent, vars, field)
        if not e.is_constant():
            raise ValueError("exponent must be a constant")
        n = e.constant_term()
        if not isinstance(n, Fraction) or n.denominator != 1 or n < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {n}")
        return _eval(node.base, vars, field) ** int(n)
    raise TypeError(node)


def parse_poly(text: str, vars: Sequence[str], field: str = REAL, allow_t: bool = True) -> Poly:
    """Parse ``text`` into a Poly over ``vars``.

    The parameter name ``t`` is always accepted; if it is not declared it is
    appended to the variable list. ``i`` denotes the imaginary unit and is
    only legal in complex mode.
    """
    vars = tuple(vars)
    if field == COMPLEX and IMAGINARY_UNIT in vars:
        raise ValueError("'i' cannot be a variable name in complex mode")
    ast = parse_expr(text)
    used_t = False
    for v in _idents(ast, []):
        if v.name in vars:
            continue
        if v.name == IMAGINARY_UNIT:
            if field != COMPLEX:
                raise ParseError("imaginary unit 'i' requires complex field mode", v.line, v.column)
            continue
        if v.name == RESERVED_PARAM and allow_t:
            used_t = True
            continue
        raise ParseError(f"undeclared identifier {v.name!r}", v.line, v.column)
    if used_t:
        vars = vars + (RESERVED_PARAM,)
    try:
        return _eval(ast, vars, field)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from exc


def format_poly(p: Poly) -> str:
    return p.to_str()


def parse_list(text: str, vars: Sequence[str], field: str = REAL) -> list[Poly]:
    """Comma-separated expressions, e.g. an arc literal ``"t, 0, t^2"``."""
    return [parse_poly(chunk, vars, field, allow_t=False) for chunk in _split_commas(text)]


def _split_commas(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts
