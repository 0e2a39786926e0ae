"""Shared expression grammar for scalars, coefficients and operators.

::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary | unary)*     juxtaposition = product
    unary   := "-" unary | power
    power   := atom ("^" exponent)?
    exponent:= ["-"] INT | "(" ["-"] INT ")"
    atom    := INT | IDENT | "(" expr ")"

Products and quotients associate to the left and keep the written order
(operators do not commute).  ``P / c`` divides on the left by the
coefficient ``c``.  Unary minus binds tighter than products.

Matrices are written as bracketed rows: ``[a, b] [c, d]`` (an outer pair of
brackets, ``[[a, b], [c, d]]``, is also accepted).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, UnknownSymbol

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),\[\];]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "end"
    text: str
    line: int
    col: int


def tokenize(src: str, line: int = 1, col: int = 1):
    toks = []
    pos = 0
    n = len(src)
    while pos < n:
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col + pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(Token(kind, m.group(kind), line, col + start))
        pos = m.end()
    toks.append(Token("end", "", line, col + n))
    return toks


class Parser:
    def __init__(self, src: str, line: int = 1, col: int = 1):
        self.toks = tokenize(src, line, col)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def _expect(self, text):
        t = self.tok
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return self._next()

    def _error(self, msg):
        t = self.tok
        raise ParseError(msg, t.line, t.col)

    def at_end(self):
        return self.tok.kind == "end"

    def parse(self):
        node = self.expr()
        if not self.at_end():
            self._error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = self._next().text
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def _starts_atom(self):
        t = self.tok
        return t.kind in ("int", "ident") or t.text == "("

    def term(self):
        node = self.unary()
        while True:
            if self.tok.text in ("*", "/"):
                op = self._next().text
                rhs = self.unary()
                node = ("mul" if op == "*" else "div", node, rhs)
            elif self._starts_atom():
                node = ("mul", node, self.unary())
            else:
                return node

    def unary(self):
        if self.tok.text == "-":
            self._next()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.tok.text == "^":
            self._next()
            node = ("pow", node, self.exponent())
        return node

    def exponent(self):
        paren = self.tok.text == "("
        if paren:
            self._next()
        sign = 1
        if self.tok.text == "-":
            self._next()
            sign = -1
        t = self.tok
        if t.kind != "int":
            self._error("exponent must be an integer")
        self._next()
        if paren:
            self._expect(")")
        return sign * int(t.text)

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self._next()
            return ("num", int(t.text))
        if t.kind == "ident":
            self._next()
            return ("sym", t.text, t.line, t.col)
        if t.text == "(":
            self._next()
            node = self.expr()
            self._expect(")")
            return node
        self._error(f"unexpected {t.text or 'end of input'!r}")

    # matrices -------------------------------------------------------------
    def matrix(self):
        """Bracketed rows of comma-separated expressions."""
        outer = False
        if self.tok.text == "[" and self.toks[self.i + 1].text == "[":
            self._next()
            outer = True
        rows = []
        while self.tok.text == "[":
            start = self.tok
            self._next()
            row = [self.expr()]
            while self.tok.text == ",":
                self._next()
                row.append(self.expr())
            self._expect("]")
            if rows and len(row) != len(rows[0]):
                raise ParseError(
                    f"row has {len(row)} entries, expected {len(rows[0])}", start.line, start.col
                )
            rows.append(row)
            if outer and self.tok.text == ",":
                self._next()
        if outer:
            self._expect("]")
        if not rows:
            self._error("expected a bracketed matrix row")
        if not self.at_end():
            self._error(f"unexpected {self.tok.text!r}")
        return rows


def parse(src: str, line: int = 1, col: int = 1):
    return Parser(src, line, col).parse()


def parse_matrix(src: str, line: int = 1, col: int = 1):
    return Parser(src, line, col).matrix()


def evaluate(node, symbols, const):
    """Evaluate an AST.  ``symbols`` maps names to values; ``const(n)`` lifts
    integers.  Values combine with Python's arithmetic operators."""
    kind = node[0]
    if kind == "num":
        return const(node[1])
    if kind == "sym":
        name = node[1]
        if name not in symbols:
            raise UnknownSymbol(f"{node[2]}:{node[3]}: unknown symbol {name!r}")
        return symbols[name]
    if kind == "neg":
        return -evaluate(node[1], symbols, const)
    if kind == "pow":
        return evaluate(node[1], symbols, const) ** node[2]
    a = evaluate(node[1], symbols, const)
    b = evaluate(node[2], symbols, const)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"bad node {kind!r}")


def symbols_in(node):
    """Names referenced by an AST."""
    if node[0] == "sym":
        return {node[1]}
    if node[0] == "num":
        return set()
    out = set()
    for child in node[1:]:
        if isinstance(child, tuple):
            out |= symbols_in(child)
    return out
