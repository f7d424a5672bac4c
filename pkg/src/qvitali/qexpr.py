"""A small expression language over the deformed operations.

Grammar::

    expr   := term (("o+" | "o-") term)*
    term   := factor (("o*" | "o/") factor)*
    factor := number | "(" expr ")" | funcname "(" expr ")"

Numbers are exact: ``3``, ``-1/2``, ``0.25``, ``1e-3``.  A sign directly in
front of a digit always belongs to the literal, since no bare ``+``/``-``
operator exists.  ``⊕ ⊖ ⊗ ⊘`` are accepted as aliases for the ASCII forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import qalgebra
from .errors import LexError, ModeError, ParseError
from .qalgebra import QParam

BINARY_KINDS = ("qplus", "qminus", "qtimes", "qdiv")
FUNCTIONS = ("qexp", "qlog", "dn")

_SPELLING = {"qplus": "o+", "qminus": "o-", "qtimes": "o*", "qdiv": "o/"}
_ALIASES = {"⊕": "qplus", "⊖": "qminus", "⊗": "qtimes", "⊘": "qdiv"}
_OPERATORS = {sym: kind for kind, sym in _SPELLING.items()}

_NUMBER = re.compile(r"[+-]?(?:\d+/\d+|(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    position: int  # 1-based column


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        col = i + 1
        if ch.isspace():
            i += 1
        elif text.startswith(tuple(_OPERATORS), i):
            lexeme = text[i : i + 2]
            tokens.append(Token(_OPERATORS[lexeme], lexeme, col))
            i += 2
        elif ch in _ALIASES:
            tokens.append(Token(_ALIASES[ch], ch, col))
            i += 1
        elif ch in "()":
            tokens.append(Token("lparen" if ch == "(" else "rparen", ch, col))
            i += 1
        elif m := _NUMBER.match(text, i):
            lexeme = m.group(0)
            if "/" in lexeme and int(lexeme.rsplit("/", 1)[1]) == 0:
                raise LexError(f"zero denominator in {lexeme!r}", col)
            tokens.append(Token("number", lexeme, col))
            i = m.end()
        elif m := _NAME.match(text, i):
            name = m.group(0)
            if name not in FUNCTIONS:
                raise LexError(f"unknown name {name!r}", col)
            tokens.append(Token("funcname", name, col))
            i = m.end()
        else:
            raise LexError(f"unexpected character {ch!r}", col)
    return tokens


@dataclass(frozen=True)
class Literal:
    value: Fraction


@dataclass(frozen=True)
class Binary:
    op: str
    left: "ExprNode"
    right: "ExprNode"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "ExprNode"


ExprNode = Union[Literal, Binary, Call]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def end_column(self) -> int:
        if not self.tokens:
            return 1
        last = self.tokens[-1]
        return last.position + len(last.lexeme)

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            col = tok.position if tok else self.end_column()
            raise ParseError(f"expected {what}", col)
        self.i += 1
        return tok

    def expr(self) -> ExprNode:
        node = self.term()
        while (tok := self.peek()) and tok.kind in ("qplus", "qminus"):
            self.i += 1
            node = Binary(tok.kind, node, self.term())
        return node

    def term(self) -> ExprNode:
        node = self.factor()
        while (tok := self.peek()) and tok.kind in ("qtimes", "qdiv"):
            self.i += 1
            node = Binary(tok.kind, node, self.factor())
        return node

    def factor(self) -> ExprNode:
        tok = self.peek()
        if tok is None:
            raise ParseError("expected factor", self.end_column())
        if tok.kind == "number":
            self.i += 1
            return Literal(Fraction(tok.lexeme))
        if tok.kind == "lparen":
            self.i += 1
            node = self.expr()
            self.expect("rparen", "')'")
            return node
        if tok.kind == "funcname":
            self.i += 1
            self.expect("lparen", f"'(' after {tok.lexeme}")
            arg = self.expr()
            self.expect("rparen", "')'")
            return Call(tok.lexeme, arg)
        raise ParseError(f"expected factor, found {tok.lexeme!r}", tok.position)


def parse(tokens: list[Token] | str) -> ExprNode:
    """Parse a token list (or source text) into an expression tree."""
    if isinstance(tokens, str):
        tokens = tokenize(tokens)
    p = _Parser(tokens)
    node = p.expr()
    if (tok := p.peek()) is not None:
        raise ParseError(f"expected operator or end of input, found {tok.lexeme!r}", tok.position)
    return node


_PRECEDENCE = {"qplus": 1, "qminus": 1, "qtimes": 2, "qdiv": 2}


def to_source(node: ExprNode) -> str:
    """Render ``node`` with the minimal parentheses that parse back to it."""
    if isinstance(node, Literal):
        return str(node.value)
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    prec = _PRECEDENCE[node.op]
    left = to_source(node.left)
    if isinstance(node.left, Binary) and _PRECEDENCE[node.left.op] < prec:
        left = f"({left})"
    right = to_source(node.right)
    if isinstance(node.right, Binary) and _PRECEDENCE[node.right.op] <= prec:
        right = f"({right})"
    return f"{left} {_SPELLING[node.op]} {right}"


_FLOAT_BINARY = {
    "qplus": qalgebra.q_sum,
    "qminus": qalgebra.q_diff,
    "qtimes": qalgebra.q_prod,
    "qdiv": qalgebra.q_div,
}
_FLOAT_CALL = {"qexp": qalgebra.q_exp, "qlog": qalgebra.q_log, "dn": qalgebra.deformed}


def evaluate(node: ExprNode, q, mode: str = "exact"):
    """Evaluate ``node`` at deformation ``q``.

    ``mode="exact"`` returns a :class:`Fraction` and accepts only ``o+`` and
    ``o-``; ``mode="float"`` evaluates every operation in binary64.
    """
    q = QParam.of(q)
    if mode == "exact":
        if not is_exact(node):
            raise ModeError("exact mode accepts only o+ and o-; use float mode")
        return _eval_exact(node, q)
    if mode == "float":
        return _eval_float(node, q)
    raise ValueError(f"unknown mode {mode!r}")


def _eval_exact(node: ExprNode, q: QParam) -> Fraction:
    if isinstance(node, Literal):
        return node.value
    if isinstance(node, Call):
        raise ModeError(f"{node.func}() is not exact; use float mode")
    if node.op == "qplus":
        return qalgebra.q_sum(_eval_exact(node.left, q), _eval_exact(node.right, q), q)
    if node.op == "qminus":
        return qalgebra.q_diff(_eval_exact(node.left, q), _eval_exact(node.right, q), q)
    raise ModeError(f"{_SPELLING[node.op]} is not closed over the rationals; use float mode")


def _eval_float(node: ExprNode, q: QParam) -> float:
    if isinstance(node, Literal):
        return float(node.value)
    if isinstance(node, Call):
        return float(_FLOAT_CALL[node.func](_eval_float(node.arg, q), q))
    left, right = _eval_float(node.left, q), _eval_float(node.right, q)
    return float(_FLOAT_BINARY[node.op](left, right, q))


def is_exact(node: ExprNode) -> bool:
    if isinstance(node, Literal):
        return True
    if isinstance(node, Call):
        return False
    return node.op in ("qplus", "qminus") and is_exact(node.left) and is_exact(node.right)
