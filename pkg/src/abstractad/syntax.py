"""Concrete syntax: a tokenizer, a recursive-descent parser and a printer.

Grammar::

    expr   := "let" ident "=" expr "in" expr | sum
    sum    := prod (("+"|"-") prod)*
    prod   := unary ("*" unary)*
    unary  := "-" unary | "sin" "(" expr ")" | "cos" "(" expr ")" | atom
    atom   := integer | ident | "(" expr ")"
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .expr import (
    Cos, Expr, Let, Neg, One, Plus, Sin, Times, Var, VarRegistry, Zero,
    const_lit,
)

RESERVED = frozenset({"let", "in", "sin", "cos"})

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*()=])"
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "kw", "op", "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "ws":
            for i, ch in enumerate(tok):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            if kind == "ident" and tok in RESERVED:
                kind = "kw"
            tokens.append(Token(kind, tok, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, registry: VarRegistry, grow: bool):
        self.tokens = tokenize(text)
        self.i = 0
        self.registry = registry
        self.grow = grow

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "kw") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def variable(self, tok: Token) -> int:
        if tok.text in self.registry:
            return self.registry.lookup(tok.text)
        if not self.grow:
            raise self.error(f"unknown variable {tok.text!r}", tok)
        return self.registry.add(tok.text)

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        if self.accept("let"):
            tok = self.tok
            if tok.kind != "ident":
                raise self.error("expected a variable name after 'let'")
            self.i += 1
            var = self.variable(tok)
            self.expect("=")
            bound = self.expr()
            self.expect("in")
            return Let(var, bound, self.expr())
        return self.sum()

    def sum(self) -> Expr:
        e = self.prod()
        while True:
            if self.accept("+"):
                e = Plus(e, self.prod())
            elif self.accept("-"):
                e = Plus(e, Neg(self.prod()))
            else:
                return e

    def prod(self) -> Expr:
        e = self.unary()
        while self.accept("*"):
            e = Times(e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        for name, node in (("sin", Sin), ("cos", Cos)):
            if self.accept(name):
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return node(arg)
        return self.atom()

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return const_lit(int(tok.text))
        if tok.kind == "ident":
            self.i += 1
            return Var(self.variable(tok))
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        found = tok.text or "end of input"
        raise self.error(f"expected an expression, found {found!r}")


def parse(text: str, registry: VarRegistry | None = None, mode: str = "grow") -> tuple[Expr, VarRegistry]:
    """Parse ``text``; in ``"grow"`` mode unseen names are registered.

    The registry passed in is never mutated; the returned one is a copy.
    """
    if mode not in ("grow", "fixed"):
        raise ValueError(f"unknown registry mode {mode!r}")
    reg = registry.copy() if registry is not None else VarRegistry()
    return _Parser(text, reg, mode == "grow").parse(), reg


# binding strength of each context; higher binds tighter
_LET, _SUM, _PROD, _UNARY = 0, 1, 2, 3


def pretty(e: Expr, registry: VarRegistry | None = None) -> str:
    """Render with the fewest parentheses that re-parse to the same tree."""
    def name(i: int) -> str:
        if registry is not None and 0 <= i < len(registry):
            return registry.name_of(i)
        return f"v{i}"

    out: list[str] = []
    # work items: str literal, or (expr, minimum precedence needed)
    stack: list[object] = [(e, _LET)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        node, need = item
        seq: list[object]
        if isinstance(node, Var):
            seq, prec = [name(node.index)], _UNARY
        elif isinstance(node, Zero):
            seq, prec = ["0"], _UNARY
        elif isinstance(node, One):
            seq, prec = ["1"], _UNARY
        elif isinstance(node, Let):
            seq = [f"let {name(node.var)} = ", (node.bound, _LET), " in ", (node.body, _LET)]
            prec = _LET
        elif isinstance(node, Plus):
            if isinstance(node.right, Neg):
                seq = [(node.left, _SUM), " - ", (node.right.arg, _PROD)]
            else:
                seq = [(node.left, _SUM), " + ", (node.right, _PROD)]
            prec = _SUM
        elif isinstance(node, Times):
            seq, prec = [(node.left, _PROD), " * ", (node.right, _UNARY)], _PROD
        elif isinstance(node, Neg):
            seq, prec = ["-", (node.arg, _UNARY)], _UNARY
        elif isinstance(node, (Sin, Cos)):
            fn = "sin" if isinstance(node, Sin) else "cos"
            seq, prec = [f"{fn}(", (node.arg, _LET), ")"], _UNARY
        else:
            raise TypeError(f"not an expression: {node!r}")
        if prec < need:
            seq = ["(", *seq, ")"]
        stack.extend(reversed(seq))
    return "".join(out)


__all__ = ["ParseError", "parse", "pretty", "tokenize"]
