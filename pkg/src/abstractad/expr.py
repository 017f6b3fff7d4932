"""Expression trees over a fixed, indexed set of variables.

Variables are dense integer ids handed out by a ``VarRegistry``.  Every
traversal here uses an explicit stack: benchmark trees are deep enough to
exhaust Python's recursion limit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union


class Expr:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Expr):
    index: int


@dataclass(frozen=True, slots=True)
class Zero(Expr):
    pass


@dataclass(frozen=True, slots=True)
class One(Expr):
    pass


@dataclass(frozen=True, slots=True)
class Plus(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Times(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Sin(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Cos(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Let(Expr):
    var: int
    bound: Expr
    body: Expr


ZERO = Zero()
ONE = One()

Unary = Union[Neg, Sin, Cos]
Binary = Union[Plus, Times]


class UnknownVariable(KeyError):
    pass


class VarRegistry:
    """Ordered, duplicate-free variable names; index ``i`` is the ``i``-th name."""

    def __init__(self, names: Iterable[str] = ()):
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        for n in names:
            self.add(n)

    def add(self, name: str) -> int:
        if name in self._index:
            return self._index[name]
        self._index[name] = len(self._names)
        self._names.append(name)
        return self._index[name]

    def lookup(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def name_of(self, index: int) -> str:
        if not 0 <= index < len(self._names):
            raise UnknownVariable(index)
        return self._names[index]

    def __contains__(self, name) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self._names)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._names)

    def copy(self) -> "VarRegistry":
        return VarRegistry(self._names)

    def __eq__(self, other):
        return isinstance(other, VarRegistry) and self._names == other._names

    def __repr__(self):
        return f"VarRegistry({self._names!r})"


def default_registry(arity: int) -> VarRegistry:
    if arity <= 3:
        return VarRegistry("xyz"[:arity])
    return VarRegistry(f"x{i}" for i in range(arity))


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (Plus, Times)):
        return (e.left, e.right)
    if isinstance(e, (Neg, Sin, Cos)):
        return (e.arg,)
    if isinstance(e, Let):
        return (e.bound, e.body)
    return ()


def iter_nodes(e: Expr) -> Iterator[Expr]:
    """Pre-order walk; shared subtrees are visited once per occurrence."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def size(e: Expr) -> int:
    return sum(1 for _ in iter_nodes(e))


def depth(e: Expr) -> int:
    best = 0
    stack = [(e, 1)]
    while stack:
        node, d = stack.pop()
        best = max(best, d)
        stack.extend((c, d + 1) for c in children(node))
    return best


def const_lit(n: int) -> Expr:
    """An expression equal to ``n`` copies of ``One``, with O(log n) nodes."""
    if n < 0:
        raise ValueError("literal must be non-negative")
    if n == 0:
        return ZERO
    acc: Expr = ONE
    for bit in bin(n)[3:]:
        two = Plus(ONE, ONE)
        acc = two if acc is ONE else Times(two, acc)
        if bit == "1":
            acc = Plus(acc, ONE)
    return acc


def free_vars(e: Expr) -> frozenset[int]:
    out: set[int] = set()
    # (node, variables bound at this point)
    stack: list[tuple[Expr, frozenset[int]]] = [(e, frozenset())]
    while stack:
        node, bound = stack.pop()
        if isinstance(node, Var):
            if node.index not in bound:
                out.add(node.index)
        elif isinstance(node, Let):
            stack.append((node.bound, bound))
            stack.append((node.body, bound | {node.var}))
        else:
            stack.extend((c, bound) for c in children(node))
    return frozenset(out)


def rebuild(node: Expr, kids: list[Expr]) -> Expr:
    """``node`` with its children replaced, reusing it when nothing changed."""
    old = children(node)
    if all(a is b for a, b in zip(old, kids)):
        return node
    if isinstance(node, Plus):
        return Plus(kids[0], kids[1])
    if isinstance(node, Times):
        return Times(kids[0], kids[1])
    if isinstance(node, Neg):
        return Neg(kids[0])
    if isinstance(node, Sin):
        return Sin(kids[0])
    if isinstance(node, Cos):
        return Cos(kids[0])
    if isinstance(node, Let):
        return Let(node.var, kids[0], kids[1])
    return node


def transform_up(e: Expr, f) -> Expr:
    """Apply ``f`` to every node bottom-up (children already transformed).

    ``f`` must be pure: a subtree shared by several parents is transformed
    once and the result is shared too.
    """
    memo: dict[int, Expr] = {}
    stack: list[tuple[Expr, bool]] = [(e, False)]
    results: list[Expr] = []
    while stack:
        node, expanded = stack.pop()
        key = id(node)
        if not expanded and key in memo:
            results.append(memo[key])
            continue
        kids = children(node)
        if not kids:
            out = f(node)
        elif expanded:
            new = results[-len(kids):]
            del results[-len(kids):]
            out = f(rebuild(node, new))
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in reversed(kids))
            continue
        memo[key] = out
        results.append(out)
    return results[0]


def _simplify_node(node: Expr) -> Expr:
    if isinstance(node, Plus):
        if isinstance(node.left, Zero):
            return node.right
        if isinstance(node.right, Zero):
            return node.left
    elif isinstance(node, Times):
        if isinstance(node.left, Zero) or isinstance(node.right, Zero):
            return ZERO
        if isinstance(node.left, One):
            return node.right
        if isinstance(node.right, One):
            return node.left
    return node


def simplify_basic(e: Expr) -> Expr:
    """One bottom-up pass of the unit and annihilator rewrites."""
    return transform_up(e, _simplify_node)


def substitute(e: Expr, var: int, replacement: Expr) -> Expr:
    """Replace free occurrences of ``var`` in a let-free expression."""
    def step(node):
        if isinstance(node, Let):
            raise ValueError("substitute expects a let-free expression")
        if isinstance(node, Var) and node.index == var:
            return replacement
        return node
    return transform_up(e, step)


def inline_lets(e: Expr) -> Expr:
    """Eliminate every ``Let`` by substitution.

    Lets are removed innermost-first, so the body being substituted into is
    already binder-free and no capture can occur.
    """
    def step(node):
        if isinstance(node, Let):
            return substitute(node.body, node.var, node.bound)
        return node
    return transform_up(e, step)


def has_trig(e: Expr) -> bool:
    return any(isinstance(n, (Sin, Cos)) for n in iter_nodes(e))


def has_neg(e: Expr) -> bool:
    return any(isinstance(n, Neg) for n in iter_nodes(e))


def show(e: Expr) -> str:
    """Constructor-style rendering, e.g. ``Times (Var 0) One``."""
    parts: list[str] = []
    stack: list[object] = [e]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        node = item
        if isinstance(node, Var):
            parts.append(f"Var {node.index}")
            continue
        if isinstance(node, (Zero, One)):
            parts.append(type(node).__name__)
            continue
        head = type(node).__name__
        if isinstance(node, Let):
            head = f"Let {node.var}"
        seq: list[object] = [head]
        for c in children(node):
            seq.append(" ")
            if children(c) or isinstance(c, Var):
                seq.extend(["(", c, ")"])
            else:
                seq.append(c)
        stack.extend(reversed(seq))
    return "".join(parts)
