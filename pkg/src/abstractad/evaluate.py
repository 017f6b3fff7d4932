"""Evaluation of expressions in an arbitrary semiring.

``evaluate`` is the fold from the free semiring: it maps ``Var`` through a
generator and every other node to the corresponding semiring operation.
Everything else in the package (symbolic, forward and reverse AD) is this
fold run at a different semiring.
"""
from __future__ import annotations

import random
from typing import Callable, Sequence

from .algebra import PrimeField, Scalar, Semiring
from .expr import (
    ONE, ZERO, Cos, Expr, Let, Neg, One, Plus, Sin, Times, Var, Zero,
)


class LetRule:
    """How a ``Let`` node binds and combines values.

    The default is plain substitution semantics: the body sees the bound
    value and the let evaluates to the body's value.
    """

    def bind(self, var: int, bound):
        return bound

    def combine(self, var: int, bound, body):
        return body


PLAIN_LET = LetRule()


class GenEnv:
    """Variable lookup: a base generator plus per-variable shadow stacks."""

    __slots__ = ("base", "shadows")

    def __init__(self, base: Callable[[int], object]):
        self.base = base
        self.shadows: dict[int, list] = {}

    def lookup(self, var: int):
        stack = self.shadows.get(var)
        if stack:
            return stack[-1]
        return self.base(var)

    def push(self, var: int, value) -> None:
        self.shadows.setdefault(var, []).append(value)

    def pop(self, var: int) -> None:
        self.shadows[var].pop()


def as_generator(gen) -> Callable[[int], object]:
    if callable(gen):
        return gen
    values = gen
    return values.__getitem__


# task tags for the evaluation loop
_VISIT, _PLUS, _TIMES, _NEG, _SIN, _COS, _BIND, _UNBIND, _MEMO = range(9)


def evaluate(sr: Semiring, gen, e: Expr, let_rule: LetRule = PLAIN_LET, shared: bool = False):
    """Fold ``e`` into ``sr``; ``gen`` maps variable ids to ``sr`` values.

    ``gen`` is either a callable or an indexable valuation.  Uses an explicit
    work stack, so tree depth is bounded by memory rather than recursion.

    With ``shared`` a subtree object occurring several times is evaluated
    once per let scope, so DAGs (such as symbolic derivatives, which reuse
    their input's subtrees) cost their number of distinct nodes.
    """
    env = GenEnv(as_generator(gen))
    tasks: list = [(_VISIT, e)]
    values: list = []
    add, mul = sr.add, sr.mul
    memo: dict = {}
    scopes = [0]
    fresh_scope = 0
    while tasks:
        tag, node = tasks.pop()
        if tag == _VISIT:
            cls = type(node)
            if shared and cls is not Var and cls is not Zero and cls is not One:
                key = (id(node), scopes[-1])
                if key in memo:
                    values.append(memo[key])
                    continue
                tasks.append((_MEMO, key))
            if cls is Var:
                values.append(env.lookup(node.index))
            elif cls is Plus:
                tasks.append((_PLUS, None))
                tasks.append((_VISIT, node.right))
                tasks.append((_VISIT, node.left))
            elif cls is Times:
                tasks.append((_TIMES, None))
                tasks.append((_VISIT, node.right))
                tasks.append((_VISIT, node.left))
            elif cls is Zero:
                values.append(sr.zero)
            elif cls is One:
                values.append(sr.one)
            elif cls is Neg:
                tasks.append((_NEG, None))
                tasks.append((_VISIT, node.arg))
            elif cls is Sin:
                tasks.append((_SIN, None))
                tasks.append((_VISIT, node.arg))
            elif cls is Cos:
                tasks.append((_COS, None))
                tasks.append((_VISIT, node.arg))
            elif cls is Let:
                tasks.append((_BIND, node))
                tasks.append((_VISIT, node.bound))
            else:
                raise TypeError(f"not an expression: {node!r}")
        elif tag == _PLUS:
            b = values.pop()
            values[-1] = add(values[-1], b)
        elif tag == _TIMES:
            b = values.pop()
            values[-1] = mul(values[-1], b)
        elif tag == _NEG:
            values[-1] = sr.neg(values[-1])
        elif tag == _SIN:
            values[-1] = sr.sin(values[-1])
        elif tag == _COS:
            values[-1] = sr.cos(values[-1])
        elif tag == _BIND:
            # bound value stays on the value stack until the body is done
            env.push(node.var, let_rule.bind(node.var, values[-1]))
            fresh_scope += 1
            scopes.append(fresh_scope)
            tasks.append((_UNBIND, node))
            tasks.append((_VISIT, node.body))
        elif tag == _MEMO:
            memo[node] = values[-1]
        else:  # _UNBIND
            scopes.pop()
            env.pop(node.var)
            body = values.pop()
            values[-1] = let_rule.combine(node.var, values[-1], body)
    return values[0]


class ExprSemiring(Semiring):
    """Expressions themselves: every operation builds the matching node."""

    name = "expr"
    zero = ZERO
    one = ONE
    exact = True

    def add(self, a, b):
        return Plus(a, b)

    def mul(self, a, b):
        return Times(a, b)

    def neg(self, a):
        return Neg(a)

    def sin(self, a):
        return Sin(a)

    def cos(self, a):
        return Cos(a)

    def eq(self, a, b):
        return probe_equal(a, b)

    def from_int(self, n):
        from .expr import const_lit
        if n < 0:
            return Neg(const_lit(-n))
        return const_lit(n)


SYMBOLIC = ExprSemiring()


def var_gen(i: int) -> Expr:
    return Var(i)


def probe_equal(a: Expr, b: Expr, probes: int = 32, seed: int = 0x5EED) -> bool:
    """Decide equality modulo the semiring laws by random evaluation.

    Both sides are evaluated at ``probes`` random points of a 61-bit prime
    field; a false positive for polynomial-sized expressions has negligible
    probability.
    """
    if a is b:
        return True
    rng = random.Random(seed)
    field = PrimeField(key=rng.randbytes(16))
    for _ in range(probes):
        point: dict[int, int] = {}

        def gen(i):
            if i not in point:
                point[i] = rng.randrange(field.p)
            return point[i]

        if evaluate(field, gen, a, shared=True) != evaluate(field, gen, b, shared=True):
            return False
    return True


def reify(f: Callable[..., object], arity: int) -> Expr:
    """Run a generic program on symbolic variables to recover its tree."""
    return apply_generic(f, [Var(i) for i in range(arity)], SYMBOLIC)


def apply_generic(f: Callable[..., object], args: Sequence, sr: Semiring):
    """Run a generic program directly at ``sr`` with no intermediate tree."""
    out = f(*[Scalar(sr, a) for a in args])
    if isinstance(out, Scalar):
        return out.v
    if isinstance(out, int) and not isinstance(out, bool):
        return sr.from_int(out)
    raise TypeError(f"generic program returned {type(out).__name__}")
