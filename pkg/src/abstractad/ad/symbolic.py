from __future__ import annotations

from ..algebra import ScalarModule, Semiring
from ..evaluate import SYMBOLIC, as_generator, evaluate
from ..expr import (
    ONE, ZERO, Cos, Expr, Let, Neg, One, Plus, Sin, Times, Var, Zero, children,
)
from .nagata import Nagata, NagataSemiring


def _derivative_step(x: int, node: Expr, kids: list[Expr]) -> Expr:
    """Derivative of ``node`` given the derivatives of its children."""
    cls = type(node)
    if cls is Var:
        return ONE if node.index == x else ZERO
    if cls is Zero or cls is One:
        return ZERO
    if cls is Plus:
        return Plus(kids[0], kids[1])
    if cls is Times:
        d1, d2 = kids
        return Plus(Times(node.right, d1), Times(node.left, d2))
    if cls is Neg:
        return Neg(kids[0])
    if cls is Sin:
        return Times(Cos(node.arg), kids[0])
    if cls is Cos:
        return Times(Neg(Sin(node.arg)), kids[0])
    raise TypeError(f"not an expression: {node!r}")


def _let_derivative(x: int, node: Let, d_bound: Expr) -> Expr:
    # chain rule through the bound variable, plus the body's direct dependence
    # on x (none when the let shadows x itself)
    y = node.var
    through = Times(Let(y, node.bound, derive(y, node.body)), d_bound)
    if y == x:
        return through
    return Plus(through, Let(y, node.bound, derive(x, node.body)))


def derive_tuple(x: int, e: Expr) -> tuple[Expr, Expr]:
    """``(e, ∂e/∂x)`` from a single bottom-up traversal."""
    stack: list[tuple[Expr, bool]] = [(e, False)]
    results: list[tuple[Expr, Expr]] = []
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Let):
            if not expanded:
                stack.append((node, True))
                stack.append((node.bound, False))
                continue
            _, d_bound = results.pop()
            results.append((node, _let_derivative(x, node, d_bound)))
            continue
        kids = children(node)
        if kids and not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in reversed(kids))
            continue
        ds = [d for _, d in results[len(results) - len(kids):]] if kids else []
        if kids:
            del results[len(results) - len(kids):]
        results.append((node, _derivative_step(x, node, ds)))
    return results[0]


def derive(x: int, e: Expr) -> Expr:
    """Symbolic partial derivative of ``e`` with respect to variable ``x``."""
    return derive_tuple(x, e)[1]


def derive_n(x: int, e: Expr, n: int) -> Expr:
    for _ in range(n):
        e = derive(x, e)
    return e


def forward_classic(scalars: Semiring, var, x: int, e: Expr) -> Nagata:
    """Dual-number forward mode: one pass, one direction ``x``."""
    lookup = as_generator(var)
    sr = NagataSemiring(scalars, ScalarModule(scalars))

    def gen(y):
        return Nagata(lookup(y), scalars.one if y == x else scalars.zero)

    return evaluate(sr, gen, e)


def symbolic(x: int, e: Expr) -> Nagata:
    """Forward mode over expressions: ``(e, ∂e/∂x)`` as a dual of trees."""
    return forward_classic(SYMBOLIC, Var, x, e)
