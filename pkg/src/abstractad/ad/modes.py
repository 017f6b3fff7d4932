"""The single abstract differentiation routine and its concrete instances.

Every gradient mode is ``abstract_d`` run with a different tangent module:

==================  ================================  ===============
mode                tangent module                    complexity
==================  ================================  ===============
forward-dense       dense vectors                     O(N·V)
forward-sparse      sparse maps                       O(N·V)
reverse             linear maps into sparse maps      O(N·V)
reverse-cayley      linear maps into Cayley(sparse)   O(N·log V)
reverse-mut         linear maps into tape actions     O(N + V)
==================  ================================  ===============
"""
from __future__ import annotations

from typing import Callable

from ..algebra import OpCounter, Semiring
from ..evaluate import PLAIN_LET, as_generator, evaluate
from ..expr import Expr
from ..tangents import (
    CayleyModule, DenseModule, LinearModule, SparseModule, Tangent, TapeModule,
)
from .nagata import Nagata, NagataLetRule, NagataSemiring

MODES = ("forward-dense", "forward-sparse", "reverse", "reverse-cayley", "reverse-mut")


def tangent_module(mode: str, scalars: Semiring, arity: int, counter: OpCounter | None = None) -> Tangent:
    if mode == "forward-dense":
        return DenseModule(scalars, arity, counter)
    if mode == "forward-sparse":
        return SparseModule(scalars, arity, counter)
    if mode == "reverse":
        return LinearModule(SparseModule(scalars, arity, counter))
    if mode == "reverse-cayley":
        return LinearModule(CayleyModule(SparseModule(scalars, arity, counter)))
    if mode == "reverse-mut":
        return LinearModule(TapeModule(scalars, arity, counter))
    raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")


def to_sparse(tangents: Tangent, tan) -> dict:
    """Abstract any mode's tangent down to a sparse map.

    For the reverse modes this is where the backward pass happens.
    """
    if isinstance(tangents, DenseModule):
        is_zero = tangents.scalars.is_zero
        return {v: d for v, d in enumerate(tan) if not is_zero(d)}
    if isinstance(tangents, SparseModule):
        return tan
    if isinstance(tangents, LinearModule):
        target = tangents.target
        out = tangents.lower(tan)
        if isinstance(target, SparseModule):
            return out
        if isinstance(target, CayleyModule):
            return target.lower(out)
        if isinstance(target, TapeModule):
            return target.mut_run(out)
    raise TypeError(f"no sparse abstraction for {tangents!r}")


class ADResult:
    """A Nagata number together with the module its tangent lives in."""

    __slots__ = ("pri", "tan", "tangents", "mode")

    def __init__(self, value: Nagata, tangents: Tangent, mode: str | None = None):
        self.pri = value.pri
        self.tan = value.tan
        self.tangents = tangents
        self.mode = mode

    @property
    def value(self):
        return self.pri

    def gradient(self) -> dict:
        """Normalised sparse gradient: zero entries dropped, keys sorted."""
        sparse = to_sparse(self.tangents, self.tan)
        is_zero = self.tangents.scalars.is_zero
        return {v: sparse[v] for v in sorted(sparse) if not is_zero(sparse[v])}

    def __repr__(self):
        return f"N {self.pri!r} {self.gradient()!r}"


def abstract_d(scalars: Semiring, tangents: Tangent, var, e: Expr, share_lets: bool = True) -> Nagata:
    """Evaluate ``e`` in ``scalars ⋉ tangents`` seeding each variable with its delta.

    With ``share_lets`` the tangent of a let-bound expression is computed
    once and routed through ``tangents.letin``; otherwise lets are expanded
    by ordinary substitution semantics.
    """
    lookup = as_generator(var)
    sr = NagataSemiring(scalars, tangents)

    def gen(x):
        return Nagata(lookup(x), tangents.delta(x))

    rule = NagataLetRule(tangents) if share_lets else PLAIN_LET
    return evaluate(sr, gen, e, rule)


def run_mode(mode: str, scalars: Semiring, arity: int, var, e: Expr,
             counter: OpCounter | None = None, share_lets: bool = True) -> ADResult:
    tangents = tangent_module(mode, scalars, arity, counter)
    return ADResult(abstract_d(scalars, tangents, var, e, share_lets), tangents, mode)


def _mode_fn(mode: str) -> Callable[..., ADResult]:
    def run(scalars: Semiring, arity: int, var, e: Expr, counter: OpCounter | None = None) -> ADResult:
        return run_mode(mode, scalars, arity, var, e, counter)
    run.__name__ = mode.replace("-", "_")
    run.__doc__ = f"Gradient of ``e`` at ``var`` in {mode} mode."
    return run


forward_dense = _mode_fn("forward-dense")
forward_sparse = _mode_fn("forward-sparse")
reverse = _mode_fn("reverse")
reverse_cayley = _mode_fn("reverse-cayley")
reverse_mut = _mode_fn("reverse-mut")


def gradient(mode: str, scalars: Semiring, arity: int, var, e: Expr) -> dict:
    return run_mode(mode, scalars, arity, var, e).gradient()
