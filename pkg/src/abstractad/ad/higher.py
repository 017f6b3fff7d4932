"""Higher-order derivatives: second order, derivative streams, and the
forward-over-reverse hybrid used for Hessian-vector products.

Second order is nested Nagata numbers.  The outer layer is dense forward
mode whose scalars are themselves Nagata numbers ``N(f, ∇f)``.  Row ``x`` of
the outer tangent is ``N(∂x f, ∇∂x f)``: one column of the gradient paired
with one row of the Hessian.  Swapping the inner tangent module for a
reverse-mode representation gives the hybrid.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from ..algebra import Semiring
from ..evaluate import as_generator, evaluate
from ..expr import Expr
from ..tangents import CayleyModule, DenseModule, LinearModule, SparseModule, Tangent
from .nagata import Nagata, NagataSemiring


# -- second order ------------------------------------------------------------

def second_order_semiring(scalars: Semiring, arity: int, inner: Tangent | None = None) -> NagataSemiring:
    """``(scalars ⋉ inner) ⋉ Dense(scalars ⋉ inner)``."""
    inner = inner if inner is not None else DenseModule(scalars, arity)
    inner_sr = NagataSemiring(scalars, inner)
    return NagataSemiring(inner_sr, DenseModule(inner_sr, arity))


def _nested_eval(sr: NagataSemiring, var, e: Expr) -> Nagata:
    inner_sr: NagataSemiring = sr.scalars
    inner = inner_sr.tangents
    outer: DenseModule = sr.tangents
    lookup = as_generator(var)

    def gen(x):
        return Nagata(Nagata(lookup(x), inner.delta(x)), outer.delta(x))

    return evaluate(sr, gen, e)


@dataclass(frozen=True)
class SecondOrder:
    """Value, gradient and Hessian from one nested forward pass.

    ``rows[i]`` is ``N(∂i f, ∇∂i f)``.
    """

    value: object
    rows: tuple
    inner: Tangent

    @property
    def gradient(self) -> tuple:
        return tuple(r.pri for r in self.rows)

    @property
    def hessian(self) -> tuple:
        inner = self.inner
        n = len(self.rows)
        return tuple(
            tuple(inner.component(r.tan, j) for j in range(n)) for r in self.rows
        )

    def d(self, x: int):
        return self.rows[x].pri

    def d2(self, x: int, y: int | None = None):
        return self.inner.component(self.rows[x].tan, x if y is None else y)


def forward_2nd(scalars: Semiring, arity: int, var, e: Expr) -> SecondOrder:
    sr = second_order_semiring(scalars, arity)
    out = _nested_eval(sr, var, e)
    return SecondOrder(out.pri.pri, out.tan, sr.scalars.tangents)


# -- hybrid: forward outer, reverse inner ---------------------------------------

def hybrid_semiring(scalars: Semiring, arity: int) -> NagataSemiring:
    """Second order whose inner gradients are linear maps into Cayley(sparse)."""
    inner = LinearModule(CayleyModule(SparseModule(scalars, arity)))
    return second_order_semiring(scalars, arity, inner)


def hybrid_eval(scalars: Semiring, arity: int, var, e: Expr) -> SecondOrder:
    sr = hybrid_semiring(scalars, arity)
    out = _nested_eval(sr, var, e)
    return SecondOrder(out.pri.pri, out.tan, sr.scalars.tangents)


def hessian_vector(scalars: Semiring, arity: int, var, e: Expr, v: Sequence) -> tuple:
    """``H·v`` without building ``H``.

    The rows' reverse-mode tangents are combined with weights from ``v``
    first, so the backward pass runs once over the combination.
    """
    if len(v) != arity:
        raise ValueError(f"direction has length {len(v)}, expected {arity}")
    out = hybrid_eval(scalars, arity, var, e)
    lin: LinearModule = out.inner
    acc = lin.zero()
    for vx, row in zip(v, out.rows):
        if not scalars.is_zero(vx):
            acc = lin.add(acc, lin.scale(vx, row.tan))
    return lin.abs(acc)


# -- derivative streams -----------------------------------------------------------

class DerivStream:
    """``head :< tail``: a value and, per variable, the stream of its partial.

    Tails are forced lazily and memoised per variable.
    """

    __slots__ = ("head", "_tail", "_memo", "_sin", "_cos")

    def __init__(self, head, tail: Callable[[int], "DerivStream"]):
        self.head = head
        self._tail = tail
        self._memo: dict[int, DerivStream] = {}
        self._sin = None
        self._cos = None

    def tail(self, v: int) -> "DerivStream":
        try:
            return self._memo[v]
        except KeyError:
            out = self._memo[v] = self._tail(v)
            return out

    def __repr__(self):
        return f"DerivStream({self.head!r} :< ...)"


class StreamSemiring(Semiring):
    """Streams of all successive partial derivatives."""

    def __init__(self, scalars: Semiring):
        self.scalars = scalars
        self.name = f"stream({scalars.name})"
        self.exact = scalars.exact
        self.zero = DerivStream(scalars.zero, lambda v: self.zero)
        self.one = DerivStream(scalars.one, lambda v: self.zero)

    def const(self, d) -> DerivStream:
        return DerivStream(d, lambda v: self.zero)

    def add(self, a, b):
        if a is self.zero:
            return b
        if b is self.zero:
            return a
        return DerivStream(self.scalars.add(a.head, b.head),
                           lambda v: self.add(a.tail(v), b.tail(v)))

    def mul(self, a, b):
        if a is self.zero or b is self.zero:
            return self.zero
        return DerivStream(self.scalars.mul(a.head, b.head),
                           lambda v: self.add(self.mul(a.tail(v), b), self.mul(a, b.tail(v))))

    def neg(self, a):
        if a is self.zero:
            return a
        return DerivStream(self.scalars.neg(a.head), lambda v: self.neg(a.tail(v)))

    def sin(self, a):
        if a._sin is None:
            a._sin = DerivStream(self.scalars.sin(a.head),
                                 lambda v: self.mul(self.cos(a), a.tail(v)))
        return a._sin

    def cos(self, a):
        if a._cos is None:
            a._cos = DerivStream(self.scalars.cos(a.head),
                                 lambda v: self.mul(self.neg(self.sin(a)), a.tail(v)))
        return a._cos

    @property
    def is_ring(self):
        return self.scalars.is_ring

    @property
    def has_trig(self):
        return self.scalars.has_trig

    def eq(self, a, b):
        # only heads are observable without choosing a finite depth
        return self.scalars.eq(a.head, b.head)


def stream_all(scalars: Semiring, var, e: Expr) -> DerivStream:
    sr = StreamSemiring(scalars)
    lookup = as_generator(var)

    def gen(y):
        return DerivStream(lookup(y), lambda v: sr.one if v == y else sr.zero)

    return evaluate(sr, gen, e)


def take_path(stream: DerivStream, path: Sequence[int]) -> list:
    """Heads along ``path``: value, then ∂p0, then ∂p1∂p0, and so on."""
    out = [stream.head]
    for v in path:
        stream = stream.tail(v)
        out.append(stream.head)
    return out


def take_diag(stream: DerivStream, x: int, depth: int) -> list:
    """``[f, ∂x f, ∂x² f, …]`` with ``depth + 1`` entries."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    return take_path(stream, [x] * depth)
