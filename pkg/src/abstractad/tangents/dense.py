from __future__ import annotations

from ..algebra import OpCounter, Semiring
from .base import Tangent


class DenseModule(Tangent):
    """Total gradient vectors: a tuple with one scalar per variable."""

    def __init__(self, scalars: Semiring, arity: int, counter: OpCounter | None = None):
        self.scalars = scalars
        self.arity = arity
        self.counter = counter
        self.name = "dense"
        self._zero = (scalars.zero,) * arity

    def zero(self):
        return self._zero

    def add(self, a, b):
        add = self.scalars.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def scale(self, d, e):
        self._scaled()
        mul = self.scalars.mul
        return tuple(mul(d, x) for x in e)

    def delta(self, v):
        self.check_var(v)
        self._delta()
        out = list(self._zero)
        out[v] = self.scalars.one
        return tuple(out)

    def rep(self, dense):
        return tuple(dense)

    def abs(self, e):
        return tuple(e)

    def component(self, e, v):
        return e[v]

    def purge(self, e, v):
        out = list(e)
        out[v] = self.scalars.zero
        return tuple(out)

    def eq(self, a, b):
        return len(a) == len(b) and all(self.scalars.eq(x, y) for x, y in zip(a, b))
