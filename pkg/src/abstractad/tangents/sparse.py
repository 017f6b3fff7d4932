from __future__ import annotations

from ..algebra import OpCounter, Semiring
from .base import Tangent


class SparseModule(Tangent):
    """Finite maps from variable ids to scalars; a missing key means zero.

    Map values handed out by this module are never mutated afterwards.
    Addition does not drop entries that cancel to zero, so equality is
    taken after normalization (stored zeros count as absent).
    """

    def __init__(self, scalars: Semiring, arity: int, counter: OpCounter | None = None):
        self.scalars = scalars
        self.arity = arity
        self.counter = counter
        self.name = "sparse"

    def zero(self):
        return {}

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        add = self.scalars.add
        for k, v in b.items():
            out[k] = add(out[k], v) if k in out else v
        self._touch(len(a) + len(b))
        return out

    def scale(self, d, e):
        self._scaled()
        self._touch(len(e))
        mul = self.scalars.mul
        return {k: mul(d, v) for k, v in e.items()}

    def delta(self, v):
        self.check_var(v)
        self._delta()
        self._touch()
        return {v: self.scalars.one}

    def scaled_delta(self, v, d):
        # d • singleton v one == singleton v d
        self.check_var(v)
        self._delta()
        self._touch()
        return {v: d}

    def insert_with_add(self, m: dict, v: int, d) -> None:
        """In-place ``insertWith (⊕) v d`` on a map the caller owns."""
        self._touch()
        m[v] = self.scalars.add(m[v], d) if v in m else d

    def rep(self, dense):
        is_zero = self.scalars.is_zero
        return {v: d for v, d in enumerate(dense) if not is_zero(d)}

    def abs(self, e):
        zero = self.scalars.zero
        return tuple(e.get(v, zero) for v in range(self.arity))

    def component(self, e, v):
        self._touch()
        return e.get(v, self.scalars.zero)

    def purge(self, e, v):
        if v not in e:
            return e
        self._touch(len(e))
        return {k: x for k, x in e.items() if k != v}

    def normalize(self, e) -> dict:
        is_zero = self.scalars.is_zero
        return {k: e[k] for k in sorted(e) if not is_zero(e[k])}

    def eq(self, a, b):
        eq, zero = self.scalars.eq, self.scalars.zero
        return all(eq(a.get(k, zero), b.get(k, zero)) for k in a.keys() | b.keys())


def abs_sparse(m: dict, arity: int, zero=0) -> tuple:
    return tuple(m.get(v, zero) for v in range(arity))


def rep_sparse(dense, zero=0) -> dict:
    return {v: d for v, d in enumerate(dense) if d != zero}
