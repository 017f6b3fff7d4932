"""Nagata numbers: a primal scalar paired with a tangent from a module.

With the module taken to be the scalars themselves these are dual numbers.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..algebra import Module, Semiring
from ..evaluate import LetRule


@dataclass(frozen=True, slots=True)
class Nagata:
    pri: object
    tan: object


class NagataSemiring(Semiring):
    """``scalars ⋉ tangents`` with the product rule as multiplication."""

    def __init__(self, scalars: Semiring, tangents: Module):
        self.scalars = scalars
        self.tangents = tangents
        self.name = f"{scalars.name}⋉{tangents.name}"
        self.exact = scalars.exact
        self.zero = Nagata(scalars.zero, tangents.zero())
        self.one = Nagata(scalars.one, tangents.zero())

    def add(self, a, b):
        return Nagata(self.scalars.add(a.pri, b.pri), self.tangents.add(a.tan, b.tan))

    def mul(self, a, b):
        s, t = self.scalars, self.tangents
        return Nagata(
            s.mul(a.pri, b.pri),
            t.add(t.scale(a.pri, b.tan), t.scale(b.pri, a.tan)),
        )

    def neg(self, a):
        s = self.scalars
        return Nagata(s.neg(a.pri), self.tangents.scale(s.neg(s.one), a.tan))

    def sin(self, a):
        s = self.scalars
        return Nagata(s.sin(a.pri), self.tangents.scale(s.cos(a.pri), a.tan))

    def cos(self, a):
        s = self.scalars
        return Nagata(s.cos(a.pri), self.tangents.scale(s.neg(s.sin(a.pri)), a.tan))

    @property
    def is_ring(self):
        return self.scalars.is_ring

    @property
    def has_trig(self):
        return self.scalars.has_trig

    def eq(self, a, b):
        return self.scalars.eq(a.pri, b.pri) and self.tangents.eq(a.tan, b.tan)


class NagataLetRule(LetRule):
    """Let rule for tangents that carry a ``letin`` method.

    The body sees the bound variable as a fresh input (seeded with its own
    delta); the tangents are then combined by ``tangents.letin`` so the bound
    expression's tangent is computed only once.
    """

    def __init__(self, tangents):
        self.tangents = tangents

    def bind(self, var, bound):
        return Nagata(bound.pri, self.tangents.delta(var))

    def combine(self, var, bound, body):
        return Nagata(body.pri, self.tangents.letin(var, bound.tan, body.tan))
