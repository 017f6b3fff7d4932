from __future__ import annotations

from ..algebra import Module, Semiring


class Tangent(Module):
    """A Kronecker module with a certified isomorphism to dense tangents.

    ``rep`` maps a dense tangent (a tuple of length ``arity``) into this
    representation and ``abs`` maps back.  ``component`` and ``purge`` default
    to going through the dense form; fast representations override them.
    """

    scalars: Semiring
    arity: int
    counter = None

    def delta(self, v: int):
        raise NotImplementedError

    def scaled_delta(self, v: int, d):
        """``d • delta(v)``; representations with a cheaper form override this."""
        return self.scale(d, self.delta(v))

    def rep(self, dense: tuple):
        raise NotImplementedError

    def abs(self, e) -> tuple:
        raise NotImplementedError

    def component(self, e, v: int):
        return self.abs(e)[v]

    def purge(self, e, v: int):
        dense = list(self.abs(e))
        dense[v] = self.scalars.zero
        return self.rep(tuple(dense))

    def letin(self, y: int, de1, de2):
        """Tangent of ``let y = e1 in e2`` from the tangents of ``e1`` and ``e2``.

        ``de2`` was computed with ``y`` seeded by ``delta(y)``, so its
        ``y``-component is the partial of the body in the bound variable.
        That component is pushed through ``de1`` and then dropped, which also
        keeps an outer variable shadowed by ``y`` from being polluted.
        """
        dy = self.component(de2, y)
        return self.add(self.scale(dy, de1), self.purge(de2, y))

    def _touch(self, n: int = 1) -> None:
        if self.counter is not None:
            self.counter.touches += n

    def _scaled(self) -> None:
        if self.counter is not None:
            self.counter.scales += 1

    def _delta(self) -> None:
        if self.counter is not None:
            self.counter.deltas += 1

    def check_var(self, v: int) -> None:
        if not 0 <= v < self.arity:
            raise KeyError(f"variable {v} is not registered (arity {self.arity})")


def delta_for(module: Tangent, v: int):
    """The Kronecker delta of ``v`` in ``module``'s own representation."""
    return module.delta(v)
