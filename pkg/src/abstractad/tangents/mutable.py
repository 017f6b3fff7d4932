"""Mutable accumulation: the tape-style end of the reverse-mode refinements.

A ``TapeAction`` is a composable description of updates to an array of
per-variable cells.  Running it against a fresh ``MutAccum`` performs the
backward pass with O(1) work per update.
"""
from __future__ import annotations

from ..algebra import OpCounter, Semiring
from .base import Tangent
from .cayley import CayleyModule
from .sparse import SparseModule


class ConsumedHandle(RuntimeError):
    pass


class MutAccum:
    """Zero-initialised cells, one per variable, valid for a single pass."""

    __slots__ = ("cells", "scalars", "counter", "live")

    def __init__(self, scalars: Semiring, arity: int, counter: OpCounter | None = None):
        self.scalars = scalars
        self.counter = counter
        self.cells = [scalars.zero] * arity
        self.live = True
        if counter is not None:
            counter.touches += arity

    def modify_at(self, v: int, f) -> None:
        if not self.live:
            raise ConsumedHandle("accumulator already consumed")
        if self.counter is not None:
            self.counter.touches += 2
        self.cells[v] = f(self.cells[v])

    def add_at(self, v: int, d) -> None:
        if not self.live:
            raise ConsumedHandle("accumulator already consumed")
        if self.counter is not None:
            self.counter.touches += 2
        cells = self.cells
        cells[v] = self.scalars.add(cells[v], d)

    def snapshot(self) -> dict:
        """Nonzero cells as a sparse map; the handle stays live."""
        if self.counter is not None:
            self.counter.touches += len(self.cells)
        is_zero = self.scalars.is_zero
        return {v: d for v, d in enumerate(self.cells) if not is_zero(d)}

    def finish(self) -> dict:
        if not self.live:
            raise ConsumedHandle("accumulator already consumed")
        out = self.snapshot()
        self.live = False
        return out


def modify_at(handle: MutAccum, v: int, f) -> None:
    handle.modify_at(v, f)


class TapeAction:
    __slots__ = ()


class _TNoop(TapeAction):
    __slots__ = ()

    def __repr__(self):
        return "TapeAction.noop"


class _TSeq(TapeAction):
    __slots__ = ("first", "second")

    def __init__(self, first, second):
        self.first = first
        self.second = second


class _TModify(TapeAction):
    # cell[var] ⊕= value
    __slots__ = ("var", "value")

    def __init__(self, var, value):
        self.var = var
        self.value = value


class _TLinLet(TapeAction):
    __slots__ = ("var", "bound", "body", "lin")

    def __init__(self, var, bound, body, lin):
        self.var = var
        self.bound = bound
        self.body = body
        self.lin = lin


class _TRestore:
    __slots__ = ("let", "old")

    def __init__(self, let, old):
        self.let = let
        self.old = old


_NOOP = _TNoop()


class TapeModule(Tangent):
    """Accumulator actions; ``add`` is sequencing and ``zero`` does nothing.

    Only ``delta``/``scaled_delta`` and sequencing are cheap.  ``scale`` is
    defined through the Cayley-over-sparse isomorphism for completeness.
    """

    def __init__(self, scalars: Semiring, arity: int, counter: OpCounter | None = None):
        self.scalars = scalars
        self.arity = arity
        self.counter = counter
        self.name = "tape"
        self.sparse = SparseModule(scalars, arity, counter)
        self.cayley = CayleyModule(self.sparse)

    def zero(self):
        return _NOOP

    def add(self, p, q):
        return _TSeq(p, q)

    def scale(self, d, p):
        self._scaled()
        return self.from_sparse(self.sparse.scale(d, self.mut_run(p)))

    def delta(self, v):
        return self.scaled_delta(v, self.scalars.one)

    def scaled_delta(self, v, d):
        self.check_var(v)
        self._delta()
        return _TModify(v, d)

    def from_sparse(self, m: dict) -> TapeAction:
        out: TapeAction = _NOOP
        for v in sorted(m):
            out = _TSeq(out, _TModify(v, m[v]))
        return out

    def from_cayley(self, c) -> TapeAction:
        """Replay the entries of ``c zero`` as cell updates."""
        return self.from_sparse(self.cayley.lower(c))

    def to_cayley(self, p: TapeAction):
        """Run ``p`` on fresh cells and insert the results into a map."""
        return self.cayley.lift(self.mut_run(p))

    def rep(self, dense):
        return self.from_sparse(self.sparse.rep(dense))

    def abs(self, p):
        return self.sparse.abs(self.mut_run(p))

    def component(self, p, v):
        return self.mut_run(p).get(v, self.scalars.zero)

    def eq(self, p, q):
        return self.sparse.eq(self.mut_run(p), self.mut_run(q))

    def linear_let(self, y, bound, body, lin):
        return _TLinLet(y, bound, body, lin)

    def new_handle(self) -> MutAccum:
        return MutAccum(self.scalars, self.arity, self.counter)

    def run(self, p: TapeAction, handle: MutAccum) -> None:
        if not handle.live:
            raise ConsumedHandle("accumulator already consumed")
        zero = self.scalars.zero
        cells = handle.cells
        tasks: list = [p]
        while tasks:
            node = tasks.pop()
            cls = type(node)
            if cls is _TModify:
                handle.add_at(node.var, node.value)
            elif cls is _TSeq:
                tasks.append(node.second)
                tasks.append(node.first)
            elif cls is _TNoop:
                pass
            elif cls is _TLinLet:
                self._touch(2)
                old = cells[node.var]
                cells[node.var] = zero
                tasks.append(_TRestore(node, old))
                tasks.append(node.body)
            elif cls is _TRestore:
                let = node.let
                self._touch(2)
                dy = cells[let.var]
                cells[let.var] = node.old
                tasks.append(let.lin.apply(let.bound, dy))
            elif callable(node):
                node(handle)
            else:
                raise TypeError(f"not a tape action: {node!r}")

    def mut_run(self, p) -> dict:
        """Run ``p`` (an action or a callable on the handle) on zeroed cells."""
        handle = self.new_handle()
        self.run(p, handle)
        return handle.finish()
