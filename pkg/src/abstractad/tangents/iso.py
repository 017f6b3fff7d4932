"""Representation/abstraction pairs relating each tangent type to dense tangents."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..algebra import OpCounter, Semiring
from .base import Tangent
from .cayley import CayleyModule
from .linear import LinearModule
from .mutable import TapeModule
from .sparse import SparseModule


@dataclass(frozen=True)
class IsoWitness:
    name: str
    module: Tangent
    rep: Callable[[tuple], object]
    abs: Callable[[object], tuple]


def iso_chains(scalars: Semiring, arity: int, counter: OpCounter | None = None) -> dict[str, IsoWitness]:
    """The four composite isomorphisms out of ``DenseModule(scalars, arity)``.

    Each ``rep``/``abs`` is spelled out as the composition of the individual
    steps rather than delegating to the module's own shortcut.
    """
    sparse = SparseModule(scalars, arity, counter)
    lin_sparse = LinearModule(sparse)
    cayley = CayleyModule(sparse)
    lin_cayley = LinearModule(cayley)
    tape = TapeModule(scalars, arity, counter)
    lin_tape = LinearModule(tape)
    return {
        "sparse": IsoWitness("sparse", sparse, sparse.rep, sparse.abs),
        "linear-sparse": IsoWitness(
            "linear-sparse",
            lin_sparse,
            lambda f: lin_sparse.lift(sparse.rep(f)),
            lambda h: sparse.abs(lin_sparse.lower(h)),
        ),
        "linear-cayley-sparse": IsoWitness(
            "linear-cayley-sparse",
            lin_cayley,
            lambda f: lin_cayley.lift(cayley.lift(sparse.rep(f))),
            lambda h: sparse.abs(cayley.lower(lin_cayley.lower(h))),
        ),
        "linear-tape": IsoWitness(
            "linear-tape",
            lin_tape,
            lambda f: lin_tape.lift(tape.from_cayley(cayley.lift(sparse.rep(f)))),
            lambda h: sparse.abs(cayley.lower(tape.to_cayley(lin_tape.lower(h)))),
        ),
    }

