"""Randomised checks of the commutative semiring and module laws.

Each checker draws values from caller-supplied samplers and reports every
law with the first counterexample it found, if any.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

from .algebra import FloatField, Module, Semiring


@dataclass
class LawReport:
    trials: int
    failures: dict = field(default_factory=dict)  # law name -> (count, first counterexample)
    checked: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, law: str, holds: bool, witness) -> None:
        if holds:
            return
        count, first = self.failures.get(law, (0, witness))
        self.failures[law] = (count + 1, first)

    def __str__(self):
        if self.ok:
            return f"all {len(self.checked)} laws hold over {self.trials} trials"
        return "; ".join(f"{k}: {n} failures, e.g. {w!r}" for k, (n, w) in self.failures.items())


def semiring_laws(sr: Semiring) -> dict[str, Callable]:
    add, mul, eq = sr.add, sr.mul, sr.eq
    zero, one = sr.zero, sr.one
    return {
        "additive identity": lambda x, y, z: eq(add(zero, x), x) and eq(add(x, zero), x),
        "multiplicative identity": lambda x, y, z: eq(mul(one, x), x) and eq(mul(x, one), x),
        "additive associativity": lambda x, y, z: eq(add(add(x, y), z), add(x, add(y, z))),
        "multiplicative associativity": lambda x, y, z: eq(mul(mul(x, y), z), mul(x, mul(y, z))),
        "additive commutativity": lambda x, y, z: eq(add(x, y), add(y, x)),
        "multiplicative commutativity": lambda x, y, z: eq(mul(x, y), mul(y, x)),
        "annihilator": lambda x, y, z: eq(mul(zero, x), zero) and eq(mul(x, zero), zero),
        "distributivity": lambda x, y, z: (
            eq(mul(x, add(y, z)), add(mul(x, y), mul(x, z)))
            and eq(mul(add(x, y), z), add(mul(x, z), mul(y, z)))
        ),
    }


def module_laws(m: Module) -> dict[str, Callable]:
    sr = m.scalars
    add, scale, eq, zero = m.add, m.scale, m.eq, m.zero()
    return {
        "additive identity": lambda d, d2, e, e2, e3: eq(add(zero, e), e) and eq(add(e, zero), e),
        "additive associativity": lambda d, d2, e, e2, e3: eq(add(add(e, e2), e3), add(e, add(e2, e3))),
        "additive commutativity": lambda d, d2, e, e2, e3: eq(add(e, e2), add(e2, e)),
        "scaling zero vector": lambda d, d2, e, e2, e3: eq(scale(d, zero), zero),
        "scaling a sum": lambda d, d2, e, e2, e3: eq(scale(d, add(e, e2)), add(scale(d, e), scale(d, e2))),
        "zero scalar": lambda d, d2, e, e2, e3: eq(scale(sr.zero, e), zero),
        "sum of scalars": lambda d, d2, e, e2, e3: eq(scale(sr.add(d, d2), e), add(scale(d, e), scale(d2, e))),
        "unit scalar": lambda d, d2, e, e2, e3: eq(scale(sr.one, e), e),
        "product of scalars": lambda d, d2, e, e2, e3: eq(scale(sr.mul(d, d2), e), scale(d, scale(d2, e))),
    }


def check_semiring_laws(sr: Semiring, sample: Callable[[random.Random], object],
                        trials: int = 1000, seed: int = 0) -> LawReport:
    rng = random.Random(seed)
    laws = semiring_laws(sr)
    report = LawReport(trials, checked=tuple(laws))
    for _ in range(trials):
        x, y, z = sample(rng), sample(rng), sample(rng)
        for name, law in laws.items():
            report.record(name, law(x, y, z), (x, y, z))
    return report


def check_module_laws(m: Module, sample_scalar: Callable[[random.Random], object],
                      sample_elem: Callable[[random.Random], object],
                      trials: int = 1000, seed: int = 0) -> LawReport:
    rng = random.Random(seed)
    laws = module_laws(m)
    report = LawReport(trials, checked=tuple(laws))
    for _ in range(trials):
        args = (sample_scalar(rng), sample_scalar(rng),
                sample_elem(rng), sample_elem(rng), sample_elem(rng))
        for name, law in laws.items():
            report.record(name, law(*args), args)
    return report


class ApproxFloatField(FloatField):
    """Floats compared with a relative tolerance, for approximate law checks."""

    def __init__(self, rel: float = 1e-9, abs_tol: float = 1e-12):
        self.rel = rel
        self.abs_tol = abs_tol
        self.name = "approx-float"

    def eq(self, a, b):
        return math.isclose(a, b, rel_tol=self.rel, abs_tol=self.abs_tol)
