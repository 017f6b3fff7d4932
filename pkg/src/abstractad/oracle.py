"""Independent ground truth: finite differences, the brute-force symbolic
pipeline, a seeded expression generator, and operation-count profiling.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .ad.modes import MODES, abstract_d, run_mode
from .ad.symbolic import derive
from .algebra import FLOAT, INT, CountingSemiring, FloatField, OpCounter, Semiring
from .evaluate import SYMBOLIC, evaluate
from .expr import (
    ONE, ZERO, Cos, Expr, Let, Neg, Plus, Sin, Times, Var, free_vars, size,
)
from .tangents import DenseModule


# -- numerical and symbolic oracles -------------------------------------------

def finite_diff_grad(e: Expr, point: Sequence[float], h: float = 1e-5) -> tuple[float, ...]:
    """Central differences ``(f(x+h·e_v) − f(x−h·e_v)) / 2h`` for every variable."""
    if h <= 0:
        raise ValueError("step must be positive")
    base = [float(p) for p in point]
    out = []
    for v in range(len(base)):
        up = list(base)
        down = list(base)
        up[v] += h
        down[v] -= h
        out.append((evaluate(FLOAT, up, e) - evaluate(FLOAT, down, e)) / (2 * h))
    return tuple(out)


class _MagnitudeTracker(FloatField):
    # float arithmetic that remembers the largest intermediate magnitude
    def __init__(self):
        self.peak = 0.0

    def _see(self, x):
        self.peak = max(self.peak, abs(x))
        return x

    def add(self, a, b):
        return self._see(a + b)

    def mul(self, a, b):
        return self._see(a * b)


def peak_magnitude(e: Expr, point: Sequence[float]) -> float:
    """Largest absolute value of any intermediate when evaluating ``e`` at ``point``."""
    tracker = _MagnitudeTracker()
    for p in point:
        tracker._see(float(p))
    value = evaluate(tracker, [float(p) for p in point], e)
    return max(tracker.peak, abs(value))


def well_conditioned(e: Expr, point: Sequence[float], bound: float = 1e6) -> bool:
    peak = peak_magnitude(e, point)
    return math.isfinite(peak) and peak <= bound


def brute_force_grad(var, e: Expr, scalars: Semiring = INT) -> dict:
    """``{v: eval(var, derive(v, e))}`` over the free variables, zeros dropped."""
    out = {}
    for v in sorted(free_vars(e)):
        d = evaluate(scalars, var, derive(v, e), shared=True)
        if not scalars.is_zero(d):
            out[v] = d
    return out


def _forward_dense_exprs(e: Expr, arity: int) -> tuple:
    # forward mode over expressions with var = Var: a dense tuple of derivative trees
    return abstract_d(SYMBOLIC, DenseModule(SYMBOLIC, arity), Var, e, share_lets=False).tan


def derive_2nd(var, e: Expr, x: int, y: int, arity: int, scalars: Semiring = INT):
    """``∂x ∂y e`` at ``var`` by the three-pass definition.

    Forward mode over expressions, take component ``y``; forward mode over
    that expression, take component ``x``; evaluate.
    """
    dy = _forward_dense_exprs(e, arity)[y]
    dxy = _forward_dense_exprs(dy, arity)[x]
    return evaluate(scalars, var, dxy, shared=True)


def hessian_2nd(var, e: Expr, arity: int, scalars: Semiring = INT) -> tuple:
    """Full Hessian by the three-pass definition (rows indexed by the outer variable)."""
    firsts = _forward_dense_exprs(e, arity)
    rows = []
    for x in range(arity):
        rows.append(tuple(
            evaluate(scalars, var, _forward_dense_exprs(firsts[y], arity)[x], shared=True)
            for y in range(arity)
        ))
    return tuple(rows)


# -- random expressions -----------------------------------------------------------

DEFAULT_WEIGHTS = {
    "var": 4.0, "zero": 0.5, "one": 1.0,
    "plus": 3.0, "times": 3.0, "neg": 0.5, "sin": 0.5, "cos": 0.5,
}


@dataclass(frozen=True)
class ExprGenConfig:
    seed: int = 0
    max_nodes: int = 30
    num_vars: int = 3
    weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    trig_enabled: bool = False
    neg_enabled: bool = True
    let_probability: float = 0.0
    exact_size: bool = False  # use max_nodes as the size instead of sampling one


_LEAVES = ("var", "zero", "one")
_UNARY = ("neg", "sin", "cos")
_BINARY = ("plus", "times")


def gen_expr(config: ExprGenConfig) -> Expr:
    """Deterministic random expression with at most ``config.max_nodes`` nodes."""
    if config.max_nodes < 1 or config.num_vars < 1:
        raise ValueError("need max_nodes >= 1 and num_vars >= 1")
    rng = random.Random(config.seed)
    w = config.weights
    allowed_unary = [k for k in _UNARY if (k == "neg" and config.neg_enabled)
                     or (k != "neg" and config.trig_enabled)]
    budget = config.max_nodes if config.exact_size else rng.randint(1, config.max_nodes)

    def pick(kinds):
        return rng.choices(kinds, [w.get(k, 0) for k in kinds])[0]

    # each task fills a hole of a given node budget; results are assembled
    # bottom-up so deep trees do not hit the recursion limit
    tasks: list = [("fill", budget)]
    out: list = []
    while tasks:
        tag, arg = tasks.pop()
        if tag == "fill":
            b = arg
            if b == 1:
                kind = pick([k for k in _LEAVES if w.get(k, 0) > 0] or ["var"])
                if kind == "var":
                    out.append(Var(rng.randrange(config.num_vars)))
                else:
                    out.append(ZERO if kind == "zero" else ONE)
                continue
            if b >= 3 and rng.random() < config.let_probability:
                left = rng.randint(1, b - 2)
                tasks.append(("let", rng.randrange(config.num_vars)))
                tasks.append(("fill", b - 1 - left))
                tasks.append(("fill", left))
                continue
            kinds = [k for k in allowed_unary + (list(_BINARY) if b >= 3 else [])
                     if w.get(k, 0) > 0]
            if not kinds:
                # nothing fits this budget: shrink to a leaf
                tasks.append(("fill", 1))
                continue
            kind = pick(kinds)
            if kind in _BINARY:
                left = rng.randint(1, b - 2)
                tasks.append((kind, None))
                tasks.append(("fill", b - 1 - left))
                tasks.append(("fill", left))
            else:
                tasks.append((kind, None))
                tasks.append(("fill", b - 1))
        elif tag == "let":
            body = out.pop()
            bound = out.pop()
            out.append(Let(arg, bound, body))
        elif tag in ("plus", "times"):
            r = out.pop()
            l = out.pop()
            out.append(Plus(l, r) if tag == "plus" else Times(l, r))
        else:
            a = out.pop()
            out.append({"neg": Neg, "sin": Sin, "cos": Cos}[tag](a))
    return out[0]


def gen_valuation(seed: int, num_vars: int, lo: int = -3, hi: int = 3) -> list[int]:
    rng = random.Random(seed)
    return [rng.randint(lo, hi) for _ in range(num_vars)]


# -- profiling --------------------------------------------------------------------

FAMILIES = ("sum", "chain", "product-tree")


def family_expr(family: str, n: int, v: int) -> Expr:
    """The benchmark expression families, each with about ``n`` nodes."""
    if n < 1 or v < 1:
        raise ValueError("need N >= 1 and V >= 1")
    leaves = (n + 1) // 2
    if family == "sum":
        e: Expr = Var(0)
        for i in range(1, leaves):
            e = Plus(e, Var(i % v))
        return e
    if family == "chain":
        e = Var(0)
        for _ in range(1, leaves):
            e = Times(Var(0), e)
        return e
    if family == "product-tree":
        level: list[Expr] = [Var(i % v) for i in range(leaves)]
        while len(level) > 1:
            nxt = [Times(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
            if len(level) % 2:
                nxt.append(level[-1])
            level = nxt
        return level[0]
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


CSV_HEADER = "mode,family,N,V,adds,muls,scales,deltas,touches"


@dataclass(frozen=True)
class OpProfile:
    mode: str
    family: str
    n: int
    v: int
    counts: dict

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def csv_row(self) -> str:
        c = self.counts
        return ",".join(str(x) for x in (
            self.mode, self.family, self.n, self.v,
            c["adds"], c["muls"], c["scales"], c["deltas"], c["touches"],
        ))


def _family_valuation(family: str, v: int) -> list[int]:
    # small values keep the chain family's big integers cheap
    return [1 + i % 2 for i in range(v)] if family != "chain" else [1] * v


def profile_mode(mode: str, family: str, n: int, v: int) -> OpProfile:
    """Run ``mode`` on a family expression with counting scalars.

    The ``symbolic`` tag profiles the brute-force pipeline (derive, then
    evaluate the derivative tree without sharing) for comparison.
    """
    e = family_expr(family, n, v)
    counter = OpCounter()
    scalars = CountingSemiring(INT, counter)
    var = _family_valuation(family, v)
    if mode == "symbolic":
        for x in sorted(free_vars(e)):
            evaluate(scalars, var, derive(x, e))
    elif mode in MODES:
        # the backward pass of the reverse modes runs inside gradient()
        run_mode(mode, scalars, v, var, e, counter).gradient()
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return OpProfile(mode, family, size(e), v, counter.snapshot())


LAWS = {
    "N+V": lambda n, v: n + v,
    "N·logV": lambda n, v: n * math.log2(v),
    "N·V": lambda n, v: n * v,
}
LAW_ORDER = ("N+V", "N·logV", "N·V")

EXPECTED_LAW = {
    "forward-dense": "N·V",
    "forward-sparse": "N·V",
    "reverse": "N·V",
    "reverse-cayley": "N·logV",
    "reverse-mut": "N+V",
}


@dataclass(frozen=True)
class ScalingVerdict:
    mode: str
    family: str
    best: str
    residuals: dict
    expected: str | None
    passed: bool
    profiles: tuple


def fit_law(points: Sequence[tuple[int, int, int]]) -> tuple[str, dict]:
    """Best growth law for ``(N, V, count)`` points.

    For each law the constant is fitted by least squares on logs, so the
    residual is the spread of ``log count − log law`` around its mean.
    """
    residuals = {}
    for name, law in LAWS.items():
        diffs = [math.log(max(c, 1)) - math.log(law(n, v)) for n, v, c in points]
        mean = sum(diffs) / len(diffs)
        residuals[name] = sum((d - mean) ** 2 for d in diffs)
    best = min(LAW_ORDER, key=lambda k: residuals[k])
    return best, residuals


def scaling_check(mode: str, family: str, sizes: Sequence[tuple[int, int]]) -> ScalingVerdict:
    """Fit the total operation count of ``mode`` against the candidate laws.

    Reverse-cayley passes with any law at or below N·logV; the others must
    match their expected law exactly.
    """
    if len(sizes) < 4:
        raise ValueError(f"need at least 4 size points, got {len(sizes)}")
    if len({v for _, v in sizes}) < 2:
        raise ValueError("size points must vary in V")
    profiles = tuple(profile_mode(mode, family, n, v) for n, v in sizes)
    best, residuals = fit_law([(p.n, p.v, p.total) for p in profiles])
    expected = EXPECTED_LAW.get(mode)
    if expected is None:
        passed = False
    elif mode == "reverse-cayley":
        passed = LAW_ORDER.index(best) <= LAW_ORDER.index(expected)
    else:
        passed = best == expected
    return ScalingVerdict(mode, family, best, residuals, expected, passed, profiles)
