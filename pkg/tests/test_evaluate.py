from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from abstractad.ad.nagata import Nagata, NagataSemiring
from abstractad.algebra import INT, PrimeField
from abstractad.evaluate import (
    SYMBOLIC, GenEnv, apply_generic, evaluate, probe_equal, reify, var_gen,
)
from abstractad.expr import ONE, Let, Plus, Times, Var
from abstractad.tangents import SparseModule

from conftest import EXAMPLE1, EXAMPLE2, EXAMPLE4P, exprs, points, xy


def example2_generic(x, y):
    return x * y + x + 1


def test_eval_examples():
    assert evaluate(INT, [5, 0], xy(EXAMPLE1)) == 30
    assert evaluate(INT, [5, 3], xy(EXAMPLE2)) == 21
    assert evaluate(INT, [5, 0], xy(EXAMPLE4P)) == 100


def test_eval_accepts_callable_generator():
    assert evaluate(INT, lambda v: 5, xy(EXAMPLE1)) == 30


def test_let_shadowing_restores_outer_binding():
    # (let x = x+1 in x*x) + x at x=2 is 9 + 2
    e = Plus(Let(0, Plus(Var(0), ONE), Times(Var(0), Var(0))), Var(0))
    assert evaluate(INT, [2], e) == 11


def test_gen_env_shadow_stack():
    env = GenEnv(lambda v: v * 10)
    env.push(1, "a")
    env.push(1, "b")
    assert env.lookup(1) == "b" and env.lookup(2) == 20
    env.pop(1)
    assert env.lookup(1) == "a"
    env.pop(1)
    assert env.lookup(1) == 10


def test_deep_tree_evaluates_without_recursion():
    e = Var(0)
    for _ in range(100_000):
        e = Times(Plus(e, ONE), ONE)
    assert evaluate(INT, [0], e) == 100_000


def test_shared_evaluation_agrees_with_plain():
    # a DAG whose unfolding is exponential in its height
    e = Var(0)
    for _ in range(40):
        e = Plus(e, e)
    assert evaluate(INT, [1], e, shared=True) == 2 ** 40


@settings(max_examples=200)
@given(exprs(num_vars=3, lets=True), points(3))
def test_shared_matches_plain_with_lets(e, point):
    assert evaluate(INT, point, e, shared=True) == evaluate(INT, point, e)


@settings(max_examples=200)
@given(exprs(num_vars=3, lets=True), points(3))
def test_fusion_through_symbolic(e, point):
    # evaluating symbolically then at a point equals evaluating at the point
    symbolic_value = evaluate(SYMBOLIC, var_gen, e)
    assert evaluate(INT, point, symbolic_value) == evaluate(INT, point, e)


@given(exprs(num_vars=3, trig=True, lets=True))
def test_reflection(e):
    assert probe_equal(evaluate(SYMBOLIC, Var, e), e)


@given(exprs(num_vars=2), st.integers(0, 2**61 - 2), st.integers(0, 2**61 - 2))
def test_homomorphism_into_prime_field(e, a, b):
    # reduction mod p is a semiring homomorphism from the integers
    field = PrimeField()
    assert evaluate(field, [a, b], e) == evaluate(INT, [a, b], e) % field.p


def test_probe_equal():
    assert probe_equal(xy("x*(y+1)"), xy("x*y + x"))
    assert not probe_equal(xy("x*y"), xy("x+y"))
    assert probe_equal(xy("sin(x*y)"), xy("sin(y*x)"))
    assert not probe_equal(xy("sin(x)"), xy("cos(x)"))


def test_reify_example2():
    assert reify(example2_generic, 2) == Plus(Plus(Times(Var(0), Var(1)), Var(0)), ONE)


@pytest.mark.parametrize("f, arity, expected", [
    (lambda a: a, 1, Var(0)),
    (lambda a: a * a, 1, Times(Var(0), Var(0))),
])
def test_reify_trivial(f, arity, expected):
    assert reify(f, arity) == expected


def test_apply_generic_integers_and_nagata():
    assert apply_generic(example2_generic, [5, 3], INT) == 21
    sparse = SparseModule(INT, 2)
    sr = NagataSemiring(INT, sparse)
    out = apply_generic(example2_generic, [Nagata(5, sparse.delta(0)), Nagata(3, sparse.delta(1))], sr)
    assert out.pri == 21 and sparse.normalize(out.tan) == {0: 4, 1: 5}


def test_apply_generic_constant_program():
    assert apply_generic(lambda: 7, [], INT) == 7
    assert evaluate(INT, [], reify(lambda: 7, 0)) == 7


@given(points(2, -20, 20))
def test_shallow_deep_agreement(point):
    corpus = [example2_generic, lambda x, y: (x + 1) * (y + 2) * x, lambda x, y: -x * y + 3]
    for f in corpus:
        assert apply_generic(f, point, INT) == evaluate(INT, point, reify(f, 2))
