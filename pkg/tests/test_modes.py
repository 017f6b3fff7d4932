import threading

import pytest
from hypothesis import given, settings

from abstractad.ad import (
    MODES, Nagata, abstract_d, derive, derive_tuple, forward_classic, letin, run_mode,
    symbolic,
)
from abstractad.algebra import INT, RATIONAL
from abstractad.evaluate import SYMBOLIC, Var, evaluate, probe_equal
from abstractad.expr import ONE, ZERO, free_vars, inline_lets
from abstractad.oracle import brute_force_grad
from abstractad.syntax import parse
from abstractad.tangents import DenseModule, SparseModule

from conftest import EXAMPLE1, EXAMPLE2, EXAMPLE3, EXAMPLE4P, exprs, points, xy

X, Y = Var(0), Var(1)


# -- worked examples ---------------------------------------------------------------

def test_forward_classic_example1():
    assert forward_classic(INT, [5, 0], 0, xy(EXAMPLE1)) == Nagata(30, 11)
    assert forward_classic(INT, [5, 0], 0, xy(EXAMPLE3)) == Nagata(300, 170)
    assert forward_classic(INT, [5, 0], 0, ONE) == Nagata(1, 0)


def test_abstract_d_example2():
    e = xy(EXAMPLE2)
    assert abstract_d(INT, DenseModule(INT, 2), [5, 3], e) == Nagata(21, (4, 5))
    assert abstract_d(INT, SparseModule(INT, 2), [5, 3], e) == Nagata(21, {0: 4, 1: 5})
    assert abstract_d(INT, SparseModule(INT, 2), [5, 3], ONE) == Nagata(1, {})


@pytest.mark.parametrize("mode", MODES)
def test_example3_every_mode(mode):
    r = run_mode(mode, INT, 1, [5], xy(EXAMPLE3))
    assert (r.value, r.gradient()) == (300, {0: 170})


@pytest.mark.parametrize("mode", MODES)
def test_example4p_let_sharing(mode):
    r = run_mode(mode, INT, 2, [5, 0], xy(EXAMPLE4P))
    assert (r.value, r.gradient()) == (100, {0: 40})


@pytest.mark.parametrize("mode", MODES)
def test_shadowing_let(mode):
    # let x = x+1 in x*x at x=2: inline oracle gives (x+1)^2, derivative 2(x+1)
    r = run_mode(mode, INT, 1, [2], xy("let x = x+1 in x*x"))
    assert (r.value, r.gradient()) == (9, {0: 6})


@pytest.mark.parametrize("mode", MODES)
def test_nested_shadowing_does_not_leak(mode):
    e, _ = parse("let y = x*z in let x = y+x in x*y*z")
    r = run_mode(mode, INT, 3, [7, 2, 3], e)
    assert (r.value, r.gradient()) == (144, {1: 144, 2: 132})


def test_letin_independent_body():
    sparse = SparseModule(INT, 2)
    assert sparse.eq(letin(sparse, 1, {0: 3}, {0: 5}), {0: 5})


# -- derive ------------------------------------------------------------------------

def test_derive_examples():
    assert probe_equal(derive(0, xy(EXAMPLE1)), xy("x + (x + 1)"))
    assert derive(0, ZERO) == ZERO
    assert evaluate(INT, [5, 0], derive(0, xy(EXAMPLE4P))) == 40


def test_derive_tuple_examples():
    e = xy(EXAMPLE1)
    first, second = derive_tuple(0, e)
    assert first == e and probe_equal(second, xy("x + (x + 1)"))
    assert derive_tuple(0, ONE) == (ONE, ZERO)


@given(exprs(num_vars=2, trig=True, lets=True))
def test_derive_tuple_agrees_with_derive(e):
    first, second = derive_tuple(0, e)
    assert probe_equal(first, e) and probe_equal(second, derive(0, e))


def test_derive_trig_needs_ring():
    d = derive(0, xy("sin(x)"))
    assert probe_equal(d, xy("cos(x) * 1"))
    assert probe_equal(derive(0, xy("cos(x)")), xy("-sin(x) * 1"))


# -- symbolic ----------------------------------------------------------------------

def test_symbolic_examples():
    assert probe_equal(symbolic(0, xy(EXAMPLE1)).tan, derive(0, xy(EXAMPLE1)))
    assert symbolic(0, Y) == Nagata(Y, ZERO)
    assert symbolic(0, X) == Nagata(X, ONE)


@given(exprs(num_vars=2, trig=True, lets=True))
def test_symbolic_is_forward_over_expressions(e):
    a = symbolic(1, e)
    b = forward_classic(SYMBOLIC, Var, 1, e)
    assert probe_equal(a.pri, b.pri) and probe_equal(a.tan, b.tan)
    assert probe_equal(a.tan, derive(1, e))


@settings(max_examples=200)
@given(exprs(num_vars=2, lets=True), points(2))
def test_gradient_is_evaluated_derivative(e, point):
    # forward mode equals evaluating the symbolic dual at the point
    dual = symbolic(0, e)
    got = forward_classic(INT, point, 0, e)
    assert got == Nagata(evaluate(INT, point, dual.pri), evaluate(INT, point, dual.tan))


# -- cross-mode agreement -------------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(exprs(num_vars=4, lets=True, max_leaves=40), points(4))
def test_all_modes_agree_with_brute_force(e, point):
    expected = brute_force_grad(point, e)
    for mode in MODES:
        r = run_mode(mode, INT, 4, point, e)
        assert r.gradient() == expected, mode
        assert r.value == evaluate(INT, point, e)


@settings(max_examples=200, deadline=None)
@given(exprs(num_vars=3, lets=True), points(3))
def test_let_aware_gradient_equals_inlined(e, point):
    flat = inline_lets(e)
    for mode in MODES:
        shared = run_mode(mode, INT, 3, point, e).gradient()
        assert shared == run_mode(mode, INT, 3, point, flat).gradient()
        assert shared == run_mode(mode, INT, 3, point, e, share_lets=False).gradient()


def test_rational_scalars():
    from fractions import Fraction as F
    r = run_mode("reverse-mut", RATIONAL, 2, [F(1, 2), F(3)], xy(EXAMPLE2))
    assert r.value == F(3) and r.gradient() == {0: F(4), 1: F(1, 2)}


def test_gradient_only_for_free_variables():
    r = run_mode("reverse", INT, 2, [5, 3], xy(EXAMPLE4P))
    assert set(r.gradient()) <= free_vars(xy(EXAMPLE4P))


def test_reverse_mut_concurrent_calls():
    e = xy(EXAMPLE3)
    results = []

    def work():
        for _ in range(50):
            results.append(run_mode("reverse-mut", INT, 1, [5], e).gradient())

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == [{0: 170}] * 200


def test_unknown_mode():
    with pytest.raises(ValueError):
        run_mode("sideways", INT, 1, [1], X)
