import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abstractad.algebra import INT
from abstractad.ad.symbolic import derive
from abstractad.evaluate import evaluate, probe_equal
from abstractad.expr import (
    ONE, ZERO, Let, Neg, Plus, Times, UnknownVariable, Var, VarRegistry, const_lit,
    default_registry, depth, free_vars, inline_lets, simplify_basic, size,
)
from abstractad.syntax import ParseError, parse, pretty, tokenize

from conftest import exprs, xy

X, Y, Z = Var(0), Var(1), Var(2)


def test_parse_example1():
    e, reg = parse("x*(x+1)")
    assert e == Times(X, Plus(X, ONE))
    assert reg.names == ("x",)


def test_parse_let():
    e = xy("let y = x+x in y*y")
    assert e == Let(1, Plus(X, X), Times(Y, Y))


def test_parse_literals_and_subtraction():
    assert parse("2")[0] == Plus(ONE, ONE)
    assert parse("0")[0] == ZERO
    assert xy("x - y") == Plus(X, Neg(Y))
    assert evaluate(INT, [], parse("5")[0]) == 5


def test_parse_precedence():
    assert xy("x + y * x") == Plus(X, Times(Y, X))
    assert xy("-x * y") == Times(Neg(X), Y)
    assert xy("let y = x in y + 1 * x") == Let(1, X, Plus(Y, Times(ONE, X)))


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        parse("x +\n  * y")
    assert (info.value.line, info.value.column) == (2, 3)
    with pytest.raises(ParseError):
        parse("x $ y")
    with pytest.raises(ParseError):
        parse("let in = 1 in 2")


def test_fixed_registry_rejects_unknown_names():
    reg = VarRegistry(["x"])
    assert parse("x*x", reg, mode="fixed")[0] == Times(X, X)
    with pytest.raises(ParseError):
        parse("x*y", reg, mode="fixed")
    assert len(reg) == 1  # the caller's registry is not mutated


def test_tokenize_whitespace_insensitive():
    assert [t.text for t in tokenize(" sin ( x )*2 ")] == [t.text for t in tokenize("sin(x)*2")]


def test_registry_roundtrip():
    reg = default_registry(3)
    assert reg.names == ("x", "y", "z")
    assert all(reg.lookup(reg.name_of(i)) == i for i in range(3))
    assert default_registry(4).names[0] == "x0"
    with pytest.raises(UnknownVariable):
        reg.lookup("w")


@pytest.mark.parametrize("e, text", [
    (Times(X, Plus(X, ONE)), "x * (x + 1)"),
    (ZERO, "0"),
    (Let(1, Plus(X, X), Times(Y, Y)), "let y = x + x in y * y"),
    (Plus(X, Neg(Y)), "x - y"),
    (Times(X, Times(Y, X)), "x * (y * x)"),
])
def test_pretty(e, text):
    assert pretty(e, VarRegistry(["x", "y"])) == text


@settings(max_examples=200)
@given(exprs(num_vars=3, trig=True, lets=True))
def test_pretty_parse_roundtrip(e):
    reg = default_registry(3)
    back, _ = parse(pretty(e, reg), reg)
    assert probe_equal(back, e)


@given(st.integers(0, 10**6 - 1))
def test_const_lit_value(n):
    e = const_lit(n)
    assert evaluate(INT, [], e) == n
    assert size(e) <= 6 * max(n, 1).bit_length()  # O(log n) nodes


def test_const_lit_small():
    assert const_lit(0) == ZERO and const_lit(1) == ONE
    assert evaluate(INT, [], const_lit(5)) == 5


def test_free_vars():
    assert free_vars(xy("x*(x+1)")) == {0}
    assert free_vars(xy("let y = x+x in y*y")) == {0}
    e, reg = parse("let y = x+x in y*z")
    assert {reg.name_of(v) for v in free_vars(e)} == {"x", "z"}
    assert free_vars(xy("let x = x + 1 in x*y")) == {0, 1}


def test_simplify_basic():
    assert simplify_basic(Plus(ZERO, X)) == X
    assert simplify_basic(Times(X, ZERO)) == ZERO
    assert simplify_basic(Times(ONE, Plus(X, ZERO))) == X
    d = simplify_basic(derive(0, xy("x*(x+1)")))
    assert probe_equal(d, xy("x + x + 1"))


@given(exprs(num_vars=3, lets=True))
def test_simplify_preserves_meaning_and_shrinks(e):
    s = simplify_basic(e)
    assert probe_equal(s, e)
    assert size(s) <= size(e)


@given(exprs(num_vars=3, lets=True), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_inline_lets_preserves_value(e, point):
    flat = inline_lets(e)
    assert not any(isinstance(n, Let) for n in _nodes(flat))
    assert evaluate(INT, point, flat) == evaluate(INT, point, e)


def _nodes(e):
    from abstractad.expr import iter_nodes
    return list(iter_nodes(e))


def test_deep_expression_helpers_do_not_recurse():
    e = X
    for _ in range(100_000):
        e = Plus(e, ONE)
    assert size(e) == 200_001
    assert depth(e) == 100_001
    assert free_vars(e) == {0}
    assert len(pretty(e, VarRegistry(["x"]))) > 100_000
