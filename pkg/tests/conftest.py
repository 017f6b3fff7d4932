
import pytest
from hypothesis import strategies as st

from abstractad.expr import ONE, ZERO, Cos, Let, Neg, Plus, Sin, Times, Var
from abstractad.syntax import parse

# running examples, in the default registry x, y
EXAMPLE1 = "x*(x+1)"
EXAMPLE2 = "x*y + x + 1"
EXAMPLE3 = "x*((x+1)*(x+x))"
EXAMPLE4P = "let y = x + x in y*y"


def xy(text):
    """Parse with x and y pre-registered as variables 0 and 1."""
    from abstractad.expr import VarRegistry
    return parse(text, VarRegistry(["x", "y"]))[0]


@pytest.fixture
def examples():
    return {
        "example1": xy(EXAMPLE1),
        "example2": xy(EXAMPLE2),
        "example3": xy(EXAMPLE3),
        "example4p": xy(EXAMPLE4P),
    }


def exprs(num_vars=3, trig=False, lets=False, neg=True, max_leaves=25):
    leaves = st.one_of(
        st.integers(0, num_vars - 1).map(Var),
        st.sampled_from([ZERO, ONE]),
    )

    def extend(children):
        options = [
            st.builds(Plus, children, children),
            st.builds(Times, children, children),
        ]
        if neg:
            options.append(st.builds(Neg, children))
        if trig:
            options += [st.builds(Sin, children), st.builds(Cos, children)]
        if lets:
            options.append(st.builds(Let, st.integers(0, num_vars - 1), children, children))
        return st.one_of(*options)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def points(num_vars=3, lo=-4, hi=4):
    return st.lists(st.integers(lo, hi), min_size=num_vars, max_size=num_vars)


ints = st.integers(-50, 50)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def dense_vectors(num_vars=3, elems=ints):
    return st.tuples(*([elems] * num_vars))


def sparse_maps(num_vars=3, elems=ints):
    return st.dictionaries(st.integers(0, num_vars - 1), elems, max_size=num_vars)


