import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abstractad.algebra import INT, OpCounter
from abstractad.tangents import (
    CayleyModule, ConsumedHandle, DenseModule, LinearModule, MutAccum, SparseModule,
    TapeModule, abs_sparse, cayley_abs, cayley_rep, delta_for, iso_chains,
    linhom_abs, linhom_apply, linhom_rep, modify_at, rep_sparse,
)

from conftest import dense_vectors, ints, sparse_maps

V = 3
SPARSE = SparseModule(INT, V)
LIN = LinearModule(SPARSE)
CAY = CayleyModule(SPARSE)
TAPE = TapeModule(INT, V)
CHAINS = iso_chains(INT, V)


# -- sparse ----------------------------------------------------------------------

def test_abs_sparse_examples():
    assert abs_sparse({}, 2) == (0, 0)
    assert abs_sparse({0: 4, 1: 5}, 2) == (4, 5)
    assert abs_sparse({1: 7}, 3) == (0, 7, 0)


def test_rep_sparse_examples():
    assert rep_sparse((0, 0)) == {}
    assert rep_sparse((4, 5)) == {0: 4, 1: 5}


@given(dense_vectors(V))
def test_sparse_inverse_pair(f):
    assert abs_sparse(rep_sparse(f), V) == f


def test_sparse_add_keeps_cancelled_zeros_but_compares_normalised():
    s = SPARSE.add({0: 2}, {0: -2, 1: 1})
    assert s == {0: 0, 1: 1}
    assert SPARSE.eq(s, {1: 1})
    assert SPARSE.normalize(s) == {1: 1}


# -- linear and Cayley homs -----------------------------------------------------------

def test_linhom_examples():
    assert linhom_abs(LIN, linhom_rep(LIN, {0: 2})) == {0: 2}
    assert linhom_apply(LIN, LIN.scale(5, linhom_rep(LIN, {0: 2})), 1) == {0: 10}
    assert linhom_apply(LIN, LIN.delta(0), 7) == {0: 7}


def test_cayley_examples():
    assert cayley_abs(CAY, cayley_rep(CAY, {0: 3})) == {0: 3}
    both = CAY.add(cayley_rep(CAY, {0: 1}), cayley_rep(CAY, {0: 2}))
    assert cayley_abs(CAY, both) == {0: 3}
    assert cayley_abs(CAY, CAY.zero()) == {}


@given(sparse_maps(V), sparse_maps(V))
def test_cayley_abs_is_monoid_homomorphism(a, b):
    f, g = cayley_rep(CAY, a), cayley_rep(CAY, b)
    assert SPARSE.eq(cayley_abs(CAY, CAY.add(f, g)), SPARSE.add(a, b))


def _random_linhom(rng, depth=4):
    kind = rng.choice(["delta", "lift", "zero"] if depth == 0 else
                      ["delta", "lift", "zero", "add", "scale", "add", "scale"])
    if kind == "delta":
        return LIN.delta(rng.randrange(V))
    if kind == "lift":
        return LIN.lift({rng.randrange(V): rng.randint(-9, 9)})
    if kind == "zero":
        return LIN.zero()
    if kind == "add":
        return LIN.add(_random_linhom(rng, depth - 1), _random_linhom(rng, depth - 1))
    return LIN.scale(rng.randint(-9, 9), _random_linhom(rng, depth - 1))


@given(st.integers(0, 10**6), ints, ints)
def test_linhom_homogeneity(seed, x, y):
    f = _random_linhom(random.Random(seed))
    assert SPARSE.eq(LIN.apply(f, x * y), SPARSE.scale(x, LIN.apply(f, y)))


# -- deltas per representation -------------------------------------------------------

def test_delta_for_each_representation():
    assert delta_for(DenseModule(INT, 3), 1) == (0, 1, 0)
    assert delta_for(SPARSE, 0) == {0: 1}
    assert TAPE.mut_run(TAPE.scaled_delta(0, 7)) == {0: 7}
    lin_tape = LinearModule(TAPE)
    assert TAPE.mut_run(lin_tape.apply(delta_for(lin_tape, 0), 7)) == {0: 7}
    with pytest.raises(KeyError):
        delta_for(SPARSE, 5)


# -- mutable accumulator -------------------------------------------------------------

def test_modify_at_and_snapshot():
    h = MutAccum(INT, V)
    modify_at(h, 0, lambda c: c + 5)
    assert h.cells[0] == 5
    modify_at(h, 0, lambda c: c + 5)
    assert h.snapshot() == {0: 10}


def test_handle_is_single_use():
    h = TAPE.new_handle()
    assert h.finish() == {}
    with pytest.raises(ConsumedHandle):
        modify_at(h, 0, lambda c: c)
    with pytest.raises(ConsumedHandle):
        TAPE.run(TAPE.delta(0), h)


def test_mut_run_examples():
    assert TAPE.mut_run(TAPE.zero()) == {}
    assert TAPE.mut_run(TAPE.delta(0)) == {0: 1}


def test_touch_counts():
    c = OpCounter()
    h = MutAccum(INT, 4, c)
    h.add_at(1, 3)
    assert c.touches == 4 + 2


@given(st.lists(st.tuples(st.integers(0, V - 1), ints), max_size=30))
def test_mutaccum_matches_map_model(updates):
    h = MutAccum(INT, V)
    model: dict = {}
    for v, d in updates:
        modify_at(h, v, lambda c, d=d: c + d)
        SPARSE.insert_with_add(model, v, d)
    assert h.finish() == SPARSE.normalize(model)


# -- Kronecker isomorphisms --------------------------------------------------------------

DENSE = DenseModule(INT, V)


@pytest.mark.parametrize("name", sorted(CHAINS))
@settings(max_examples=150)
@given(f=dense_vectors(V), g=dense_vectors(V), d=ints, v=st.integers(0, V - 1))
def test_iso_chain_laws(name, f, g, d, v):
    w = CHAINS[name]
    m = w.module
    assert w.abs(w.rep(f)) == f
    assert m.eq(w.rep(w.abs(w.rep(g))), w.rep(g))
    assert m.eq(w.rep(DENSE.zero()), m.zero())
    assert m.eq(w.rep(DENSE.delta(v)), m.delta(v))
    assert m.eq(w.rep(DENSE.scale(d, f)), m.scale(d, w.rep(f)))
    assert m.eq(w.rep(DENSE.add(f, g)), m.add(w.rep(f), w.rep(g)))


@pytest.mark.parametrize("name", sorted(CHAINS))
@given(v=st.integers(0, V - 1))
def test_abs_of_delta_is_unit_vector(name, v):
    w = CHAINS[name]
    assert w.abs(w.module.delta(v)) == tuple(int(i == v) for i in range(V))


@pytest.mark.parametrize("module", [SPARSE, CAY, LIN, TAPE, LinearModule(CAY), LinearModule(TAPE)],
                         ids=lambda m: m.name)
@given(de1=dense_vectors(V), de2=dense_vectors(V), y=st.integers(0, V - 1))
def test_letin_matches_dense_formula(module, de1, de2, y):
    # letin y de1 de2 = (de2[y] • de1) ⊕ de2 with de2[y] zeroed
    expected = list(DENSE.add(DENSE.scale(de2[y], de1), DENSE.purge(de2, y)))
    if isinstance(module, LinearModule):
        rep = lambda f: module.lift(module.target.rep(f))
    else:
        rep = module.rep
    out = module.letin(y, rep(de1), rep(de2))
    assert module.abs(out) == tuple(expected)
