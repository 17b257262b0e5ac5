from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symhh.dgcat import (BUILTINS, cyclic_quiver, exterior, identity_functor, k_two_objects,
                         permutation_action, quiver_a2, tensor_power, tensor_product,
                         unit_category)
from symhh.exactla import homology_dimensions, vadd
from symhh.hochschild import (Coinvariants, EndpointError, apply_functor, aw, basic_chains,
                              build_complex, differential, ez, group_action_on_chains,
                              is_matrix_chain, matrix_decode, matrix_encode,
                              shuffle_with_constants, total_degree)
from symhh.orbifold import LongCycle

ONE = Fraction(1)


def chains_of(A, max_len, F=None):
    return [x for m in range(max_len + 1) for x in basic_chains(A, m, F)]


def d(A, x, F=None):
    return differential({x: ONE}, A, F)


# -- differential ---------------------------------------------------------------------

def test_differential_examples():
    k = unit_category()
    assert d(k, ("id",)) == {}
    # length 1: two faces cancel; length 2: three faces +, -, + leave one term
    assert d(k, ("id", "id")) == {}
    assert d(k, ("id", "id", "id")) == {("id", "id"): ONE}


def test_build_complex_of_k():
    C, info = build_complex(unit_category(), None, 2)
    assert {n: C.dim(n) for n in C.degrees} == {0: 1, 1: 1, 2: 1}
    assert C.d(1).to_dense() == [[0]] and C.d(2).to_dense() == [[1]]
    assert homology_dimensions(C)[0] == 1 and homology_dimensions(C)[1] == 0
    assert info["concentrated"]


def test_two_objects_length_zero():
    C, _ = build_complex(k_two_objects(), None, 1)
    assert C.dim(0) == 2


@pytest.mark.parametrize("name", ["k", "k-two-objects", "quiver", "exterior"])
def test_d_squared_vanishes(name):
    A = BUILTINS[name]()
    C, _ = build_complex(A, None, 5 if name != "exterior" else 4)
    C.check()


def test_d_squared_vanishes_twisted():
    Q = quiver_a2()
    L = LongCycle(Q, 2)
    for y in chains_of(L.An, 3, L.t):
        dd: dict = {}
        for z, c in d(L.An, y, L.t).items():
            vadd(dd, d(L.An, z, L.t), c)
        assert not dd


def test_d_squared_vanishes_with_internal_differential():
    A = BUILTINS["dgtest"]()
    for x in chains_of(A, 3):
        dd: dict = {}
        for z, c in d(A, x).items():
            vadd(dd, d(A, z), c)
        assert not dd


def test_endpoint_mismatch_rejected():
    with pytest.raises(EndpointError):
        d(quiver_a2(), ("f", "e1"))


# -- functors, group actions, coinvariants ----------------------------------------------

def test_group_action_identity_and_swap():
    Q = quiver_a2()
    act = permutation_action(Q, 2)
    A2 = act.category
    for x in chains_of(A2, 2):
        assert group_action_on_chains(act.functor((0, 1)), {x: ONE}) == {x: ONE}
    k2 = tensor_power(unit_category(), 2)
    swap = permutation_action(unit_category(), 2).functor((1, 0))
    for x in chains_of(k2, 2):
        assert group_action_on_chains(swap, {x: ONE}) == {x: ONE}


def test_coinvariants_trivial_group():
    Q = quiver_a2()
    C = Coinvariants.of_functors([identity_functor(Q)])
    for x in chains_of(Q, 2):
        assert C.project({x: ONE}) == {x: ONE}


def test_coinvariants_of_odd_swap_kill_symmetric_chain():
    E = exterior()
    act = permutation_action(E, 2)
    C = Coinvariants.of_functors([act.functor(g) for g in act.group.elements])
    # t_2 sends th⊗th to -th⊗th, so its class vanishes
    assert C.project({(("th", "th"),): ONE}) == {}
    assert C.equal({(("id", "th"),): ONE}, {(("th", "id"),): ONE})


@given(st.data())
def test_functors_commute_with_differential(data):
    Q = quiver_a2()
    act = permutation_action(Q, 2)
    F = act.functor((1, 0))
    x = data.draw(st.sampled_from(chains_of(act.category, 3)))
    lhs = differential(apply_functor(F, {x: ONE}), act.category)
    assert lhs == apply_functor(F, d(act.category, x))


# -- matrix chains -------------------------------------------------------------------

def test_matrix_codec():
    Q = quiver_a2()
    L = LongCycle(Q, 2)
    chains = chains_of(L.An, 3, L.t)
    assert chains
    for y in chains:
        assert matrix_decode(matrix_encode(y, Q)) == y
    # n = 1: a column of entries, the same data as the chain itself
    L1 = LongCycle(Q, 1)
    for y in chains_of(L1.An, 2, L1.t):
        assert [r[0] for r in matrix_encode(y, Q)] == [f[0] for f in y]


def test_matrix_chain_wrap_condition():
    C = cyclic_quiver()
    # m = 1, n = 2: the column-major path alpha_11, alpha_12 must close up
    assert is_matrix_chain((("g", "f"),), C)
    assert not is_matrix_chain((("g", "g"),), C)
    with pytest.raises(EndpointError):
        matrix_encode((("g", "g"),), C)
    # m = 2, n = 2: alpha_11, alpha_21, alpha_12, alpha_22 read down columns
    assert is_matrix_chain((("g", "e1"), ("f", "e1")), C)
    assert not is_matrix_chain((("g", "e1"), ("e1", "f")), C)


# -- shuffles with constants ------------------------------------------------------------

def test_shuffle_with_constants_examples():
    C = cyclic_quiver()
    x = {("g", "f"): ONE}
    assert shuffle_with_constants(x, 0, C) == x
    assert shuffle_with_constants(x, 1, C) == {("g", "f", "e1"): ONE, ("g", "e2", "f"): -ONE}


@pytest.mark.parametrize("k", range(0, 4))
def test_shuffle_with_constants_counts(k):
    # with pairwise distinct non-identity entries no summands cancel
    C = cyclic_quiver()
    for x in [("g", "f"), ("f", "g"), ("gf", "gf"), ("g", "f", "g", "f")]:
        if not all(y in basic_chains(C, len(x) - 1) for y in [x]):
            continue
        n = len(x) - 1
        out = shuffle_with_constants({x: ONE}, k, C)
        if len(set(x[1:])) == n:
            assert len(out) == comb(n + k, k)


# -- Eilenberg-Zilber and Alexander-Whitney ------------------------------------------------

def test_ez_examples():
    Q = quiver_a2()
    assert ez({("e1",): ONE}, {("e2",): ONE}, Q, Q) == {(("e1", "e2"),): ONE}
    C = cyclic_quiver()
    assert ez({("g", "f"): ONE}, {("e1",): ONE}, C, C) == {(("g", "e1"), ("f", "e1")): ONE}


def test_aw_examples():
    C = cyclic_quiver()
    assert aw({(("e1", "e1"),): ONE}, C, C) == {(("e1",), ("e1",)): ONE}
    assert aw({(("g", "e1"), ("f", "e1")): ONE}, C, C) == {
        (("g", "f"), ("e1",)): ONE, (("gf",), ("e1", "e1")): ONE}


def _d_pair(x, y, A, B):
    out: dict = {}
    for u, c in d(A, x).items():
        vadd(out, {(u, y): c})
    sg = -1 if total_degree(x, A) % 2 else 1
    for v, c in d(B, y).items():
        vadd(out, {(x, v): sg * c})
    return out


@pytest.mark.parametrize("name", ["cyclic", "exterior", "dgtest"])
def test_ez_and_aw_are_chain_maps(name):
    A = BUILTINS[name]()
    AB = tensor_product(A, A)
    xs = chains_of(A, 2)
    for x in xs:
        for y in xs:
            if len(x) + len(y) > 5:
                continue
            lhs = differential(ez({x: ONE}, {y: ONE}, A, A), AB)
            rhs: dict = {}
            for (u, v), c in _d_pair(x, y, A, A).items():
                vadd(rhs, ez({u: ONE}, {v: ONE}, A, A), c)
            assert lhs == rhs
    for z in chains_of(AB, 3):
        lhs: dict = {}
        for (u, v), c in aw({z: ONE}, A, A).items():
            vadd(lhs, _d_pair(u, v, A, A), c)
        assert lhs == aw(differential({z: ONE}, AB), A, A)


def _degenerate(x, A):
    return any(A.is_identity(f) for f in x[1:])


@pytest.mark.parametrize("name", ["cyclic", "exterior", "quiver"])
def test_aw_ez_is_identity_on_normalized_chains(name):
    A = BUILTINS[name]()
    xs = [x for x in chains_of(A, 3) if not _degenerate(x, A)]
    for x in xs:
        for y in xs:
            if len(x) + len(y) > 5:
                continue
            back = aw(ez({x: ONE}, {y: ONE}, A, A), A, A)
            err = dict(back)
            vadd(err, {(x, y): ONE}, -1)
            assert all(_degenerate(u, A) or _degenerate(v, A) for u, v in err)


def test_aw_ez_error_on_degenerate_chains():
    # on unnormalized chains aw∘ez differs from the identity by degenerate terms
    k = unit_category()
    x = ("id", "id")
    back = aw(ez({x: ONE}, {x: ONE}, k, k), k, k)
    assert back != {(x, x): ONE}
    err = dict(back)
    vadd(err, {(x, x): ONE}, -1)
    assert err and all(len(u) > 1 or len(v) > 1 for u, v in err)
