from fractions import Fraction

import pytest

from symhh.dgcat import (BUILTINS, FinDGCategory, check_functor, exterior,
                         functor_pushforward, group_autoequivalence, identity_functor,
                         StrongAction, k_two_objects, permutation_action, quiver_a2, semidirect,
                         symmetric_group, symmetric_power, tensor_power, unit_category, validate)
from symhh.hochschild import basic_chains

ONE = Fraction(1)


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_are_valid(name):
    assert validate(BUILTINS[name]()) is None


def test_validate_reports_non_closed_unit():
    A = FinDGCategory(["*"], {"id": ("*", "*", 0), "x": ("*", "*", 1)}, {"*": "id"},
                      {"id": {"x": ONE}})
    v = validate(A)
    assert v is not None and v.axiom == "unit not closed"


def test_validate_reports_wrong_degree_composition():
    A = FinDGCategory(["*"], {"id": ("*", "*", 0), "x": ("*", "*", 1), "y": ("*", "*", 1)},
                      {"*": "id"}, composition={("x", "x"): {"y": ONE}})
    assert validate(A).axiom == "composition does not add degrees"


def test_validate_reports_nonassociative_table():
    mors = {"id": ("*", "*", 0), "x": ("*", "*", 0), "y": ("*", "*", 0)}
    comp = {("x", "x"): {"y": ONE}, ("x", "y"): {"x": ONE}}
    assert validate(FinDGCategory(["*"], mors, {"*": "id"}, composition=comp)).axiom == "associativity"


def test_quiver_composition_table():
    Q = quiver_a2()
    assert Q.mul("f", "e1") == {"f": ONE}
    assert Q.mul("e2", "f") == {"f": ONE}
    assert Q.hom("1", "2") == ["f"]
    assert Q.hom("2", "1") == []


def test_tensor_power_edge_cases():
    A = quiver_a2()
    A1 = tensor_power(A, 1)
    assert len(A1.morphisms) == len(A.morphisms)
    assert validate(A1) is None
    for n in range(4):
        kn = tensor_power(unit_category(), n)
        assert len(kn.objects) == 1 and len(kn.morphisms) == 1


def test_tensor_power_koszul_sign():
    E2 = tensor_power(exterior(), 2)
    lhs = E2.mul(("th", "id"), ("id", "th"))
    rhs = E2.mul(("id", "th"), ("th", "id"))
    assert lhs == {("th", "th"): ONE}
    assert rhs == {("th", "th"): -ONE}
    assert validate(E2) is None


def test_permutation_action():
    act1 = permutation_action(quiver_a2(), 1)
    assert act1.group.elements == [(0,)]
    Q = quiver_a2()
    act = permutation_action(Q, 2)
    t = (1, 0)
    assert act.mor(t, ("f", "e1")) == {("e1", "f"): ONE}
    assert permutation_action(exterior(), 2).mor(t, ("th", "th")) == {("th", "th"): -ONE}
    assert act.check() is None


def test_semidirect_of_k_by_s2_is_group_algebra():
    S = symmetric_power(unit_category(), 2)
    (x,) = S.objects
    assert len(S.hom(x, x)) == 2
    s = (("id", "id"), (1, 0))
    e = (("id", "id"), (0, 1))
    assert S.mul(s, s) == {e: ONE}
    assert validate(S) is None


def test_semidirect_trivial_group_is_isomorphic():
    Q = quiver_a2()
    G = symmetric_group(1)
    S = semidirect(Q, StrongAction(G, Q, lambda g: identity_functor(Q)))
    assert len(S.morphisms) == len(Q.morphisms)
    for a in Q.morphisms:
        for b in Q.morphisms:
            if Q.src(a) == Q.tgt(b):
                assert S.mul((a, G.e), (b, G.e)) == {(f, G.e): c for f, c in Q.mul(a, b).items()}


def test_group_autoequivalence():
    S = symmetric_power(quiver_a2(), 2)
    G = S.action.group
    F = group_autoequivalence(G.e, S)
    for f in S.morphisms:
        assert F.mor(f) == {f: ONE}
    for g in G.elements:
        assert check_functor(group_autoequivalence(g, S)) is None


def test_functor_pushforward_identity():
    A = k_two_objects()
    Fid = identity_functor(A)
    for m in range(3):
        for x in basic_chains(A, m):
            assert functor_pushforward(Fid, {x: ONE}) == {x: ONE}


def test_symmetric_power_zero_is_unit():
    S0 = symmetric_power(quiver_a2(), 0)
    assert len(S0.objects) == 1 and len(S0.morphisms) == 1
