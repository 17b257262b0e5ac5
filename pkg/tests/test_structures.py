from fractions import Fraction
from itertools import permutations

import pytest

from symhh import combinat as cb
from symhh.dgcat import quiver_a2, unit_category
from symhh.exactla import vadd
from symhh.structures import (ONE, ClassFunctions, SymAlgebra, TotalHH, TransferredHopf,
                              adams_chain_n1, check_hopf, frobenius_gap, induce,
                              mu_prime_chain, restrict, tensor_class_functions)


@pytest.fixture(scope="module")
def hk():
    T = TotalHH(unit_category(), 4, 1)
    return T, T.transferred()


# -- the symmetric algebra --------------------------------------------------------------

def test_sym_algebra_examples():
    S = SymAlgebra({"v": 1, "w": 1, "u": 0})
    v, w = (1, "v"), (1, "w")
    assert S.mul(ONE, (v,)) == {(v,): 1}
    assert S.delta((v,)) == {((v,), ONE): 1, (ONE, (v,)): 1}
    assert S.delta((v, w)) == {((v, w), ONE): 1, ((v,), (w,)): 1, ((w,), (v,)): -1,
                               (ONE, (v, w)): 1}
    assert S.mul((v,), (v,)) == {}
    assert S.mul((w,), (v,)) == {(v, w): -1}


def test_sym_algebra_hopf_axioms_with_odd_generators():
    S = SymAlgebra({"u": 0, "v": 1, "w": 1})
    basis = S.basis(3)
    assert check_hopf(S, basis, max_weight=3, weight=S.weight) == []


def test_sym_algebra_adams_operations():
    S = SymAlgebra({"u": 0, "v": 1})
    for a in S.basis(3):
        assert S.adams(1, a) == {a: 1}
        for x in (1, 2):
            for y in (1, 2):
                lhs: dict = {}
                for b, c in S.adams(y, a).items():
                    vadd(lhs, S.adams(x, b), c)
                assert lhs == S.adams(x * y, a)


# -- the transferred structure on HH(S^n k) --------------------------------------------------

def test_dimensions_are_partition_counts(hk):
    T, _ = hk
    assert {n: v for (n, d), v in T.dimensions().items() if d == 0} == {
        0: (1, 1), 1: (1, 1), 2: (2, 2), 3: (3, 3), 4: (5, 5)}


def test_transferred_hopf_axioms(hk):
    T, H = hk
    assert check_hopf(H, T.hh_labels, max_weight=4, weight=H.weight) == []


def test_unit_counit(hk):
    T, H = hk
    (u,) = H.unit()
    assert u == (0, 0, 0)
    assert H.counit(u) == 1
    assert all(H.counit(a) == 0 for a in T.hh_labels if a[0] > 0)
    for a in T.hh_labels:
        assert H.mul(u, a) == {a: 1}


def test_weight_one_is_primitive(hk):
    T, H = hk
    (a,) = T.hh_basis(1, 0)
    assert H.delta(a) == {((0, 0, 0), a): 1, (a, (0, 0, 0)): 1}
    assert H.antipode((0, 0, 0)) == {(0, 0, 0): 1}


def test_antipode_is_sign_of_factor_count(hk):
    T, H = hk
    for a in T.hh_labels:
        (mon, c), = H.zeta(a).items()
        assert H.antipode(a) == {a: Fraction(-1) ** len(mon)}


def test_sign_by_weight_is_not_an_antipode(hk):
    # (-1)^n on HH(S^n k) breaks the antipode axiom as soon as n = 2
    T, H = hk

    class ByWeight(TransferredHopf):
        def __init__(self, base):
            self.__dict__.update(base.__dict__)

        def antipode(self, a):
            return self.antipode_by_weight(a)

    fails = check_hopf(ByWeight(H), T.hh_labels, max_weight=4, weight=H.weight)
    assert fails and all(kind == "antipode" for kind, _ in fails)
    assert min(w[0] for _, w in fails) == 2


def test_chain_level_product_agrees_with_transfer(hk):
    T, H = hk
    for a in T.hh_labels:
        for c in T.hh_labels:
            n, m = a[0], c[0]
            if n + m > 3:
                continue
            ch = mu_prime_chain(T.hh_rep(a), T.hh_rep(c), T.dec[n].S, T.dec[m].S)
            assert T.hh_coords(n + m, 0, ch) == H.mul(a, c)


def test_quiver_graded_dimensions_agree():
    T = TotalHH(quiver_a2(), 2, 3)
    for key, (left, right) in T.dimensions().items():
        assert left == right, key


# -- the character oracle ------------------------------------------------------------------

def brute_classes(n):
    seen, out = set(), []
    for g in permutations(range(n)):
        if g in seen:
            continue
        cls = {cb.compose(cb.compose(h, g), cb.inverse(h)) for h in permutations(range(n))}
        seen |= cls
        out.append(cls)
    return out


def test_class_counts():
    assert len(ClassFunctions(2).conjugacy_classes()) == 2 == len(brute_classes(2))
    assert len(ClassFunctions(3).conjugacy_classes()) == 3 == len(brute_classes(3))


def test_frobenius_reciprocity_s2_s1_in_s3():
    CF3 = ClassFunctions(3)
    big = [CF3.of_degree0_chain({(((("id",) * 3), s),): 1}) for s in [(0, 1, 2), (1, 0, 2), (1, 2, 0)]]
    CF2, CF1 = ClassFunctions(2), ClassFunctions(1)
    subs = [tensor_class_functions(CF2.of_degree0_chain({(((("id",) * 2), s),): 1}),
                                   CF1.of_degree0_chain({(((("id",),), (0,)),): 1}))
            for s in [(0, 1), (1, 0)]]
    for f in subs:
        for g in big:
            assert frobenius_gap(f, g, 2, 3) == 0


def test_restriction_and_induction_shapes():
    f = {g: Fraction(1) for g in permutations(range(3))}
    r = restrict(f, 1, 3)
    assert len(r) == 2 and all(v == 1 for v in r.values())
    # the permutation character of S_3 on three points: 3, 1, 0 by cycle type
    ind = induce(r, 1, 3)
    fixed = {g: Fraction(sum(1 for i in range(3) if g[i] == i)) for g in permutations(range(3))}
    assert ind == {g: v for g, v in fixed.items() if v}


@pytest.mark.parametrize("n", [2, 3])
def test_coproduct_matches_restriction(hk, n):
    T, H = hk
    for a in T.hh_basis(n, 0):
        f = ClassFunctions(n).of_degree0_chain(T.hh_rep(a))
        D = H.delta(a)
        for k in range(n + 1):
            got: dict = {}
            for (p, q), c in D.items():
                if p[0] == k:
                    fp = ClassFunctions(k).of_degree0_chain(T.hh_rep(p))
                    fq = ClassFunctions(n - k).of_degree0_chain(T.hh_rep(q))
                    vadd(got, tensor_class_functions(fp, fq), c)
            assert got == restrict(f, k, n)


# -- Adams operations ---------------------------------------------------------------------

def test_adams_on_the_identity_class(hk):
    T, H = hk
    (a,) = T.hh_basis(1, 0)
    base = {("id",): Fraction(1)}
    for m in (1, 2, 3):
        ch = adams_chain_n1(m, base, unit_category(), T.dec[m].S)
        got = T.hh_coords(m, 0, ch)
        assert got == H.adams(m, a)
        assert got == H.eta_lin({((m, (0, 0)),): 1})


def test_adams_composition(hk):
    T, H = hk
    for a in T.hh_labels:
        if a[0] == 0:
            continue
        assert H.adams(1, a) == {a: 1}
        for x in range(1, 5):
            for y in range(1, 5):
                if x * y * a[0] <= 4:
                    lhs: dict = {}
                    for b, c in H.adams(y, a).items():
                        vadd(lhs, H.adams(x, b), c)
                    assert lhs == H.adams(x * y, a)
