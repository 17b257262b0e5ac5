"""Finite DG categories, strict functors, group actions and the basic constructions.

Conventions
-----------
* A morphism label ``f`` has ``src(f)``, ``tgt(f)`` and an internal
  cohomological degree ``deg(f)``.
* ``mul(a, b)`` is the composite "a after b" (defined when src(a) == tgt(b)),
  returned as a dict ``{label: coefficient}``.
* Labels from user documents are strings; constructed categories use tuples
  (n-tuples for tensor powers, ``(alpha, g)`` pairs for semidirect products).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from . import combinat as cb
from .exactla import vadd


class FinDGCategory:
    def __init__(self, objects, morphisms, identities, differential=None,
                 composition=None, composer=None, name: str = ""):
        self.name = name
        self.objects = list(objects)
        self.morphisms = dict(morphisms)          # label -> (src, tgt, deg)
        self.identities = dict(identities)        # object -> label
        self.differential = {k: dict(v) for k, v in (differential or {}).items() if v}
        self.composition = dict(composition or {})
        self._composer = composer
        self._id_labels = set(self.identities.values())
        self._by_tgt: dict = {}
        self._by_src: dict = {}
        for f, (s, t, _) in self.morphisms.items():
            self._by_tgt.setdefault(t, []).append(f)
            self._by_src.setdefault(s, []).append(f)

    def __repr__(self):
        return f"FinDGCategory({self.name or '?'}: {len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    # accessors
    def src(self, f):
        return self.morphisms[f][0]

    def tgt(self, f):
        return self.morphisms[f][1]

    def deg(self, f) -> int:
        return self.morphisms[f][2]

    def ident(self, x):
        return self.identities[x]

    def is_identity(self, f) -> bool:
        return f in self._id_labels

    def into(self, x) -> list:
        """Morphisms with target x."""
        return self._by_tgt.get(x, [])

    def out_of(self, x) -> list:
        return self._by_src.get(x, [])

    def hom(self, source, target) -> list:
        return [f for f in self.out_of(source) if self.tgt(f) == target]

    def d(self, f) -> dict:
        return self.differential.get(f, {})

    def has_zero_differential(self) -> bool:
        return not self.differential

    def mul(self, a, b) -> dict:
        """Composite a∘b."""
        key = (a, b)
        r = self.composition.get(key)
        if r is not None:
            return r
        if self.src(a) != self.tgt(b):
            raise ValueError(f"not composable: {a!r} after {b!r}")
        if a in self._id_labels:
            r = {b: Fraction(1)}
        elif b in self._id_labels:
            r = {a: Fraction(1)}
        elif self._composer is not None:
            r = self._composer(a, b)
        else:
            r = {}
        self.composition[key] = r
        return r

    def mul_many(self, factors: Sequence) -> dict:
        """Composite f_1∘f_2∘...∘f_k of a composable list (k >= 1)."""
        acc = {factors[0]: Fraction(1)}
        for f in factors[1:]:
            nxt: dict = {}
            for a, c in acc.items():
                vadd(nxt, self.mul(a, f), c)
            acc = nxt
            if not acc:
                break
        return acc

    def all_compositions(self):
        for a in self.morphisms:
            for b in self.into(self.src(a)):
                yield a, b, self.mul(a, b)


def mul_lin(C: FinDGCategory, x: dict, y: dict) -> dict:
    out: dict = {}
    for a, c in x.items():
        for b, e in y.items():
            vadd(out, C.mul(a, b), c * e)
    return out


def d_lin(C: FinDGCategory, x: dict) -> dict:
    out: dict = {}
    for a, c in x.items():
        vadd(out, C.d(a), c)
    return out


# -- validation ---------------------------------------------------------------

@dataclass
class Violation:
    axiom: str
    where: tuple

    def __str__(self):
        return f"{self.axiom}: {self.where!r}"


def validate(A: FinDGCategory):
    """Return None when every axiom holds, else the first Violation found."""
    for x in A.objects:
        if x not in A.identities:
            return Violation("missing identity", (x,))
        i = A.identities[x]
        if i not in A.morphisms or A.src(i) != x or A.tgt(i) != x:
            return Violation("identity is not an endomorphism", (x, i))
        if A.deg(i) != 0:
            return Violation("identity not of degree 0", (i,))
        if A.d(i):
            return Violation("unit not closed", (i,))
    for f, (s, t, _) in A.morphisms.items():
        if s not in A.objects or t not in A.objects:
            return Violation("unknown object", (f,))
    for f in A.morphisms:
        for g, c in A.d(f).items():
            if g not in A.morphisms:
                return Violation("differential leaves basis", (f, g))
            if (A.src(g), A.tgt(g)) != (A.src(f), A.tgt(f)):
                return Violation("differential changes hom space", (f, g))
            if A.deg(g) != A.deg(f) + 1:
                return Violation("differential not of degree +1", (f, g))
        if d_lin(A, A.d(f)):
            return Violation("d∘d != 0", (f,))
    for (a, b), r in A.composition.items():
        if a not in A.morphisms or b not in A.morphisms:
            return Violation("composition of unknown morphisms", (a, b))
        if A.src(a) != A.tgt(b):
            return Violation("composition of non-composable pair", (a, b))
    for a, b, r in list(A.all_compositions()):
        for g in r:
            if g not in A.morphisms:
                return Violation("composition leaves basis", (a, b, g))
            if (A.src(g), A.tgt(g)) != (A.src(b), A.tgt(a)):
                return Violation("composition lands in wrong hom space", (a, b, g))
            if A.deg(g) != A.deg(a) + A.deg(b):
                return Violation("composition does not add degrees", (a, b, g))
    for a in A.morphisms:
        ia, it = A.identities[A.src(a)], A.identities[A.tgt(a)]
        if A.composition.get((a, ia), {a: 1}) != {a: 1} or A.composition.get((it, a), {a: 1}) != {a: 1}:
            return Violation("unit law", (a,))
    for a, b, ab in list(A.all_compositions()):
        sgn = -1 if A.deg(a) % 2 else 1
        lhs = d_lin(A, ab)
        rhs = mul_lin(A, A.d(a), {b: 1})
        vadd(rhs, mul_lin(A, {a: 1}, A.d(b)), sgn)
        if lhs != rhs:
            return Violation("Leibniz rule", (a, b))
        for c in A.into(A.src(b)):
            left = mul_lin(A, ab, {c: 1})
            right = mul_lin(A, {a: 1}, A.mul(b, c))
            if left != right:
                return Violation("associativity", (a, b, c))
    return None


# -- functors, groups, actions ------------------------------------------------

class DGFunctor:
    """Strict DG functor given by an object map and a basis-to-chain morphism map."""

    def __init__(self, source: FinDGCategory, target: FinDGCategory,
                 on_obj: Callable, on_mor: Callable, name: str = ""):
        self.source = source
        self.target = target
        self._obj = on_obj
        self._mor = on_mor
        self._cache: dict = {}
        self.name = name

    def obj(self, x):
        return self._obj(x)

    def mor(self, f) -> dict:
        r = self._cache.get(f)
        if r is None:
            r = self._cache[f] = self._mor(f)
        return r

    def mor_lin(self, x: dict) -> dict:
        out: dict = {}
        for f, c in x.items():
            vadd(out, self.mor(f), c)
        return out


def identity_functor(A: FinDGCategory) -> DGFunctor:
    return DGFunctor(A, A, lambda x: x, lambda f: {f: Fraction(1)}, "id")


def check_functor(F: DGFunctor):
    """Return None if F is a strict DG functor of degree 0, else a Violation."""
    A, B = F.source, F.target
    for x in A.objects:
        if F.mor(A.ident(x)) != {B.ident(F.obj(x)): 1}:
            return Violation("functor does not preserve identity", (x,))
    for f in A.morphisms:
        for g in F.mor(f):
            if (B.src(g), B.tgt(g), B.deg(g)) != (F.obj(A.src(f)), F.obj(A.tgt(f)), A.deg(f)):
                return Violation("functor misplaces morphism", (f, g))
        if F.mor_lin(A.d(f)) != d_lin(B, F.mor(f)):
            return Violation("functor does not commute with d", (f,))
    for a, b, ab in A.all_compositions():
        if F.mor_lin(ab) != mul_lin(B, F.mor(a), F.mor(b)):
            return Violation("functor does not preserve composition", (a, b))
    return None


class FiniteGroup:
    def __init__(self, elements: Sequence, mul: Callable, e, name: str = ""):
        self.elements = list(elements)
        self._mul = mul
        self.e = e
        self.name = name
        self._inv = {}
        for g in self.elements:
            for h in self.elements:
                if mul(g, h) == e:
                    self._inv[g] = h
                    break

    def mul(self, g, h):
        return self._mul(g, h)

    def inv(self, g):
        return self._inv[g]

    def conj(self, g, h):
        """g h g^{-1}."""
        return self._mul(self._mul(g, h), self._inv[g])

    def __len__(self):
        return len(self.elements)

    def check(self) -> bool:
        els = set(self.elements)
        for g in self.elements:
            if self.mul(self.e, g) != g or self.mul(g, self.e) != g:
                return False
            for h in self.elements:
                if self.mul(g, h) not in els:
                    return False
        for g, h, k in product(self.elements, repeat=3):
            if self.mul(self.mul(g, h), k) != self.mul(g, self.mul(h, k)):
                return False
        return all(g in self._inv for g in self.elements)


def symmetric_group(n: int) -> FiniteGroup:
    return FiniteGroup(sorted(cb.all_perms(n)), cb.compose, cb.identity(n), f"S{n}")


def perm_subgroup(elements: Iterable, n: int) -> FiniteGroup:
    return FiniteGroup(sorted(set(elements)), cb.compose, cb.identity(n))


class StrongAction:
    def __init__(self, group: FiniteGroup, category: FinDGCategory, functor_of: Callable):
        self.group = group
        self.category = category
        self._functor_of = functor_of
        self._cache: dict = {}

    def functor(self, g) -> DGFunctor:
        F = self._cache.get(g)
        if F is None:
            F = self._cache[g] = self._functor_of(g)
        return F

    def obj(self, g, x):
        return self.functor(g).obj(x)

    def mor(self, g, f) -> dict:
        return self.functor(g).mor(f)

    def check(self):
        G, A = self.group, self.category
        for g in G.elements:
            bad = check_functor(self.functor(g))
            if bad:
                return bad
        for g in G.elements:
            for h in G.elements:
                gh = G.mul(g, h)
                for f in A.morphisms:
                    if self.functor(g).mor_lin(self.mor(h, f)) != self.mor(gh, f):
                        return Violation("action is not a homomorphism", (g, h, f))
        for f in A.morphisms:
            if self.mor(G.e, f) != {f: 1}:
                return Violation("identity element acts nontrivially", (f,))
        return None


# -- constructions ------------------------------------------------------------

def unit_category() -> FinDGCategory:
    return FinDGCategory(["*"], {"id": ("*", "*", 0)}, {"*": "id"}, name="k")


def tensor_power(A: FinDGCategory, n: int) -> FinDGCategory:
    """A^{⊗n}: objects and morphisms are n-tuples, compositions with Koszul signs."""
    if n < 0:
        raise ValueError("n >= 0 required")
    objs = [tuple(x) for x in product(A.objects, repeat=n)]
    mors = {}
    for f in product(list(A.morphisms), repeat=n):
        mors[f] = (tuple(A.src(a) for a in f), tuple(A.tgt(a) for a in f),
                   sum(A.deg(a) for a in f))
    ids = {x: tuple(A.ident(a) for a in x) for x in objs}

    def composer(b, a):
        # (b_1..b_n)∘(a_1..a_n): move a_j past b_i for i > j
        s = 0
        for i in range(n):
            if A.deg(b[i]) % 2:
                for j in range(i):
                    s += A.deg(a[j])
        acc = {(): Fraction(-1 if s % 2 else 1)}
        for i in range(n):
            r = A.mul(b[i], a[i])
            if not r:
                return {}
            acc = {k + (g,): c * e for k, c in acc.items() for g, e in r.items()}
        return acc

    diff = {}
    if not A.has_zero_differential():
        for f in mors:
            out: dict = {}
            s = 0
            for i, a in enumerate(f):
                for g, c in A.d(a).items():
                    vadd(out, {f[:i] + (g,) + f[i + 1:]: c}, -1 if s % 2 else 1)
                s += A.deg(a)
            if out:
                diff[f] = out
    return FinDGCategory(objs, mors, ids, diff, composer=composer,
                         name=f"{A.name}^{n}")


def tensor_product(A: FinDGCategory, B: FinDGCategory) -> FinDGCategory:
    """A⊗B with pair labels (a, b)."""
    objs = [(x, y) for x in A.objects for y in B.objects]
    mors = {(a, b): ((A.src(a), B.src(b)), (A.tgt(a), B.tgt(b)), A.deg(a) + B.deg(b))
            for a in A.morphisms for b in B.morphisms}
    ids = {(x, y): (A.ident(x), B.ident(y)) for x, y in objs}

    def composer(l, r):
        a, b = l
        a2, b2 = r
        sg = -1 if (B.deg(b) * A.deg(a2)) % 2 else 1
        out = {}
        for g, c in A.mul(a, a2).items():
            for h, e in B.mul(b, b2).items():
                out[(g, h)] = sg * c * e
        return out

    diff = {}
    for a in A.morphisms:
        for b in B.morphisms:
            out = {}
            for g, c in A.d(a).items():
                out[(g, b)] = c
            sg = -1 if A.deg(a) % 2 else 1
            for h, c in B.d(b).items():
                vadd(out, {(a, h): c}, sg)
            if out:
                diff[(a, b)] = out
    return FinDGCategory(objs, mors, ids, diff, composer=composer,
                         name=f"{A.name}⊗{B.name}")


def permute_tuple(sigma, x: tuple) -> tuple:
    out = [None] * len(x)
    for i, v in enumerate(x):
        out[sigma[i]] = v
    return tuple(out)


def permutation_functor(A: FinDGCategory, An: FinDGCategory, sigma) -> DGFunctor:
    """sigma moves tensor factor i to position sigma[i], with the Koszul sign."""
    def on_mor(f):
        sg = cb.koszul_sign([A.deg(a) for a in f], sigma)
        return {permute_tuple(sigma, f): Fraction(sg)}
    return DGFunctor(An, An, lambda x: permute_tuple(sigma, x), on_mor, f"perm{sigma}")


def permutation_action(A: FinDGCategory, n: int, group: FiniteGroup | None = None,
                       An: FinDGCategory | None = None) -> StrongAction:
    if n < 1:
        raise ValueError("n >= 1 required")
    if An is None:
        An = tensor_power(A, n)
    G = group or symmetric_group(n)
    return StrongAction(G, An, lambda g: permutation_functor(A, An, g))


def semidirect(A: FinDGCategory, act: StrongAction, name: str = "") -> FinDGCategory:
    """A⋊G.  (alpha, g) runs from g^{-1}·src(alpha) to tgt(alpha)."""
    G = act.group
    mors = {}
    for a in A.morphisms:
        for g in G.elements:
            mors[(a, g)] = (act.obj(G.inv(g), A.src(a)), A.tgt(a), A.deg(a))
    ids = {x: (A.ident(x), G.e) for x in A.objects}

    def composer(l, r):
        a1, g1 = l
        a2, g2 = r
        g12 = G.mul(g1, g2)
        out: dict = {}
        for b, c in act.mor(g1, a2).items():
            for h, e in A.mul(a1, b).items():
                vadd(out, {(h, g12): c * e})
        return out

    diff = {}
    if not A.has_zero_differential():
        for (a, g) in mors:
            if A.d(a):
                diff[(a, g)] = {(b, g): c for b, c in A.d(a).items()}
    S = FinDGCategory(A.objects, mors, ids, diff, composer=composer,
                      name=name or f"{A.name}⋊{G.name}")
    S.base = A
    S.action = act
    return S


def group_autoequivalence(g, S: FinDGCategory) -> DGFunctor:
    act = S.action
    G = act.group

    def on_mor(f):
        a, h = f
        gh = G.conj(g, h)
        return {(b, gh): c for b, c in act.mor(g, a).items()}

    return DGFunctor(S, S, lambda x: act.obj(g, x), on_mor, f"conj{g}")


def symmetric_power(A: FinDGCategory, n: int) -> FinDGCategory:
    """S^n A = A^{⊗n} ⋊ S_n (S^0 A is the unit category)."""
    if n == 0:
        An = tensor_power(A, 0)
        S = semidirect(An, StrongAction(symmetric_group(0), An,
                                        lambda g: identity_functor(An)), name="S^0")
        S.n = 0
        return S
    act = permutation_action(A, n)
    S = semidirect(act.category, act, name=f"S^{n}({A.name})")
    S.n = n
    return S


def functor_pushforward(F: DGFunctor, chain: dict) -> dict:
    """Apply F to every tensor factor of every basic chain."""
    out: dict = {}
    for x, c in chain.items():
        acc = {(): c}
        for f in x:
            img = F.mor(f)
            acc = {k + (g,): a * b for k, a in acc.items() for g, b in img.items()}
            if not acc:
                break
        vadd(out, acc)
    return out


# -- built-in categories --------------------------------------------------------

def k_two_objects() -> FinDGCategory:
    return FinDGCategory(["a", "b"], {"ida": ("a", "a", 0), "idb": ("b", "b", 0)},
                         {"a": "ida", "b": "idb"}, name="k2")


def quiver_a2() -> FinDGCategory:
    """Path category of the quiver 1 -> 2."""
    return FinDGCategory(["1", "2"],
                         {"e1": ("1", "1", 0), "e2": ("2", "2", 0), "f": ("1", "2", 0)},
                         {"1": "e1", "2": "e2"}, name="quiver")


def exterior() -> FinDGCategory:
    """One object, generator theta of degree 1 with theta∘theta = 0."""
    return FinDGCategory(["*"], {"id": ("*", "*", 0), "th": ("*", "*", 1)},
                         {"*": "id"}, name="ext")


def cyclic_quiver() -> FinDGCategory:
    """Two objects, f: 1 -> 2 and g: 2 -> 1, paths of length three vanish."""
    mors = {"e1": ("1", "1", 0), "e2": ("2", "2", 0), "f": ("1", "2", 0),
            "g": ("2", "1", 0), "gf": ("1", "1", 0), "fg": ("2", "2", 0)}
    comp = {("g", "f"): {"gf": Fraction(1)}, ("f", "g"): {"fg": Fraction(1)}}
    return FinDGCategory(["1", "2"], mors, {"1": "e1", "2": "e2"}, composition=comp,
                         name="cyclic")


def dg_test_algebra() -> FinDGCategory:
    """One object, e in degree -1 and u in degree 0 with d e = u, all products zero."""
    mors = {"id": ("*", "*", 0), "e": ("*", "*", -1), "u": ("*", "*", 0)}
    return FinDGCategory(["*"], mors, {"*": "id"}, {"e": {"u": Fraction(1)}}, name="dgtest")


BUILTINS = {
    "k": unit_category,
    "k-two-objects": k_two_objects,
    "quiver": quiver_a2,
    "exterior": exterior,
    "cyclic": cyclic_quiver,
    "dgtest": dg_test_algebra,
}
