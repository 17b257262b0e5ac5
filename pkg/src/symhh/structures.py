"""The symmetric algebra S*(E ⊗ t·k[t]), its Hopf and Adams operations, their
transfer to total Hochschild homology, and a character oracle for A = k.

A monomial is a sorted tuple of ``(power, label)`` pairs standing for
``label t^power``; ``degree(label)`` is the homological degree of a basis
vector of E.  Elements are dicts ``{monomial: coefficient}`` and tensors
are dicts keyed by pairs of monomials.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations, product

from . import combinat as cb
from .dgcat import FinDGCategory, symmetric_power
from .exactla import homology_basis, vadd, vscale
from .hochschild import build_complex, ez_basic
from .orbifold.decomposition import Decomposition, sym_project
from .orbifold.equivariant import xi
from .orbifold.longcycle import LongCycle

ONE: tuple = ()


def canonical(factors, degree):
    """Sort (power, label) factors with Koszul signs; sign 0 for a repeated odd factor."""
    factors = list(factors)
    order = sorted(range(len(factors)), key=lambda i: (factors[i][0], _lab_key(factors[i][1])))
    degs = [degree(f[1]) for f in factors]
    sign = cb.reorder_sign(degs, order)
    mon = tuple(factors[i] for i in order)
    for a, b in zip(mon, mon[1:]):
        if a == b and degree(a[1]) % 2:
            return mon, 0
    return mon, sign


def _lab_key(v):
    if isinstance(v, int) or (isinstance(v, tuple) and all(isinstance(x, int) for x in v)):
        return (0, v)
    return (1, repr(v))


# -- the symmetric algebra -----------------------------------------------------

class SymAlgebra:
    """S*(E ⊗ t·k[t]) on a finite graded basis ``degrees = {label: degree}``."""

    def __init__(self, degrees: dict):
        self.degrees = dict(degrees)

    def degree(self, label) -> int:
        return self.degrees[label]

    def mdeg(self, mon) -> int:
        return sum(self.degrees[v] for _, v in mon)

    @staticmethod
    def weight(mon) -> int:
        return sum(p for p, _ in mon)

    def monomials(self, weight: int, degree: int | None = None) -> list:
        out = []
        gens = sorted(((p, v) for p in range(1, weight + 1) for v in self.degrees),
                      key=lambda f: (f[0], _lab_key(f[1])))

        def rec(start, rem, acc):
            if rem == 0:
                mon, s = canonical(acc, self.degree)
                if s and (degree is None or self.mdeg(mon) == degree):
                    out.append(mon)
                return
            for i in range(start, len(gens)):
                p, v = gens[i]
                if p > rem:
                    continue
                if acc and acc[-1] == gens[i] and self.degree(v) % 2:
                    continue
                acc.append(gens[i])
                rec(i, rem - p, acc)
                acc.pop()

        rec(0, weight, [])
        return sorted(set(out), key=lambda m: [(p, _lab_key(v)) for p, v in m])

    def basis(self, max_weight: int) -> list:
        return [m for w in range(max_weight + 1) for m in self.monomials(w)]

    # operations on basis monomials, extended linearly by the helpers below
    def mul(self, a, b) -> dict:
        mon, s = canonical(list(a) + list(b), self.degree)
        return {mon: Fraction(s)} if s else {}

    def delta(self, a) -> dict:
        out: dict = {}
        r = len(a)
        degs = [self.degree(v) for _, v in a]
        for k in range(r + 1):
            for I in combinations(range(r), k):
                J = [i for i in range(r) if i not in I]
                s = cb.reorder_sign(degs, list(I) + J)
                left, s1 = canonical([a[i] for i in I], self.degree)
                right, s2 = canonical([a[i] for i in J], self.degree)
                if s * s1 * s2:
                    vadd(out, {(left, right): Fraction(s * s1 * s2)})
        return out

    def unit(self) -> dict:
        return {ONE: Fraction(1)}

    def counit(self, a) -> Fraction:
        return Fraction(1) if a == ONE else Fraction(0)

    def antipode(self, a) -> dict:
        return {a: Fraction(-1 if len(a) % 2 else 1)}

    def adams(self, m: int, a) -> dict:
        if m < 1:
            raise ValueError("Adams operations need m >= 1")
        mon, s = canonical([(m * p, v) for p, v in a], self.degree)
        return {mon: Fraction(s)} if s else {}

    def bdeg(self, a) -> int:
        return self.mdeg(a)


# -- linear extension helpers -------------------------------------------------------

def lin(f, x: dict) -> dict:
    out: dict = {}
    for a, c in x.items():
        vadd(out, f(a), c)
    return out


def lin2(f, x: dict, y: dict) -> dict:
    out: dict = {}
    for a, c in x.items():
        for b, e in y.items():
            vadd(out, f(a, b), c * e)
    return out


def check_hopf(H, basis: list, max_weight=None, weight=None) -> list:
    """Hopf axioms on basis elements; returns a list of (axiom, witness) failures.

    ``H`` provides mul, delta, unit, counit, antipode and bdeg (degree of a
    basis element) on basis labels.  With ``weight`` given, products are
    only formed when the total weight stays <= max_weight.
    """
    fails = []
    wt = weight or (lambda a: 0)
    cap = max_weight if max_weight is not None else 10 ** 9
    u = H.unit()
    one = {a: Fraction(1) for a in u}

    for a in basis:
        e = {a: Fraction(1)}
        if lin2(H.mul, one, e) != e or lin2(H.mul, e, one) != e:
            fails.append(("unit", a))
        D = H.delta(a)
        left = {}
        right = {}
        for (x, y), c in D.items():
            vadd(left, {y: c * H.counit(x)})
            vadd(right, {x: c * H.counit(y)})
        if left != e or right != e:
            fails.append(("counit", a))
        # coassociativity
        l3: dict = {}
        for (x, y), c in D.items():
            for (x1, x2), c1 in H.delta(x).items():
                vadd(l3, {(x1, x2, y): c * c1})
        r3: dict = {}
        for (x, y), c in D.items():
            for (y1, y2), c1 in H.delta(y).items():
                vadd(r3, {(x, y1, y2): c * c1})
        if l3 != r3:
            fails.append(("coassociativity", a))
        # antipode
        s1: dict = {}
        s2: dict = {}
        for (x, y), c in D.items():
            for sx, e1 in H.antipode(x).items():
                vadd(s1, H.mul(sx, y), c * e1)
            for sy, e1 in H.antipode(y).items():
                vadd(s2, H.mul(x, sy), c * e1)
        target = vscale(one, H.counit(a))
        if s1 != target or s2 != target:
            fails.append(("antipode", a))
    for a, b in product(basis, repeat=2):
        if wt(a) + wt(b) > cap:
            continue
        # bialgebra compatibility
        lhs = lin(H.delta, H.mul(a, b))
        rhs: dict = {}
        for (a1, a2), c in H.delta(a).items():
            for (b1, b2), e in H.delta(b).items():
                s = -1 if (H.bdeg(a2) * H.bdeg(b1)) % 2 else 1
                for x, c1 in H.mul(a1, b1).items():
                    for y, c2 in H.mul(a2, b2).items():
                        vadd(rhs, {(x, y): s * c * e * c1 * c2})
        if lhs != rhs:
            fails.append(("bialgebra", (a, b)))
        for c in basis:
            if wt(a) + wt(b) + wt(c) > cap:
                continue
            if lin2(H.mul, H.mul(a, b), {c: 1}) != lin2(H.mul, {a: 1}, H.mul(b, c)):
                fails.append(("associativity", (a, b, c)))
    return fails


# -- homology bases on both sides -------------------------------------------------------

class _Coords:
    """Coordinates against a list of homology classes given as chain vectors."""

    def __init__(self, hb, vectors: list):
        cols = [hb.coords(v) for v in vectors]
        self.ech, ker = _echelon_of(cols)
        if ker or len(cols) != len(hb):
            raise ArithmeticError("chosen classes do not form a basis of homology")
        self.hb = hb

    def __call__(self, v: dict) -> dict:
        rest, used = self.ech.reduce(self.hb.coords(v))
        if rest:
            raise ArithmeticError("vector outside the span of the chosen classes")
        return used


def _echelon_of(cols):
    from .exactla import Echelon
    E = Echelon(track=True)
    ker = []
    for j, c in enumerate(cols):
        if not E.add(c, tag=j):
            ker.append(E.last_relation)
    return E, ker


class TotalHH:
    """Total Hochschild homology of the S^n A, n <= N, with exact transfer maps.

    Homology is computed from complexes truncated at simplicial length
    ``max_len``; degrees below ``max_len`` are exact.  HH(S^n A) classes are
    labelled ``(n, d, i)``; the symmetric side is the monomial basis of
    S*(E ⊗ t·k[t]) with E the homology basis of C(A), labelled ``(d, i)``.
    """

    def __init__(self, A: FinDGCategory, N: int, max_len: int):
        if any(A.deg(f) for f in A.morphisms):
            raise ValueError("total homology needs a category concentrated in degree 0")
        self.A, self.N, self.max_len = A, N, max_len
        self.degrees_exact = list(range(max_len))
        CA, infoA = build_complex(A, None, max_len)
        self.E_reps: dict = {}
        degs: dict = {}
        for d in self.degrees_exact:
            hb = homology_basis(CA, d)
            for i, rep in enumerate(hb.reps):
                self.E_reps[(d, i)] = {CA.spaces[d][j]: c for j, c in rep.items()}
                degs[(d, i)] = d
        self.sym = SymAlgebra(degs)
        self.dec = {n: Decomposition(A, n) for n in range(N + 1)}
        self._side: dict = {}

    # per (n, d): (complex, index, homology basis) on each side
    def _hh(self, n):
        key = ("hh", n)
        if key not in self._side:
            C, info = build_complex(self.dec[n].S, None, self.max_len)
            self._side[key] = (C, info["index"])
        return self._side[key]

    def _symc(self, n):
        key = ("sym", n)
        if key not in self._side:
            self._side[key] = self.dec[n].sym_complex(self.max_len)
        return self._side[key]

    def _hb(self, n, d, side):
        key = (side, n, d)
        if key not in self._side:
            C, _ = self._hh(n) if side == "hhb" else self._symc(n)
            self._side[key] = homology_basis(C, d) if d in C.spaces else None
        return self._side[key]

    def hh_basis(self, n: int, d: int) -> list:
        hb = self._hb(n, d, "hhb")
        return [] if hb is None else [(n, d, i) for i in range(len(hb))]

    def hh_rep(self, label) -> dict:
        n, d, i = label
        C, _ = self._hh(n)
        rep = self._hb(n, d, "hhb").reps[i]
        return {C.spaces[d][j]: c for j, c in rep.items()}

    def hh_coords(self, n: int, d: int, chain: dict) -> dict:
        hb = self._hb(n, d, "hhb")
        if hb is None:
            return {}
        _, idx = self._hh(n)
        v = {idx[d][k]: c for k, c in chain.items()}
        return {(n, d, i): c for i, c in hb.coords(v).items()}

    def monomial_chain(self, mon) -> dict:
        """Product of the chosen cycle representatives on the symmetric side."""
        lam = tuple(p for p, _ in mon)
        acc = {(): Fraction(1)}
        for _, v in mon:
            rep = self.E_reps[v]
            acc = {t + (x,): a * b for t, a in acc.items() for x, b in rep.items()}
        return sym_project({(lam, t): c for t, c in acc.items()}, self.A)

    def _sym_coords(self, n, d):
        key = ("symcoords", n, d)
        if key not in self._side:
            hb = self._hb(n, d, "symb")
            mons = self.sym.monomials(n, d)
            if hb is None:
                self._side[key] = (mons, None)
            else:
                _, idx = self._symc(n)
                vecs = [{idx[d][k]: c for k, c in self.monomial_chain(m).items()} for m in mons]
                self._side[key] = (mons, _Coords(hb, vecs))
        return self._side[key]

    def sym_coords(self, n: int, d: int, z: dict) -> dict:
        mons, co = self._sym_coords(n, d)
        if co is None:
            return {}
        _, idx = self._symc(n)
        v = {idx[d][k]: c for k, c in z.items()}
        return {mons[i]: c for i, c in co(v).items()}

    # -- zeta and eta on homology ---------------------------------------------

    def zeta(self, label) -> dict:
        n, d, _ = label
        return self.sym_coords(n, d, self.dec[n].zeta(self.hh_rep(label)))

    def eta(self, mon) -> dict:
        n, d = self.sym.weight(mon), self.sym.mdeg(mon)
        return self.hh_coords(n, d, self.dec[n].eta(self.monomial_chain(mon)))

    @cached_property
    def hh_labels(self) -> list:
        return [lab for n in range(self.N + 1) for d in self.degrees_exact
                for lab in self.hh_basis(n, d)]

    def dimensions(self) -> dict:
        """{(n, d): (dim HH_d(S^n A), dim of the weight-n degree-d symmetric part)}."""
        return {(n, d): (len(self.hh_basis(n, d)), len(self.sym.monomials(n, d)))
                for n in range(self.N + 1) for d in self.degrees_exact}

    # -- transferred operations ---------------------------------------------------

    def transferred(self) -> "TransferredHopf":
        return TransferredHopf(self)


class TransferredHopf:
    """(mu', Delta', u', eps', S') on HH basis labels, transported along zeta and eta."""

    def __init__(self, T: TotalHH):
        self.T = T
        self._z = {lab: T.zeta(lab) for lab in T.hh_labels}
        self._e: dict = {}

    def eta_lin(self, x: dict) -> dict:
        out: dict = {}
        for m, c in x.items():
            if self.T.sym.weight(m) > self.T.N:
                raise ValueError("weight beyond the computed range")
            e = self._e.get(m)
            if e is None:
                e = self._e[m] = self.T.eta(m)
            vadd(out, e, c)
        return out

    def zeta(self, lab) -> dict:
        return self._z[lab]

    def bdeg(self, lab) -> int:
        return lab[1]

    @staticmethod
    def weight(lab) -> int:
        return lab[0]

    def mul(self, a, b) -> dict:
        return self.eta_lin(lin2(self.T.sym.mul, self._z[a], self._z[b]))

    def delta(self, a) -> dict:
        out: dict = {}
        for (x, y), c in lin(self.T.sym.delta, self._z[a]).items():
            for p, e in self.eta_lin({x: 1}).items():
                for q, f in self.eta_lin({y: 1}).items():
                    vadd(out, {(p, q): c * e * f})
        return out

    def unit(self) -> dict:
        return self.eta_lin({ONE: 1})

    def counit(self, a) -> Fraction:
        return self._z[a].get(ONE, Fraction(0))

    def antipode(self, a) -> dict:
        return self.eta_lin(lin(self.T.sym.antipode, self._z[a]))

    @staticmethod
    def antipode_by_weight(a) -> dict:
        """(-1)^n on HH(S^n A); not an antipode once n >= 2 (kept for comparison)."""
        return {a: Fraction(-1 if a[0] % 2 else 1)}

    def adams(self, m: int, a) -> dict:
        return self.eta_lin(lin(lambda x: self.T.sym.adams(m, x), self._z[a]))


# -- chain-level operations --------------------------------------------------------------

def block_product(S1: FinDGCategory, S2: FinDGCategory):
    """Label map A^{⊗n}⋊S_n ⊗ A^{⊗m}⋊S_m -> A^{⊗(n+m)}⋊S_{n+m}."""
    n = S1.n if hasattr(S1, "n") else 0
    def combine(f, g):
        (a, s), (b, t) = f, g
        return (a + b, tuple(s) + tuple(n + x for x in t))
    return combine


def product_functor(S1, S2, S12):
    """The strict functor S^n A ⊗ S^m A -> S^{n+m} A as a DGFunctor."""
    from .dgcat import DGFunctor, tensor_product
    T = tensor_product(S1, S2)
    comb = block_product(S1, S2)
    return DGFunctor(T, S12, lambda x: x[0] + x[1],
                     lambda f: {comb(f[0], f[1]): Fraction(1)}, "blocks")


def mu_prime_chain(x: dict, y: dict, S1, S2) -> dict:
    """Shuffle product of chains on S^n A and S^m A pushed forward into S^{n+m} A."""
    comb = block_product(S1, S2)
    out: dict = {}
    for a, c in x.items():
        for b, e in y.items():
            vadd(out, ez_basic(a, b, S1, S2, comb), c * e)
    return out


def adams_chain_n1(m: int, chain: dict, A: FinDGCategory, Sm=None) -> dict:
    """Chain-level psi^m on C(A) -> C(S^m A): g_m, then the t_m bucket through xi."""
    Sm = Sm or symmetric_power(A, m)
    L = LongCycle(A, m, Sm.base)
    bundle = {(cb.long_cycle(m), y): c for y, c in L.g(chain).items()}
    return xi(bundle, Sm)


# -- character oracle for A = k ------------------------------------------------------------

class ClassFunctions:
    """Class functions on S_n, from HH_0(k[S_n]) and through Ind/Res."""

    def __init__(self, n: int):
        self.n = n
        self.elements = cb.all_perms(n)
        self.classes = cb.partitions(n)

    def of_degree0_chain(self, chain: dict) -> dict:
        """[sigma] -> (g -> #{x : x sigma x^{-1} = g}), on length-0 chains ((id...), sigma)."""
        f: dict = {}
        for x, c in chain.items():
            if len(x) != 1:
                continue
            s = x[0][1]
            for h in self.elements:
                vadd(f, {cb.compose(cb.compose(h, s), cb.inverse(h)): c})
        return f

    def conjugacy_classes(self) -> dict:
        out: dict = {}
        for g in self.elements:
            out.setdefault(cb.cycle_type(g), []).append(g)
        return out


def embed_pair(s, t) -> tuple:
    n = len(s)
    return tuple(s) + tuple(n + x for x in t)


def restrict(f: dict, k: int, n: int) -> dict:
    """Res to S_k × S_{n-k}: a function on pairs (s, t)."""
    out = {}
    for s in cb.all_perms(k):
        for t in cb.all_perms(n - k):
            v = f.get(embed_pair(s, t), 0)
            if v:
                out[(s, t)] = Fraction(v)
    return out


def induce(f: dict, k: int, n: int) -> dict:
    """Ind from S_k × S_{n-k} to S_n of a function on pairs."""
    H = {embed_pair(s, t): (s, t) for s in cb.all_perms(k) for t in cb.all_perms(n - k)}
    out: dict = {}
    for g in cb.all_perms(n):
        tot = Fraction(0)
        for x in cb.all_perms(n):
            y = cb.compose(cb.compose(x, g), cb.inverse(x))
            if y in H:
                tot += f.get(H[y], 0)
        if tot:
            out[g] = tot / len(H)
    return out


def tensor_class_functions(f: dict, g: dict) -> dict:
    return {(s, t): Fraction(a) * b for s, a in f.items() for t, b in g.items() if a * b}


def frobenius_gap(f_sub: dict, f_big: dict, k: int, n: int) -> Fraction:
    """<Ind f_sub, f_big>_G - <f_sub, Res f_big>_H for real-valued class functions."""
    G = cb.all_perms(n)
    ind = induce(f_sub, k, n)
    lhs = sum(Fraction(ind.get(g, 0)) * f_big.get(cb.inverse(g), 0) for g in G) / len(G)
    res = restrict(f_big, k, n)
    H = [(s, t) for s in cb.all_perms(k) for t in cb.all_perms(n - k)]
    rhs = sum(Fraction(f_sub.get(h, 0)) * res.get((cb.inverse(h[0]), cb.inverse(h[1])), 0)
              for h in H) / len(H)
    return lhs - rhs
