"""Orbifold decomposition of C(S^n A) into symmetric powers of C(A).

Elements of the symmetric side are dicts keyed ``(lam, chains)`` where
``lam`` is a partition (nondecreasing tuple) and ``chains`` holds one basic
chain on A per part, in the order of the parts.  Within a run of equal parts
the chains are kept sorted, with the Koszul sign of the total degrees.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .. import combinat as cb
from ..dgcat import FinDGCategory, permutation_functor, symmetric_power, tensor_power
from ..exactla import FiniteComplex, SparseMatrix, vadd, vscale
from ..hochschild import (apply_functor, aw_basic, basic_chains, chain_key, differential,
                          ez_basic, total_degree)
from .equivariant import nu, xi
from .longcycle import LongCycle


# -- conjugacy ---------------------------------------------------------------------

def conjugator(sigma) -> tuple:
    """h with h sigma h^{-1} = sigma_lambda for lambda the cycle type of sigma."""
    cyc = sorted(cb.cycles(sigma), key=lambda c: (len(c), min(c)))
    cyc = [c[c.index(min(c)):] + c[:c.index(min(c))] for c in cyc]
    lam = tuple(sorted(len(c) for c in cyc))
    h = [0] * len(sigma)
    for c, b in zip(cyc, cb.blocks(lam)):
        for x, y in zip(c, b):
            h[x] = y
    return tuple(h)


# -- the symmetric side ----------------------------------------------------------------

def sym_canon(lam: tuple, chains: tuple, A: FinDGCategory):
    """Canonical (chains, sign); sign 0 when two equal odd chains share a run."""
    chains = list(chains)
    sign = 1
    start = 0
    while start < len(lam):
        end = start
        while end < len(lam) and lam[end] == lam[start]:
            end += 1
        run = chains[start:end]
        order = sorted(range(len(run)), key=lambda i: chain_key(run[i], A))
        degs = [total_degree(x, A) for x in run]
        sign *= cb.reorder_sign(degs, order)
        srt = [run[i] for i in order]
        for a, b in zip(srt, srt[1:]):
            if a == b and total_degree(a, A) % 2:
                return tuple(chains), 0
        chains[start:end] = srt
        start = end
    return tuple(chains), sign


def sym_project(z: dict, A: FinDGCategory) -> dict:
    out: dict = {}
    for (lam, chains), c in z.items():
        key, s = sym_canon(lam, chains, A)
        if s:
            vadd(out, {(lam, key): c * s})
    return out


def sym_differential(z: dict, A: FinDGCategory) -> dict:
    out: dict = {}
    for (lam, chains), c in z.items():
        s = 0
        for i, x in enumerate(chains):
            sg = -1 if s % 2 else 1
            for y, e in differential({x: Fraction(1)}, A).items():
                vadd(out, {(lam, chains[:i] + (y,) + chains[i + 1:]): c * e * sg})
            s += total_degree(x, A)
    return sym_project(out, A)


def sym_basis(A: FinDGCategory, lam: tuple, max_len: int) -> dict:
    """Canonical basis of Sym^{r(lam)} C(A) with total length <= max_len, by total degree."""
    per = [[x for m in range(max_len + 1) for x in basic_chains(A, m)]]
    out: dict = {}

    def rec(i, acc, used):
        if i == len(lam):
            key, s = sym_canon(lam, tuple(acc), A)
            if s and key == tuple(acc):
                t = sum(total_degree(x, A) for x in acc)
                out.setdefault(t, []).append((lam, key))
            return
        for x in per[0]:
            l = len(x) - 1
            if used + l <= max_len:
                acc.append(x)
                rec(i + 1, acc, used + l)
                acc.pop()

    rec(0, [], 0)
    return out


# -- the decomposition context ---------------------------------------------------------------

class Decomposition:
    """Maps between C(S^n A) and the sum over lam of Sym^{r(lam)} C(A)."""

    def __init__(self, A: FinDGCategory, n: int):
        self.A = A
        self.n = n
        self.S = symmetric_power(A, n)
        self.partitions = cb.partitions(n)
        self._cycles: dict = {}
        self._tensor: dict = {}

    def tensor(self, k: int) -> FinDGCategory:
        T = self._tensor.get(k)
        if T is None:
            T = self._tensor[k] = tensor_power(self.A, k) if k != self.n else self.S.base
        return T

    def long_cycle(self, k: int) -> LongCycle:
        L = self._cycles.get(k)
        if L is None:
            L = self._cycles[k] = LongCycle(self.A, k, self.tensor(k))
        return L

    @cached_property
    def centralizers(self) -> dict:
        out = {}
        for lam in self.partitions:
            gens = cb.centralizer_generators(lam)
            els = sorted(cb.generate_group(gens, self.n))
            out[lam] = [permutation_functor(self.A, self.S.base, z) for z in els]
        return out

    # -- projection onto conjugacy representatives ----------------------------

    def project(self, bundle: dict) -> dict:
        """{(sigma, chain)} -> {(lam, chain twisted by sigma_lam)}."""
        out: dict = {}
        for (sigma, x), c in bundle.items():
            h = conjugator(sigma)
            lam = cb.cycle_type(sigma)
            F = permutation_functor(self.A, self.S.base, h)
            for y, e in apply_functor(F, {x: Fraction(1)}).items():
                vadd(out, {(lam, y): c * e})
        return out

    def include(self, buckets: dict) -> dict:
        return {(cb.sigma_lambda(lam), x): c for (lam, x), c in buckets.items()}

    def centralizer_average(self, lam, chain: dict) -> dict:
        out: dict = {}
        Fs = self.centralizers[lam]
        for F in Fs:
            vadd(out, apply_functor(F, chain))
        return vscale(out, Fraction(1, len(Fs)))

    # -- f_lambda and g_lambda -------------------------------------------------

    def f_lambda(self, lam: tuple, chain: dict) -> dict:
        parts = list(lam)
        state = {((), x): c for x, c in self.centralizer_average(lam, chain).items()}
        rest_n = self.n
        for i, k in enumerate(parts[:-1]):
            rest_n -= k
            B = self.tensor(rest_n)
            Ak = self.tensor(k)
            twist = permutation_functor(self.A, B, cb.sigma_lambda(tuple(parts[i + 1:])))
            nxt: dict = {}
            for (done, x), c in state.items():
                split = (lambda f, k=k: (f[:k], f[k:]))
                for (a, b), e in aw_basic(x, Ak, B, split, twist).items():
                    vadd(nxt, {(done + (a,), b): c * e})
            state = nxt
        out: dict = {}
        for (done, last), c in state.items():
            pieces = done + (last,)
            acc = {(): c}
            for k, piece in zip(parts, pieces):
                img = self.long_cycle(k).f({piece: Fraction(1)})
                acc = {t + (y,): a * b for t, a in acc.items() for y, b in img.items()}
            for t, a in acc.items():
                vadd(out, {(lam, t): a})
        return sym_project(out, self.A)

    def g_lambda(self, lam: tuple, chains: tuple) -> dict:
        """Sym-side basis element -> chain on A^n twisted by sigma_lam."""
        acc = None
        width = 0
        for k, x in zip(lam, chains):
            img = self.long_cycle(k).g({x: Fraction(1)})
            if acc is None:
                acc, width = img, k
                continue
            Aw, Bk = self.tensor(width), self.tensor(k)
            nxt: dict = {}
            for y, c in acc.items():
                for z, e in img.items():
                    vadd(nxt, ez_basic(y, z, Aw, Bk, lambda a, b: a + b), c * e)
            acc, width = nxt, width + k
        return acc or {}

    # -- zeta and eta -----------------------------------------------------------

    def zeta(self, chain: dict) -> dict:
        if self.n == 0:
            # augmentation C(k) -> k
            return {((), ()): c for x, c in chain.items() if len(x) == 1}
        buckets = self.project(nu(chain, self.S))
        grouped: dict = {}
        for (lam, x), c in buckets.items():
            grouped.setdefault(lam, {})[x] = c
        out: dict = {}
        for lam in sorted(grouped):
            vadd(out, self.f_lambda(lam, grouped[lam]))
        return out

    def eta(self, z: dict) -> dict:
        if self.n == 0:
            unit = (self.S.base.ident(()), self.S.action.group.e)
            return {(unit,): c for _, c in z.items()}
        bundle: dict = {}
        for (lam, chains), c in z.items():
            sl = cb.sigma_lambda(lam)
            for y, e in self.g_lambda(lam, chains).items():
                vadd(bundle, {(sl, y): c * e})
        return xi(bundle, self.S)

    # -- complexes on both sides ---------------------------------------------------

    def sym_complex(self, max_len: int, partitions=None):
        """(FiniteComplex, index) of the sum over lam of Sym^{r(lam)} C(A), truncated."""
        spaces: dict = {}
        for lam in partitions if partitions is not None else self.partitions:
            for t, labs in sym_basis(self.A, lam, max_len).items():
                spaces.setdefault(t, []).extend(labs)
        return _complex_from(spaces, lambda lab: sym_differential({lab: Fraction(1)}, self.A))


def _complex_from(spaces: dict, d) -> tuple:
    if not spaces:
        return FiniteComplex({0: []}), {0: {}}
    lo, hi = min(spaces), max(spaces)
    spaces = {t: spaces.get(t, []) for t in range(lo, hi + 1)}
    index = {t: {x: i for i, x in enumerate(v)} for t, v in spaces.items()}
    diffs = {}
    for t in range(lo + 1, hi + 1):
        cols = []
        for x in spaces[t]:
            col = {}
            for y, c in d(x).items():
                j = index[t - 1].get(y)
                if j is not None:
                    col[j] = c
            cols.append(col)
        diffs[t] = SparseMatrix.from_columns(len(spaces[t - 1]), cols)
    return FiniteComplex(spaces, diffs), index


# -- reindexing into the symmetric algebra ---------------------------------------------

def sym_reindex(lam: tuple, labels: tuple, degree) -> tuple:
    """(lam, (v_1..v_r)) -> (monomial, sign); a monomial is a sorted tuple of (power, v)."""
    from ..structures import canonical
    return canonical(list(zip(lam, labels)), degree)


def sym_reindex_inv(monomial: tuple, degree) -> tuple:
    """Monomial -> ((lam, labels), sign); inverse of sym_reindex on canonical input."""
    from ..structures import canonical
    mon, s = canonical(list(monomial), degree)
    lam = tuple(p for p, _ in mon)
    return (lam, tuple(v for _, v in mon)), s
