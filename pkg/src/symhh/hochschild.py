"""Hochschild chains with diagonal or twisted coefficients.

A basic chain is a tuple ``(x_0, x_1, ..., x_m)`` of morphism labels with
``tgt(x_{i+1}) == src(x_i)`` and ``tgt(x_0) == F(src(x_m))``; ``x_0`` is the
coefficient entry.  Its simplicial length is ``m`` and its total
(homological) degree is ``m - sum(deg x_i)``.  A chain is a dict
``{basic_chain: Fraction}``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import combinat as cb
from .dgcat import DGFunctor, FinDGCategory
from .exactla import FiniteComplex, SparseMatrix, vadd, vscale


class EndpointError(ValueError):
    pass


def _fobj(F, x):
    return x if F is None else F.obj(x)


def is_valid(x: tuple, A: FinDGCategory, F: DGFunctor | None = None) -> bool:
    try:
        for i in range(len(x) - 1):
            if A.tgt(x[i + 1]) != A.src(x[i]):
                return False
        return A.tgt(x[0]) == _fobj(F, A.src(x[-1]))
    except KeyError:
        return False


def internal_degree(x: tuple, A: FinDGCategory) -> int:
    return sum(A.deg(f) for f in x)


def total_degree(x: tuple, A: FinDGCategory) -> int:
    return len(x) - 1 - internal_degree(x, A)


def chain_key(x: tuple, A: FinDGCategory | None = None):
    e = internal_degree(x, A) if A is not None else 0
    return (len(x), e, repr(x))


def differential(chain: dict, A: FinDGCategory, F: DGFunctor | None = None) -> dict:
    out: dict = {}
    for x, c in chain.items():
        if not is_valid(x, A, F):
            raise EndpointError(f"chain {x!r} is not composable")
        vadd(out, d_basic(x, A, F), c)
    return out


def d_basic(x: tuple, A: FinDGCategory, F: DGFunctor | None = None) -> dict:
    m = len(x) - 1
    out: dict = {}
    if m > 0:
        for i in range(m):
            prod = A.mul(x[i], x[i + 1])
            if prod:
                sg = -1 if i % 2 else 1
                pre, post = x[:i], x[i + 2:]
                for f, c in prod.items():
                    k = pre + (f,) + post
                    y = out.get(k, 0) + sg * c
                    if y:
                        out[k] = y
                    else:
                        out.pop(k)
        degs = [A.deg(f) for f in x]
        e = m + degs[m] * sum(degs[:m])
        sg = -1 if e % 2 else 1
        last = {x[m]: Fraction(1)} if F is None else F.mor(x[m])
        mid = x[1:m]
        for g, a in last.items():
            for f, c in A.mul(g, x[0]).items():
                k = (f,) + mid
                y = out.get(k, 0) + sg * a * c
                if y:
                    out[k] = y
                else:
                    out.pop(k)
    if A.differential:
        s = m
        for i, f in enumerate(x):
            df = A.d(f)
            if df:
                sg = -1 if s % 2 else 1
                for g, c in df.items():
                    vadd(out, {x[:i] + (g,) + x[i + 1:]: c}, sg)
            s += A.deg(f)
    return out


def basic_chains(A: FinDGCategory, m: int, F: DGFunctor | None = None) -> list:
    """All basic chains of simplicial length m, sorted canonically."""
    out = []

    def rec(acc):
        if len(acc) == m + 1:
            if A.tgt(acc[0]) == _fobj(F, A.src(acc[-1])):
                out.append(tuple(acc))
            return
        for f in A.into(A.src(acc[-1])):
            acc.append(f)
            rec(acc)
            acc.pop()

    for f in A.morphisms:
        rec([f])
    out.sort(key=lambda x: chain_key(x, A))
    return out


def build_complex(A: FinDGCategory, F: DGFunctor | None = None, max_len: int = 3):
    """Truncated complex graded by total degree; returns (FiniteComplex, info).

    Basic chains of simplicial length <= max_len are included.  For a
    category concentrated in internal degree 0 the total degree is the
    length, and homology is exact in degrees < max_len.
    """
    by_deg: dict = {}
    for m in range(max_len + 1):
        for x in basic_chains(A, m, F):
            by_deg.setdefault(total_degree(x, A), []).append(x)
    if not by_deg:
        return FiniteComplex({0: []}), {"truncated_at": max_len, "index": {}}
    lo, hi = min(by_deg), max(by_deg)
    spaces = {t: by_deg.get(t, []) for t in range(lo, hi + 1)}
    index = {t: {x: i for i, x in enumerate(v)} for t, v in spaces.items()}
    diffs = {}
    for t in range(lo + 1, hi + 1):
        cols = []
        for x in spaces[t]:
            col = {}
            for y, c in d_basic(x, A, F).items():
                j = index[t - 1].get(y)
                if j is None:
                    # boundary term beyond the truncation window
                    continue
                col[j] = c
            cols.append(col)
        diffs[t] = SparseMatrix.from_columns(len(spaces[t - 1]), cols)
    concentrated = all(A.deg(f) == 0 for f in A.morphisms)
    info = {"truncated_at": max_len, "index": index, "concentrated": concentrated}
    return FiniteComplex(spaces, diffs), info


def exact_degrees(A: FinDGCategory, max_len: int) -> range:
    """Degrees in which build_complex(A, ., max_len) gives true homology."""
    if all(A.deg(f) == 0 for f in A.morphisms):
        return range(0, max_len)
    return range(0)


# -- functors and group actions on chains --------------------------------------

def apply_functor(F: DGFunctor, chain: dict) -> dict:
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


def group_action_on_chains(g: DGFunctor, chain: dict, twist: DGFunctor | None = None,
                           objects: Iterable | None = None) -> dict:
    """Factorwise action; when a twist is given, g must commute with it."""
    if twist is not None and objects is not None:
        for x in objects:
            if g.obj(twist.obj(x)) != twist.obj(g.obj(x)):
                raise ValueError("group element does not commute with the twist")
    return apply_functor(g, chain)


class Coinvariants:
    """Quotient by x - h.x for a finite group acting by signed permutations of a basis.

    ``elements`` lists one action per group element (used for averaging);
    ``gens`` optionally lists generators (used for orbits).  An action is a
    callable taking a basis label to a one-term dict ``{label': ±1}``; use
    :meth:`of_functors` for factorwise functor actions on chains.
    """

    def __init__(self, elements: Sequence[Callable], gens: Sequence[Callable] | None = None,
                 key: Callable | None = None):
        self.elements = list(elements)
        self.gens = list(gens) if gens is not None else self.elements
        self.key = key or repr
        self._canon: dict = {}

    @classmethod
    def of_functors(cls, functors, gens=None, key=None) -> "Coinvariants":
        def wrap(F):
            return lambda x: apply_functor(F, {x: Fraction(1)})
        return cls([wrap(F) for F in functors],
                   None if gens is None else [wrap(F) for F in gens], key)

    @staticmethod
    def _single(r):
        if len(r) != 1:
            raise ValueError("action is not by signed permutations of the basis")
        (y, s), = r.items()
        return y, s

    def canon_basic(self, x):
        hit = self._canon.get(x)
        if hit is not None:
            return hit
        signs = {x: Fraction(1)}
        todo = [x]
        zero = False
        while todo:
            y = todo.pop()
            for act in self.gens:
                z, s = self._single(act(y))
                # h.y = s z and h.y ≡ y, so z ≡ s*y
                sz = s * signs[y]
                if z in signs:
                    if signs[z] != sz:
                        zero = True
                else:
                    signs[z] = sz
                    todo.append(z)
        rep = min(signs, key=self.key)
        for y, s in signs.items():
            self._canon[y] = (rep, Fraction(0) if zero else s / signs[rep])
        return self._canon[x]

    def project(self, chain: dict) -> dict:
        out: dict = {}
        for x, c in chain.items():
            rep, s = self.canon_basic(x)
            if s:
                vadd(out, {rep: c * s})
        return out

    def act(self, i: int, chain: dict) -> dict:
        out: dict = {}
        for x, c in chain.items():
            vadd(out, self.elements[i](x), c)
        return out

    def average(self, chain: dict) -> dict:
        out: dict = {}
        for act in self.elements:
            for x, c in chain.items():
                vadd(out, act(x), c)
        return vscale(out, Fraction(1, len(self.elements)))

    def equal(self, a: dict, b: dict) -> bool:
        diff = dict(a)
        vadd(diff, b, -1)
        return not self.project(diff)


# -- matrix chains on A^{⊗n} ----------------------------------------------------

def column_order(m: int, n: int) -> list:
    """Positions (row, col), 0-based, in composable order: down columns."""
    return [(i, j) for j in range(n) for i in range(m)]


def is_matrix_chain(rows: Sequence[Sequence], A: FinDGCategory, twist=None) -> bool:
    """Valid t_n-twisted chain: the column-major entries form a closed path."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    if any(len(r) != n for r in rows):
        return False
    seq = [rows[i][j] for (i, j) in column_order(m, n)]
    try:
        return all(A.src(seq[k]) == A.tgt(seq[(k + 1) % len(seq)]) for k in range(len(seq)))
    except KeyError:
        return False


def matrix_encode(x: tuple, A: FinDGCategory) -> tuple:
    rows = tuple(tuple(r) for r in x)
    if not is_matrix_chain(rows, A):
        raise EndpointError("endpoints incompatible with the long-cycle twist")
    return rows


def matrix_decode(rows: Sequence[Sequence]) -> tuple:
    return tuple(tuple(r) for r in rows)


# -- identity filling ------------------------------------------------------------

ID = None  # placeholder for an inserted identity


def fill_identities(seq: Sequence, A: FinDGCategory) -> tuple:
    """Replace ID placeholders by identities on the source of the previous entry.

    Entry 0 must be a real morphism.
    """
    out = []
    cur = None
    for f in seq:
        if f is ID:
            out.append(A.ident(cur))
        else:
            out.append(f)
            cur = A.src(f)
    return tuple(out)


# -- shuffle with constants ----------------------------------------------------

def shuffle_with_constants(chain: dict, k: int, A: FinDGCategory) -> dict:
    """Insert k identities in all shuffled positions, signed by shuffle parity."""
    out: dict = {}
    for x, c in chain.items():
        n = len(x) - 1
        for s, sg in cb.shuffles(n, k):
            seq = [ID] * (n + k + 1)
            seq[0] = x[0]
            for i in range(n):
                seq[s[i] + 1] = x[i + 1]
            vadd(out, {fill_identities(seq, A): c * sg})
    return out


# -- Eilenberg–Zilber and Alexander–Whitney -------------------------------------

def pair(a, b):
    return (a, b)


def ez(x: dict, y: dict, A: FinDGCategory, B: FinDGCategory, combine: Callable = pair) -> dict:
    """Shuffle map C(A;M) ⊗ C(B;N) -> C(A⊗B; M⊗N)."""
    out: dict = {}
    for xa, ca in x.items():
        for yb, cb_ in y.items():
            vadd(out, ez_basic(xa, yb, A, B, combine), ca * cb_)
    return out


def ez_basic(x: tuple, y: tuple, A, B, combine=pair) -> dict:
    n, m = len(x) - 1, len(y) - 1
    da = [A.deg(f) for f in x]
    db = [B.deg(f) for f in y]
    out: dict = {}
    for s, sg in cb.shuffles(n, m):
        aseq = [ID] * (n + m + 1)
        bseq = [ID] * (n + m + 1)
        aseq[0], bseq[0] = x[0], y[0]
        for i in range(n):
            aseq[s[i] + 1] = x[i + 1]
        for j in range(m):
            bseq[s[n + j] + 1] = y[j + 1]
        # Koszul sign: source order x_0..x_n, y_0..y_m; target order
        # x_0, y_0, then position by position
        order = [0, n + 1]
        inv = {}
        for i in range(n):
            inv[s[i] + 1] = i + 1
        for j in range(m):
            inv[s[n + j] + 1] = n + 1 + j + 1
        order += [inv[p] for p in range(1, n + m + 1)]
        ks = cb.reorder_sign(da + db, order)
        # the simplicial degree of y passes the internal degree of x
        if (m * sum(da)) % 2:
            ks = -ks
        a_f = fill_identities(aseq, A)
        b_f = fill_identities(bseq, B)
        key = tuple(combine(a, b) for a, b in zip(a_f, b_f))
        vadd(out, {key: Fraction(sg * ks)})
    return out


def aw(z: dict, A: FinDGCategory, B: FinDGCategory, split: Callable = lambda f: f,
       twist_B: DGFunctor | None = None) -> dict:
    """Alexander–Whitney map; output keys are pairs (chain on A, chain on B)."""
    out: dict = {}
    for x, c in z.items():
        vadd(out, aw_basic(x, A, B, split, twist_B), c)
    return out


def aw_basic(x: tuple, A, B, split=lambda f: f, twist_B=None) -> dict:
    n = len(x) - 1
    parts = [split(f) for f in x]
    a = [p[0] for p in parts]
    b = [p[1] for p in parts]
    da = [A.deg(f) for f in a]
    db = [B.deg(f) for f in b]
    degs = []
    for i in range(n + 1):
        degs += [da[i], db[i]]
    out: dict = {}
    for p in range(n + 1):
        front = A.mul_many(a[:p + 1])
        if not front:
            continue
        # back face: G(b_{p+1}...b_n) ∘ b_0
        moved = b[p + 1:]
        if moved:
            if twist_B is None:
                lead = B.mul_many(moved)
            else:
                lead = {}
                acc = None
                for f in moved:
                    img = twist_B.mor(f)
                    if acc is None:
                        acc = dict(img)
                    else:
                        nxt = {}
                        for u, cu in acc.items():
                            for v, cv in img.items():
                                vadd(nxt, B.mul(u, v), cu * cv)
                        acc = nxt
                lead = acc
            back = {}
            for u, cu in lead.items():
                vadd(back, B.mul(u, b[0]), cu)
        else:
            back = {b[0]: Fraction(1)}
        if not back:
            continue
        order = [2 * i for i in range(n + 1)] + [2 * i + 1 for i in range(p + 1, n + 1)] \
            + [2 * i + 1 for i in range(p + 1)]
        sg = cb.reorder_sign(degs, order) * (-1 if (p * (n - p)) % 2 else 1)
        front_deg = sum(da)
        tail_a = tuple(a[p + 1:])
        tail_b = tuple(b[1:p + 1])
        for f, cf in front.items():
            for g, cg in back.items():
                # the simplicial degree p of the back face passes the front's internal degree
                e = -1 if (p * front_deg) % 2 else 1
                vadd(out, {((f,) + tail_a, (g,) + tail_b): e * sg * cf * cg})
    return out


def tensor_differential(z: dict, parts: Sequence, ds: Sequence[Callable]) -> dict:
    """d on tensors of chains; keys are tuples of basic chains.

    ``parts[i]`` is the category of factor i, ``ds[i]`` its chain differential.
    """
    out: dict = {}
    for key, c in z.items():
        s = 0
        for i, x in enumerate(key):
            sg = -1 if s % 2 else 1
            for y, e in ds[i]({x: Fraction(1)}).items():
                vadd(out, {key[:i] + (y,) + key[i + 1:]: c * e * sg})
            s += total_degree(x, parts[i])
    return out
