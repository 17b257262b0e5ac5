"""Passing between C(A⋊G) and the G-coinvariants of the bundle of twisted complexes.

A bundle is a dict ``{(g, chain): coefficient}`` where ``chain`` is a basic
chain on A twisted by the functor of g.  G acts on bundles by
``h.(g, c) = (h g h^{-1}, h.c)``.

Chains on S = A⋊G have entries ``(alpha, g)``; ``(alpha, g)`` runs from
``g^{-1}·src(alpha)`` to ``tgt(alpha)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from ..dgcat import FinDGCategory, group_autoequivalence
from ..exactla import (FiniteComplex, check_homotopy, matrix_of_map, solve_homotopy, vadd,
                       vscale)
from ..hochschild import (Coinvariants, apply_functor, basic_chains, differential,
                          internal_degree)


def _sign(d: dict):
    """Unpack a one-term dict {label: ±1}."""
    (y, s), = d.items()
    return y, s


def _act_mor(act, g, f):
    return _sign(act.mor(g, f))


# -- bundles -------------------------------------------------------------------

def bundle_differential(bundle: dict, S: FinDGCategory) -> dict:
    A, act = S.base, S.action
    out: dict = {}
    for (g, x), c in bundle.items():
        for y, e in differential({x: Fraction(1)}, A, act.functor(g)).items():
            vadd(out, {(g, y): c * e})
    return out


def bundle_act(h, bundle: dict, S: FinDGCategory) -> dict:
    act, G = S.action, S.action.group
    out: dict = {}
    F = act.functor(h)
    for (g, x), c in bundle.items():
        for y, e in apply_functor(F, {x: Fraction(1)}).items():
            vadd(out, {(G.conj(h, g), y): c * e})
    return out


def bundle_average(bundle: dict, S: FinDGCategory) -> dict:
    G = S.action.group
    out: dict = {}
    for h in G.elements:
        vadd(out, bundle_act(h, bundle, S))
    return vscale(out, Fraction(1, len(G)))


def bundle_coinvariants(S: FinDGCategory) -> Coinvariants:
    G = S.action.group

    def action(h):
        return lambda lab: bundle_act(h, {lab: Fraction(1)}, S)

    return Coinvariants([action(h) for h in G.elements])


# -- nu and xi -----------------------------------------------------------------

def nu(chain: dict, S: FinDGCategory) -> dict:
    """Untwist a chain on A⋊G into the bucket (sigma_0...sigma_m)^{-1}."""
    act, G = S.action, S.action.group
    out: dict = {}
    for x, c in chain.items():
        m = len(x) - 1
        h = G.e
        entries = [None] * (m + 1)
        coef = c
        for i in range(m, -1, -1):
            a, s = x[i]
            h = G.mul(s, h)          # h_i = sigma_i ... sigma_m
            b, e = _act_mor(act, G.inv(h), a)
            entries[i] = b
            coef *= e
        vadd(out, {(G.inv(h), tuple(entries)): coef})
    return out


def xi_g(g, chain: dict, S: FinDGCategory) -> dict:
    """(alpha_0..alpha_m) -> ((id, g^{-1})∘(alpha_0, e), (alpha_1, e), ...)."""
    act, G = S.action, S.action.group
    gi = G.inv(g)
    out: dict = {}
    for x, c in chain.items():
        b, e = _act_mor(act, gi, x[0])
        y = ((b, gi),) + tuple((a, G.e) for a in x[1:])
        vadd(out, {y: c * e})
    return out


def xi_include(bundle: dict, S: FinDGCategory) -> dict:
    out: dict = {}
    for (g, x), c in bundle.items():
        vadd(out, xi_g(g, {x: Fraction(1)}, S), c)
    return out


def symmetriser(chain: dict, S: FinDGCategory) -> dict:
    """(1/|G|) sum_h h.chain with h acting by its autoequivalence of A⋊G."""
    G = S.action.group
    out: dict = {}
    for h in G.elements:
        vadd(out, apply_functor(_conj_functor(S, h), chain))
    return vscale(out, Fraction(1, len(G)))


def _conj_functor(S, h):
    cache = S.__dict__.setdefault("_conj_cache", {})
    F = cache.get(h)
    if F is None:
        F = cache[h] = group_autoequivalence(h, S)
    return F


def xi(bundle: dict, S: FinDGCategory, order: str = "average_first") -> dict:
    """Average over G then include, or include then average on A⋊G."""
    if order == "average_first":
        return xi_include(bundle_average(bundle, S), S)
    if order == "include_first":
        return symmetriser(xi_include(bundle, S), S)
    raise ValueError(order)


# -- the homotopy between xi∘nu and the symmetriser ------------------------------

def _compositions(total: int):
    """Ordered tuples of positive integers summing to total."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def _admissible_sets(p: int, m: int, parts: tuple):
    r = len(parts)
    idx = list(range(p + 1, m + 2))
    for J in combinations(idx, r):
        Js = set(J)
        ok = True
        for i in idx:
            k = sum(1 for j in J if j < i)
            if sum(parts[:k]) < sum(1 for j in range(p + 1, i + 1) if j not in Js):
                ok = False
                break
        if ok:
            yield J


def _build(S, factors, coef):
    """Chain from factors (A-dict or None for an identity, group element), left to right."""
    A = S.base
    out = {(): coef}
    for a, g in factors:
        nxt: dict = {}
        for y, c in out.items():
            if a is None:
                prev_src = S.src(y[-1])
                nxt[y + ((A.ident(prev_src), g),)] = c
            else:
                for f, e in a.items():
                    vadd(nxt, {y + ((f, g),): c * e})
        out = nxt
    return out


def _untwist(S, x, i, j):
    """beta_i^j = (sigma_i ... sigma_j)^{-1} alpha_i as (label, sign)."""
    act, G = S.action, S.action.group
    h = G.e
    for k in range(j, i - 1, -1):
        h = G.mul(x[k][1], h)
    return _act_mor(act, G.inv(h), x[i][0])


def homotopy_first_family(x: tuple, S: FinDGCategory) -> dict:
    A, G = S.base, S.action.group
    m = len(x) - 1
    degs = [A.deg(a) for a, _ in x]
    out: dict = {}
    for p in range(0, m):
        for parts in _compositions(m - p):
            r = len(parts)
            for J in _admissible_sets(p, m, parts):
                Js = set(J)
                coef = Fraction(1)
                # rotated block beta^m_{m-r+2} ... beta^m_m alpha_0
                rot = []
                for i in range(m - r + 2, m + 1):
                    b, e = _untwist(S, x, i, m)
                    rot.append(b)
                    coef *= e
                first = A.mul_many(rot + [x[0][0]])
                if not first:
                    continue
                factors = [(first, x[0][1])]
                factors += [({a: Fraction(1)}, s) for a, s in x[1:p + 1]]
                for i in range(p + 1, m + 2):
                    k = sum(1 for j in J if j < i)
                    if i in Js:
                        lo = p + sum(parts[:k]) + 1
                        hi = p + sum(parts[:k + 1])
                        g = G.e
                        for t in range(lo, hi + 1):
                            g = G.mul(g, x[t][1])
                        factors.append((None, g))
                    else:
                        b, e = _untwist(S, x, i - k, p + sum(parts[:k]))
                        coef *= e
                        factors.append(({b: Fraction(1)}, G.e))
                cut = m - r + 1
                e1 = sum(degs[:cut + 1]) * sum(degs[cut + 1:])
                e2 = (p + m - 1) * r
                e3 = sum(j - p - sum(1 for t in J if t < j) for j in J)
                sg = -1 if (e1 + e2 + e3) % 2 else 1
                try:
                    vadd(out, _build(S, factors, coef * sg))
                except (KeyError, ValueError):
                    continue
    return out


def homotopy_second_family(x: tuple, S: FinDGCategory) -> dict:
    A, act, G = S.base, S.action, S.action.group
    m = len(x) - 1
    out: dict = {}
    coef0 = Fraction(1)
    rot = []
    for i in range(1, m + 1):
        b, e = _untwist(S, x, i, m)
        rot.append(b)
        coef0 *= e
    prod = A.mul_many(rot + [x[0][0]])
    for g in G.elements:
        gi = G.inv(g)
        for f, c in prod.items():
            b, e = _act_mor(act, g, f)
            for i in range(0, m + 1):
                sg = -1 if (i - 1) % 2 else 1
                factors = [({b: Fraction(1)}, G.mul(g, x[0][1]))]
                factors += [(None, x[t][1]) for t in range(1, i + 1)]
                factors.append((None, gi))
                factors += [(None, G.conj(g, x[t][1])) for t in range(i + 1, m + 1)]
                vadd(out, _build(S, factors, coef0 * c * e * sg))
    return vscale(out, Fraction(1, len(G)))


def xi_nu_homotopy(chain: dict, S: FinDGCategory) -> dict:
    """Literal reading of the explicit homotopy between xi∘nu and the symmetriser."""
    out: dict = {}
    for x, c in chain.items():
        vadd(out, symmetriser(homotopy_first_family(x, S), S), c)
        vadd(out, homotopy_second_family(x, S), c)
    return out


def xi_nu(chain: dict, S: FinDGCategory) -> dict:
    return xi(nu(chain, S), S)


def check_formula_homotopy(S: FinDGCategory, max_len: int) -> list:
    """Basis chains (length <= max_len) where dH + Hd != xi∘nu - symmetriser."""
    bad = []
    for m in range(max_len + 1):
        for x in basic_chains(S, m):
            ch = {x: Fraction(1)}
            lhs = differential(xi_nu_homotopy(ch, S), S)
            vadd(lhs, xi_nu_homotopy(differential(ch, S), S))
            vadd(lhs, xi_nu(ch, S), -1)
            vadd(lhs, symmetriser(ch, S))
            if lhs:
                bad.append(x)
    return bad


def certified_homotopy(S: FinDGCategory, max_len: int) -> dict:
    """Solve for a homotopy xi∘nu ~ symmetriser on chains of length <= max_len.

    Needs a zero internal differential: then the Hochschild differential
    keeps the internal degree e, and each sector is a complex graded by
    length.  All maps involved keep length and e.  Returns
    ``{e: (complex, H)}`` with H a dict of matrices or a NoSolution; the
    identity is certified on lengths 0..max_len-1.
    """
    if S.differential:
        raise ValueError("certified homotopy needs a zero internal differential")
    sectors: dict = {}
    for m in range(max_len + 1):
        for x in basic_chains(S, m):
            sectors.setdefault(internal_degree(x, S), {}).setdefault(m, []).append(x)
    out = {}
    for e in sorted(sectors):
        spaces = {m: sectors[e].get(m, []) for m in range(max_len + 1)}
        idx = {m: {x: i for i, x in enumerate(v)} for m, v in spaces.items()}
        diffs = {m: matrix_of_map(lambda x: differential({x: Fraction(1)}, S), spaces[m], idx[m - 1])
                 for m in range(1, max_len + 1)}
        C = FiniteComplex(spaces, diffs)
        phi = {m: matrix_of_map(lambda x: xi_nu({x: Fraction(1)}, S), spaces[m], idx[m])
               for m in spaces}
        psi = {m: matrix_of_map(lambda x: symmetriser({x: Fraction(1)}, S), spaces[m], idx[m])
               for m in spaces}
        window = (0, max_len - 1)
        H = solve_homotopy(C, phi, psi, window)
        if H and not check_homotopy(C, phi, psi, H, window):
            raise ArithmeticError("solver returned an invalid homotopy")
        out[e] = (C, H)
    return out
