"""Named maps of the orbifold decomposition, as plain functions.

The classes :class:`LongCycle` and :class:`Decomposition` hold the cached
categories; the functions below build (and memoise) them on demand.
"""
from __future__ import annotations

from functools import lru_cache

from ..dgcat import FinDGCategory
from ..exactla import vadd
from ..hochschild import total_degree
from .decomposition import (Decomposition, conjugator, sym_canon, sym_reindex,
                            sym_reindex_inv)
from .equivariant import (bundle_average, bundle_coinvariants, bundle_differential,
                          certified_homotopy, check_formula_homotopy, nu, symmetriser, xi,
                          xi_g, xi_nu, xi_nu_homotopy)
from .longcycle import LongCycle, b_params, check_params, group_sizes


@lru_cache(maxsize=None)
def long_cycle(A: FinDGCategory, n: int) -> LongCycle:
    return LongCycle(A, n)


@lru_cache(maxsize=None)
def decomposition(A: FinDGCategory, n: int) -> Decomposition:
    return Decomposition(A, n)


def f_map(A, n, chain):
    return long_cycle(A, n).f(chain)


def g_map(A, n, chain):
    return long_cycle(A, n).g(chain)


def b_op(A, n, params, chain):
    return long_cycle(A, n).b_op(params, chain)


def phi(A, n, chain, reading="groups"):
    return long_cycle(A, n).phi(chain, reading)


def psi(A, n, chain):
    return long_cycle(A, n).psi(chain)


def fg_closed_form(A, n, chain):
    return long_cycle(A, n).fg_closed_form(chain)


def conjugacy_projection(A, n, bundle):
    return decomposition(A, n).project(bundle)


def conjugacy_inclusion(A, n, buckets):
    """Inverse of the projection: include at sigma_lambda, then symmetrise."""
    D = decomposition(A, n)
    return bundle_average(D.include(buckets), D.S)


def f_lambda(A, lam, chain):
    return decomposition(A, sum(lam)).f_lambda(tuple(lam), chain)


def g_lambda(A, lam, chains):
    return decomposition(A, sum(lam)).g_lambda(tuple(lam), tuple(chains))


def zeta_n(A, n, chain):
    return decomposition(A, n).zeta(chain)


def eta_n(A, n, z):
    return decomposition(A, n).eta(z)


def zeta_total(A, chains: dict) -> dict:
    """{n: chain on S^n A} -> combination of monomials ((power, chain on A), ...)."""
    deg = _chain_degree(A)
    out: dict = {}
    for n in sorted(chains):
        for (lam, key), c in zeta_n(A, n, chains[n]).items():
            mon, s = sym_reindex(lam, key, deg)
            if s:
                vadd(out, {mon: c * s})
    return out


def eta_total(A, z: dict) -> dict:
    """Inverse direction: returns {n: chain on S^n A}."""
    deg = _chain_degree(A)
    out: dict = {}
    for mon, c in z.items():
        (lam, key), s = sym_reindex_inv(mon, deg)
        if not s:
            continue
        n = sum(lam)
        if n == 0:
            key = ()
        lam_key = {(lam, key): c * s}
        vadd(out.setdefault(n, {}), eta_n(A, n, lam_key))
    return {n: v for n, v in out.items() if v}


def _chain_degree(A):
    return lambda x: total_degree(x, A)


__all__ = [
    "LongCycle", "Decomposition", "b_params", "check_params", "group_sizes",
    "f_map", "g_map", "b_op", "phi", "psi", "fg_closed_form",
    "nu", "xi_g", "xi", "xi_nu", "xi_nu_homotopy", "symmetriser",
    "bundle_average", "bundle_coinvariants", "bundle_differential",
    "certified_homotopy", "check_formula_homotopy",
    "conjugator", "conjugacy_projection", "conjugacy_inclusion",
    "f_lambda", "g_lambda", "zeta_n", "eta_n", "sym_canon",
    "sym_reindex", "sym_reindex_inv", "zeta_total", "eta_total",
]
