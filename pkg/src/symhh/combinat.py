"""Partitions, permutations, signed shuffles and the counting functions Y, N, T.

Permutations are tuples of 0-based images: ``perm[i]`` is where ``i`` goes.
Products follow function composition, ``compose(s, t)[i] = s[t[i]]``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

Perm = tuple


# -- permutations -----------------------------------------------------------

def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(s: Perm, t: Perm) -> Perm:
    return tuple(s[i] for i in t)


def inverse(s: Perm) -> Perm:
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[j] = i
    return tuple(out)


def cycles(s: Perm) -> list:
    seen, out = set(), []
    for i in range(len(s)):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = s[j]
        out.append(tuple(cyc))
    return out


def cycle_type(s: Perm) -> tuple:
    return tuple(sorted(len(c) for c in cycles(s)))


def sign(s: Perm) -> int:
    return -1 if (len(s) - len(cycles(s))) % 2 else 1


def from_cycles(n: int, cycs: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation of range(n) from 0-based cycles."""
    out = list(range(n))
    for c in cycs:
        for a, b in zip(c, tuple(c[1:]) + (c[0],)):
            out[a] = b
    return tuple(out)


def long_cycle(n: int) -> Perm:
    """t_n: position i goes to i+1 (mod n)."""
    return tuple((i + 1) % n for i in range(n))


def all_perms(n: int) -> list:
    from itertools import permutations
    return [tuple(p) for p in permutations(range(n))]


def generate_group(gens: Iterable[Perm], n: int) -> set:
    gens = list(gens)
    e = identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def centralizer(s: Perm) -> set:
    return {h for h in all_perms(len(s)) if compose(h, s) == compose(s, h)}


def koszul_sign(degrees: Sequence[int], perm: Perm) -> int:
    """Sign of moving graded item i to position perm[i].

    This is the single transposition-sign routine: every pair that swaps
    relative order contributes (-1)^{deg_i deg_j}.
    """
    odd = [i for i, d in enumerate(degrees) if d % 2]
    s = 0
    for a in range(len(odd)):
        for b in range(a + 1, len(odd)):
            if perm[odd[a]] > perm[odd[b]]:
                s ^= 1
    return -1 if s else 1


def reorder_sign(degrees: Sequence[int], order: Sequence[int]) -> int:
    """Koszul sign of listing items in ``order`` (a list of original indices)."""
    odd_positions = [degrees[i] % 2 for i in order]
    s = 0
    seen_odd = []
    for pos, i in enumerate(order):
        if odd_positions[pos]:
            for j in seen_odd:
                if j > i:
                    s ^= 1
            seen_odd.append(i)
    return -1 if s else 1


# -- partitions -------------------------------------------------------------

def partitions(n: int) -> list:
    """All partitions of n as nondecreasing tuples, lexicographically sorted."""
    out = []

    def rec(rem, low, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for k in range(low, rem + 1):
            acc.append(k)
            rec(rem - k, k, acc)
            acc.pop()

    rec(n, 1, [])
    return sorted(out)


def r_vector(lam: Sequence[int]) -> tuple:
    n = sum(lam)
    return tuple(sum(1 for x in lam if x == k) for k in range(1, n + 1))


def blocks(lam: Sequence[int]) -> list:
    """0-based position ranges of the blocks of sigma_lambda."""
    out, start = [], 0
    for k in sorted(lam):
        out.append(tuple(range(start, start + k)))
        start += k
    return out


def sigma_lambda(lam: Sequence[int]) -> Perm:
    n = sum(lam)
    return from_cycles(n, blocks(lam))


def centralizer_generators(lam: Sequence[int]) -> list:
    n = sum(lam)
    bl = blocks(lam)
    gens = [from_cycles(n, [b]) for b in bl if len(b) > 1]
    for a in range(len(bl)):
        for b in range(a + 1, len(bl)):
            if len(bl[a]) == len(bl[b]):
                img = list(range(n))
                for x, y in zip(bl[a], bl[b]):
                    img[x], img[y] = y, x
                gens.append(tuple(img))
    return gens


# -- shuffles ---------------------------------------------------------------

def shuffles(p: int, q: int) -> list:
    """(p,q)-shuffles as (perm, sign), lexicographic on the image sequence."""
    out = []
    for first in combinations(range(p + q), p):
        rest = [i for i in range(p + q) if i not in first]
        s = tuple(first) + tuple(rest)
        out.append((s, sign(s)))
    return out


def shuffles_sets(P: Iterable[int], Q: Iterable[int], n: int) -> list:
    """(P,Q)-shuffles of range(n): order kept inside P and inside Q, rest fixed."""
    P, Q = sorted(P), sorted(Q)
    if set(P) & set(Q):
        raise ValueError("P and Q must be disjoint")
    slots = sorted(P + Q)
    out = []
    for chosen in combinations(slots, len(P)):
        others = [x for x in slots if x not in chosen]
        s = list(range(n))
        for a, b in zip(P, chosen):
            s[a] = b
        for a, b in zip(Q, others):
            s[a] = b
        s = tuple(s)
        out.append((s, sign(s)))
    out.sort(key=lambda t: t[0])
    return out


def Y(p: int, q: int) -> int:
    if p < 0 or q < 0:
        raise ValueError("Y needs p, q >= 0")
    if p % 2 == 0 or q % 2 == 0:
        return comb((p + q) // 2, p // 2)
    return 0


def Y_bruteforce(p: int, q: int) -> int:
    return sum(sg for _, sg in shuffles(p, q))


# -- column choices ---------------------------------------------------------

def sigma_c(c: Sequence[int]) -> Perm:
    """0-based permutation from a column sequence c (values >= 1).

    Entry i is the number of earlier-or-equal positions in column-major
    order: #{k : c_k < c_i or (c_k == c_i and k <= i)}, shifted to 0-based.
    """
    m = len(c)
    return tuple(
        sum(1 for k in range(m) if c[k] < c[i] or (c[k] == c[i] and k <= i)) - 1
        for i in range(m)
    )


@lru_cache(maxsize=None)
def N(k: int, l: int) -> int:
    """Signed count over {1..l}^k; N(0, l) = 1 and N(k, 0) = 0 for k >= 1."""
    if k < 0 or l < 0:
        raise ValueError("N needs k, l >= 0")
    return sum(sign(sigma_c(c)) for c in product(range(1, l + 1), repeat=k))


def N_recursive(k: int, l: int) -> int:
    if k == 0:
        return 1
    return sum(N_recursive(k - j, i - 1) * Y(j, k - j)
               for i in range(1, l + 1) for j in range(1, k + 1))


def T(p: int, q: int, m: int, n: int) -> Fraction:
    if not (n >= 1 and m >= 1 and p >= 1 and q >= 0 and p + q <= m):
        raise ValueError(f"T out of range: p={p} q={q} m={m} n={n}")
    s = sum(N(p - 1, s - 1) * N(q, n - s) for s in range(1, n + 1))
    sg = -1 if ((p - 1) * (m - p - q)) % 2 else 1
    return Fraction(sg * Y(p - 1, q) * s, n)
