"""Comparison maps between C(A) and the long-cycle twisted complex of A^{⊗n}.

Chains on A^{⊗n} are read as matrices: factor i is row i, tensor position j
is column j.  The entries read down each column and then across columns form
one closed composable path in A, so identities inserted by the maps below
are filled in from that path.

Chains on A use the indexing alpha_1..alpha_m of the comparison maps: a basic
chain with m factors has simplicial length m - 1.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .. import combinat as cb
from ..dgcat import FinDGCategory, permutation_functor, tensor_power
from ..exactla import vadd, vscale
from ..hochschild import ID, apply_functor, fill_identities

class LongCycle:
    """Context for maps between C(A) and C(A^{⊗n}; t_n)."""

    def __init__(self, A: FinDGCategory, n: int, An: FinDGCategory | None = None):
        self.A = A
        self.n = n
        self.An = An if An is not None else tensor_power(A, n)
        self.t = permutation_functor(A, self.An, cb.long_cycle(n))
        self.powers = [permutation_functor(A, self.An, _power(cb.long_cycle(n), k))
                       for k in range(n)]

    # -- helpers ---------------------------------------------------------------

    def rotate(self, chain: dict, k: int) -> dict:
        return apply_functor(self.powers[k % self.n], chain)

    def assemble(self, grid, alphas, degs) -> dict:
        """Build a chain on A^{⊗n} from a grid of position lists.

        ``grid[i][j]`` is ID or a tuple of indices into ``alphas`` to be
        composed left to right.  The Koszul sign compares the row-major
        reading of the used indices against their natural order.
        """
        rows, cols = len(grid), len(grid[0])
        order = [k for i in range(rows) for j in range(cols)
                 if grid[i][j] is not ID for k in grid[i][j]]
        sg = cb.reorder_sign(degs, order)
        return self._expand(grid, alphas, Fraction(sg))

    def _expand(self, grid, alphas, coef) -> dict:
        A = self.A
        rows, cols = len(grid), len(grid[0])
        # composites, each a dict
        cells = {}
        for i in range(rows):
            for j in range(cols):
                e = grid[i][j]
                if e is ID:
                    continue
                comp = A.mul_many([alphas[k] for k in e])
                if not comp:
                    return {}
                cells[(i, j)] = list(comp.items())
        keys = sorted(cells)
        out: dict = {}
        for choice in product(*(cells[k] for k in keys)):
            c = coef
            mat = [[ID] * cols for _ in range(rows)]
            for (i, j), (f, a) in zip(keys, choice):
                mat[i][j] = f
                c *= a
            seq = [mat[i][j] for j in range(cols) for i in range(rows)]
            seq = fill_identities(seq, A)
            full = [[None] * cols for _ in range(rows)]
            for idx, f in enumerate(seq):
                full[idx % rows][idx // rows] = f
            vadd(out, {tuple(tuple(r) for r in full): c})
        return out

    # -- f ---------------------------------------------------------------------

    def f_prime(self, chain: dict) -> dict:
        """Column-one extraction without averaging."""
        out: dict = {}
        A = self.A
        for x, c in chain.items():
            m, n = len(x), self.n
            seq = [x[i][j] for j in range(n) for i in range(m)]
            first = seq[m:] + [seq[0]]
            comp = A.mul_many(first)
            if not comp:
                continue
            degs = [A.deg(x[i][j]) for i in range(m) for j in range(n)]
            # row-major index of the entries in their output order
            order = [i * n + j for j in range(1, n) for i in range(m)] + [0] \
                + [i * n for i in range(1, m)]
            sg = cb.reorder_sign(degs, order)
            rest = tuple(x[i][0] for i in range(1, m))
            for f, a in comp.items():
                vadd(out, {(f,) + rest: c * a * sg})
        return out

    def f(self, chain: dict) -> dict:
        out: dict = {}
        for k in range(self.n):
            vadd(out, self.f_prime(self.rotate(chain, k)))
        return vscale(out, Fraction(1, self.n))

    # -- g ---------------------------------------------------------------------

    def g(self, chain: dict) -> dict:
        A, n = self.A, self.n
        out: dict = {}
        for x, c in chain.items():
            m = len(x)
            degs = [A.deg(a) for a in x]
            for tail in product(range(1, n + 1), repeat=m - 1):
                cc = (1,) + tail
                s = cb.sigma_c(cc)
                grid = [[ID] * n for _ in range(m)]
                for i in range(m):
                    grid[i][cc[i] - 1] = (s[i],)
                vadd(out, self.assemble(grid, x, degs), c * cb.sign(s))
        return out

    # -- B and Phi ---------------------------------------------------------------

    def b_grid(self, params, m: int):
        """Position grid of B_{p,q,d,r,c} for an m-row input (1-based parameters)."""
        p, q, d, r, c = params
        n = self.n
        check_params(params, m, n)

        def pos(i, j):  # 1-based (row, col) -> flat row-major index
            return (i - 1) * n + (j - 1)

        def colmajor(i, j):
            return (j - 1) * m + (i - 1)

        def from_colmajor(k):
            return (k % m) + 1, (k // m) + 1

        grid = [[ID] * n for _ in range(m + 1)]
        # group 1: alpha_{(p+1)q} ... alpha_{mn} alpha_{11}
        startk = colmajor(p + 1, q) if p < m else colmajor(1, q + 1)
        run = [pos(*from_colmajor(k)) for k in range(startk, m * n)] + [pos(1, 1)]
        grid[0][0] = tuple(run)
        # group 2
        if r:
            sc = cb.sigma_c(c)
            for i in range(2, r + 2):
                grid[i - 1][c[i - 2] - 1] = (pos(sc[i - 2] + 2, 1),)
        # group 3
        for i in range(r + 2, d + 1):
            grid[i - 1][n - q] = (pos(i, 1),)
        # group 4
        for i in range(d + 1, m + d - p + 1):
            for j in range(n - q + 2, n + 1):
                grid[i - 1][j - 1] = (pos(i + p - d, j - n + q - 1),)
        # group 5
        i = m + d - p + 1
        for j in range(n - q + 2, n + 1):
            col = j - n + q
            grid[i - 1][j - 1] = tuple(pos(k, col) for k in range(1, d + 1))
        # group 6
        for i in range(m + d - p + 2, m + 2):
            for j in range(n - q + 1, n + 1):
                grid[i - 1][j - 1] = (pos(i - m + p - 1, j - n + q),)
        return grid

    def b_op(self, params, chain: dict) -> dict:
        out: dict = {}
        for x, c in chain.items():
            m = len(x)
            alphas = [a for row in x for a in row]
            degs = [self.A.deg(a) for a in alphas]
            vadd(out, self.assemble(self.b_grid(params, m), alphas, degs), c)
        return out

    def phi_terms(self, m: int, reading: str = "groups"):
        """(params, row permutation, sign) triples of Phi' on m-row chains."""
        return _phi_terms(self.n, m, reading)

    def phi_prime(self, chain: dict, reading: str = "groups") -> dict:
        out: dict = {}
        A = self.A
        for x, c in chain.items():
            m = len(x)
            alphas = [a for row in x for a in row]
            degs = [A.deg(a) for a in alphas]
            for params, perm, sg in self.phi_terms(m, reading):
                grid = self.b_grid(params, m)
                moved = [None] * (m + 1)
                for i, row in enumerate(grid):
                    moved[perm[i]] = row
                vadd(out, self.assemble(moved, alphas, degs), c * sg)
        return out

    def phi(self, chain: dict, reading: str = "groups") -> dict:
        out: dict = {}
        for k in range(self.n):
            vadd(out, self.phi_prime(self.rotate(chain, k), reading))
        return vscale(out, Fraction(1, self.n))

    # -- Psi and the closed form of f∘g ---------------------------------------

    def _rotated(self, x, p, q):
        """(alpha_{m-q+1}..alpha_m alpha_1..alpha_p; alpha_{p+1}; ...; alpha_{m-q})."""
        A = self.A
        m = len(x)
        head = list(range(m - q, m)) + list(range(p))
        order = head + list(range(p, m - q))
        sg = cb.reorder_sign([A.deg(a) for a in x], order)
        comp = A.mul_many([x[k] for k in head])
        rest = tuple(x[p:m - q])
        return {(f,) + rest: a * sg for f, a in comp.items()}

    def fg_closed_form(self, chain: dict) -> dict:
        from ..hochschild import shuffle_with_constants
        out: dict = {}
        for x, c in chain.items():
            m = len(x)
            for p in range(1, m + 1):
                for q in range(0, m - p + 1):
                    t = cb.T(p, q, m, self.n)
                    if t:
                        y = shuffle_with_constants(self._rotated(x, p, q), p + q - 1, self.A)
                        vadd(out, y, c * t)
        return out

    def psi(self, chain: dict) -> dict:
        from ..hochschild import shuffle_with_constants
        out: dict = {}
        for x, c in chain.items():
            m = len(x)
            sg = -1 if m % 2 else 1
            for p in range(1, m + 1):
                for q in range(0, m - p + 1):
                    if (p + q) % 2:
                        continue
                    t = cb.T(p, q, m, self.n)
                    if t:
                        y = shuffle_with_constants(self._rotated(x, p, q), p + q, self.A)
                        vadd(out, y, c * t * sg)
        return out


def _power(s, k):
    out = cb.identity(len(s))
    for _ in range(k):
        out = cb.compose(s, out)
    return out


def check_params(params, m: int, n: int) -> None:
    p, q, d, r, c = params
    ok = (1 <= p <= m and 2 <= q <= n and 1 <= d <= p and 0 <= r <= d - 1
          and (r == 0 or q < n) and len(c) == r and all(1 <= v <= n - q for v in c))
    if not ok:
        raise ValueError(f"parameters out of range: {params} for m={m}, n={n}")


def b_params(m: int, n: int):
    for p in range(1, m + 1):
        for q in range(2, n + 1):
            for d in range(1, p + 1):
                rmax = 0 if q == n else d - 1
                for r in range(0, rmax + 1):
                    for c in product(range(1, n - q + 1), repeat=r):
                        yield (p, q, d, r, tuple(c))


def group_sizes(params, m: int) -> list:
    p, q, d, r, c = params
    return [1, r, d - r - 1, m - p, 1, p - d]


@lru_cache(maxsize=None)
def _phi_terms(n: int, m: int, reading: str) -> tuple:
    """Row shuffles of Phi'.

    reading "groups": upsilon interleaves row groups 3 and 4
    ({r+2..d} with {d+1..m-p+d}), then tau interleaves group 2 ({2..r+1})
    with every later row ({r+2..m+1}).
    """
    out = []
    for params in b_params(m, n):
        p, q, d, r, c = params
        base = (-1 if cb.sign(cb.sigma_c(c)) < 0 else 1) if r else 1
        e = m + (m + d) * (p + d)
        base *= -1 if e % 2 else 1
        if reading == "groups":
            U = cb.shuffles_sets(range(r + 1, d), range(d, m - p + d), m + 1)
            Tau = cb.shuffles_sets(range(1, r + 1), range(r + 1, m + 1), m + 1)
        elif reading == "literal":
            Tau = cb.shuffles_sets(range(r + 1, m - p + d), range(d, p), m + 1)
            U = cb.shuffles_sets(range(1, r + 1), range(r + 1, m + 1), m + 1)
        else:
            raise ValueError(reading)
        for u, su in U:
            for t, st in Tau:
                perm = cb.compose(t, u)
                out.append((params, perm, base * su * st))
    return tuple(out)
