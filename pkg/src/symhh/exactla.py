"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``{index: Fraction}`` with zeros absent.  Matrices
are stored column-wise internally but exposed as ``SparseMatrix`` with an
``entries`` map ``(row, col) -> Fraction``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

Scalar = Fraction
Vector = dict


def scalar(x) -> Fraction:
    """Parse ints, Fractions and "p/q" strings into an exact scalar."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact scalar: {x!r}")


def fmt_scalar(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vadd(acc: dict, v: dict, c=1) -> dict:
    """acc += c*v in place, dropping zeros."""
    if not c:
        return acc
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vscale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), x in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
            x = scalar(x)
            if x:
                clean[(i, j)] = x
        self.entries = clean

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        ent = {(i, j): x for i, row in enumerate(rows) for j, x in enumerate(row) if x}
        return cls(r, c, ent)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict]) -> "SparseMatrix":
        ent = {(i, j): x for j, col in enumerate(columns) for i, x in col.items() if x}
        return cls(rows, len(columns), ent)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    def columns(self) -> list:
        cols = [dict() for _ in range(self.cols)]
        for (i, j), x in self.entries.items():
            cols[j][i] = x
        return cols

    def apply(self, v: dict) -> dict:
        """Matrix times sparse column vector."""
        cols = self._colcache()
        out: dict = {}
        for j, c in v.items():
            vadd(out, cols[j], c)
        return out

    def _colcache(self):
        cache = getattr(self, "_cols", None)
        if cache is None:
            cache = self.columns()
            object.__setattr__(self, "_cols", cache)
        return cache

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [self.apply(c) for c in other.columns()]
        return SparseMatrix.from_columns(self.rows, cols)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._same_shape(other)
        ent = dict(self.entries)
        vadd(ent, other.entries)
        return SparseMatrix(self.rows, self.cols, ent)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._same_shape(other)
        ent = dict(self.entries)
        vadd(ent, other.entries, -1)
        return SparseMatrix(self.rows, self.cols, ent)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def to_dense(self) -> list:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out


class Echelon:
    """Incrementally built echelon basis of a subspace.

    Each stored vector has a pivot (its smallest index) normalised to 1 and
    no other stored vector's pivot below it is ever reintroduced, so reducing
    in increasing index order terminates.  With ``track=True`` every stored
    vector remembers which combination of inserted generators produced it.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict = {}
        self.combos: dict = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: dict, combo: dict | None = None):
        """Return (residual, combo) with v = sum(combo*generators) + residual."""
        v = dict(v)
        rest: dict = {}
        used: dict = {} if combo is None else dict(combo)
        while v:
            k = min(v, key=_ordkey)
            c = v.pop(k)
            e = self.pivots.get(k)
            if e is None:
                rest[k] = c
                continue
            for j, x in e.items():
                if j == k:
                    continue
                y = v.get(j, 0) - c * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
            if self.track:
                vadd(used, self.combos[k], c)
        return rest, used

    def add(self, v: dict, tag=None) -> dict:
        """Insert a generator; returns the residual (empty if dependent).

        When tracking, ``tag`` names the generator and the returned residual
        is expressed against it: a dependent generator yields the relation in
        ``self.last_relation``.
        """
        rest, used = self.reduce(v, None)
        if self.track:
            # v - sum(used*gens) = rest; as a generator combination:
            rel = vscale(used, -1)
            rel[tag] = rel.get(tag, 0) + 1
            rel = {k: x for k, x in rel.items() if x}
        if not rest:
            if self.track:
                self.last_relation = rel
            return rest
        p = min(rest, key=_ordkey)
        inv = 1 / Fraction(rest[p])
        e = {k: x * inv for k, x in rest.items()}
        self.pivots[p] = e
        if self.track:
            self.combos[p] = vscale(rel, inv)
            self.last_relation = None
        return rest

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]


def _ordkey(k):
    return k


def column_echelon(M: SparseMatrix, track: bool = False) -> tuple[Echelon, list]:
    """Echelon basis of the column space; with tracking also the kernel."""
    E = Echelon(track=track)
    kernel = []
    for j, col in enumerate(M.columns()):
        rest = E.add(col, tag=j)
        if track and not rest:
            kernel.append(E.last_relation)
    return E, kernel


def rank(M: SparseMatrix) -> int:
    E, _ = column_echelon(M)
    return len(E)


def kernel_basis(M: SparseMatrix) -> list:
    """Dense rational vectors spanning the null space of M."""
    _, ker = column_echelon(M, track=True)
    out = []
    for rel in ker:
        v = [Fraction(0)] * M.cols
        for j, x in rel.items():
            v[j] = Fraction(x)
        out.append(v)
    return out


def solve(M: SparseMatrix, b: dict):
    """Some x with Mx = b (sparse dict), or None when b is not in the image."""
    E, _ = column_echelon(M, track=True)
    rest, used = E.reduce(b)
    return None if rest else used


class DifferentialError(ValueError):
    pass


@dataclass
class FiniteComplex:
    """Chain complex of finite-dimensional spaces, differential d_n: C_n -> C_{n-1}."""

    spaces: dict
    differentials: dict = field(default_factory=dict)

    def __post_init__(self):
        for n, D in self.differentials.items():
            if D.cols != self.dim(n) or D.rows != self.dim(n - 1):
                raise ValueError(f"differential in degree {n} has wrong shape")

    @property
    def degrees(self) -> list:
        if not self.spaces:
            return []
        return list(range(min(self.spaces), max(self.spaces) + 1))

    def dim(self, n: int) -> int:
        return len(self.spaces.get(n, ()))

    def d(self, n: int) -> SparseMatrix:
        D = self.differentials.get(n)
        if D is None:
            return SparseMatrix.zero(self.dim(n - 1), self.dim(n))
        return D

    def check(self) -> None:
        for n in self.degrees:
            if not (self.d(n) @ self.d(n + 1)).is_zero():
                raise DifferentialError(f"d∘d != 0 at degree {n + 1} -> {n - 1}")


def homology_dimensions(C: FiniteComplex) -> dict:
    C.check()
    ranks = {n: rank(C.d(n)) for n in C.degrees + [C.degrees[-1] + 1] if C.degrees}
    return {n: C.dim(n) - ranks.get(n, 0) - ranks.get(n + 1, 0) for n in C.degrees}


class HomologyBasis:
    """Chosen cycle representatives in one degree plus class coordinates.

    ``coords(v)`` accepts any chain: the component along a fixed complement
    of the cycles is removed first, so the map is a chain-level projection
    onto homology (zero on boundaries and on the complement).
    """

    def __init__(self, d_in: SparseMatrix, d_out: SparseMatrix):
        # d_in: C_{n+1} -> C_n ; d_out: C_n -> C_{n-1}
        self.bound, _ = column_echelon(d_in)
        self.out_ech, ker = column_echelon(d_out, track=True)
        self._dout_cols = d_out.columns()
        self.reps = []
        self.quot = Echelon(track=True)
        for z in ker:
            rest, _ = self.bound.reduce(z)
            if rest and self.quot.add(rest, tag=len(self.reps)):
                self.reps.append(z)

    def __len__(self):
        return len(self.reps)

    def coords(self, v: dict) -> dict:
        image = _apply_cols(self._dout_cols, v)
        if image:
            rest, used = self.out_ech.reduce(image)
            v = vadd(dict(v), used, -1)
        rest, _ = self.bound.reduce(v)
        rest2, used = self.quot.reduce(rest)
        if rest2:
            raise ArithmeticError("residual cycle outside the chosen homology basis")
        return used


def _apply_cols(cols, v):
    out: dict = {}
    for j, c in v.items():
        vadd(out, cols[j], c)
    return out


def homology_basis(C: FiniteComplex, n: int) -> HomologyBasis:
    return HomologyBasis(C.d(n + 1), C.d(n))


class NoSolution:
    """Certificate that no homotopy exists: a cycle whose image class is nonzero."""

    def __init__(self, degree: int, cycle: dict):
        self.degree = degree
        self.cycle = cycle

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NoSolution(degree={self.degree})"


def solve_homotopy(C: FiniteComplex, phi: dict, psi: dict, window: tuple[int, int]):
    """Find H with dH + Hd = phi - psi on degrees lo..hi.

    ``phi``/``psi`` map degree -> SparseMatrix C_n -> C_n.  Degrees below the
    bottom of the complex are treated as zero, so lo is clamped to it.
    Returns ``{n: H_n}`` (H_n: C_n -> C_{n+1}) or a NoSolution.
    """
    lo, hi = window
    bottom = C.degrees[0]
    lo = max(lo, bottom)
    for n in range(lo, hi + 1):
        # chain map check: d phi = phi d
        for f in (phi, psi):
            left = C.d(n) @ _get(f, n, C)
            right = _get(f, n - 1, C) @ C.d(n)
            if left != right:
                raise ValueError(f"input is not a chain map at degree {n}")
    H: dict = {}
    prev_ech = None
    start = bottom
    for n in range(start, hi + 1):
        delta = _get(phi, n, C) - _get(psi, n, C)
        ech, _ = column_echelon(C.d(n + 1), track=True)
        Hprev = H.get(n - 1)
        dn_cols = C.d(n).columns()
        delta_cols = delta.columns()
        ys = []
        for j in range(C.dim(n)):
            y = dict(delta_cols[j])
            if Hprev is not None and dn_cols[j]:
                vadd(y, Hprev.apply(dn_cols[j]), -1)
            ys.append(y)
        sols, resid = [], []
        for y in ys:
            rest, used = ech.reduce(y)
            sols.append(used)
            resid.append(rest)
        if any(resid):
            if prev_ech is None:
                j = next(i for i, r in enumerate(resid) if r)
                return NoSolution(n, {j: Fraction(1)})
            # K: C_{n-1} -> cycles of C_n, K(d e_j) = resid_j
            for j in range(C.dim(n)):
                _, w = prev_ech.reduce(dn_cols[j])
                corr = dict(resid[j])
                for i, c in w.items():
                    vadd(corr, resid[i], -c)
                if corr:
                    rest, _ = ech.reduce(corr)
                    if rest:
                        cyc = {j: Fraction(1)}
                        vadd(cyc, w, -1)
                        return NoSolution(n, cyc)
            kcols = []
            for k in range(C.dim(n - 1)):
                _, w = prev_ech.reduce({k: Fraction(1)})
                col: dict = {}
                for i, c in w.items():
                    vadd(col, resid[i], c)
                kcols.append(col)
            K = SparseMatrix.from_columns(C.dim(n), kcols)
            H[n - 1] = H[n - 1] + K
            sols = []
            for j, y in enumerate(ys):
                y2 = vadd(dict(y), K.apply(dn_cols[j]), -1)
                rest, used = ech.reduce(y2)
                if rest:
                    return NoSolution(n, {j: Fraction(1)})
                sols.append(used)
        H[n] = SparseMatrix.from_columns(C.dim(n + 1), sols)
        prev_ech = ech
    return {n: M for n, M in H.items() if lo <= n <= hi or n == lo - 1}


def _get(f: dict, n: int, C: FiniteComplex) -> SparseMatrix:
    M = f.get(n)
    if M is None:
        return SparseMatrix.zero(C.dim(n), C.dim(n))
    return M


def check_homotopy(C: FiniteComplex, phi: dict, psi: dict, H: dict, window) -> bool:
    lo, hi = window
    lo = max(lo, C.degrees[0])
    for n in range(lo, hi + 1):
        lhs = C.d(n + 1) @ _getH(H, n, C)
        if n - 1 >= C.degrees[0]:
            lhs = lhs + _getH(H, n - 1, C) @ C.d(n)
        if lhs != _get(phi, n, C) - _get(psi, n, C):
            return False
    return True


def _getH(H, n, C):
    M = H.get(n)
    if M is None:
        return SparseMatrix.zero(C.dim(n + 1), C.dim(n))
    return M


def matrix_of_map(fn: Callable[[Hashable], dict], source: Sequence, target_index: dict) -> SparseMatrix:
    """Matrix of a linear map given on basis labels, with values as label dicts."""
    cols = []
    for lab in source:
        col = {}
        for t, c in fn(lab).items():
            if c:
                try:
                    i = target_index[t]
                except KeyError:
                    raise KeyError(f"image term {t!r} outside target basis") from None
                col[i] = col.get(i, 0) + c
        cols.append({i: x for i, x in col.items() if x})
    return SparseMatrix.from_columns(len(target_index), cols)


def labels_to_vector(x: dict, index: dict) -> dict:
    return {index[k]: Fraction(c) for k, c in x.items() if c}


def vector_to_labels(v: dict, labels: Sequence) -> dict:
    return {labels[i]: c for i, c in v.items() if c}


def independent(vectors: Iterable[dict]) -> int:
    E = Echelon()
    for v in vectors:
        E.add(v)
    return len(E)
