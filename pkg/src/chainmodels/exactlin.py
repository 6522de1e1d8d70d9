"""Exact matrices over Z and Q, Smith normal form, kernels and homology.

Entries are Python ints (arbitrary precision) or ``fractions.Fraction``.
Matrices are immutable; all operations return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class CompositionNotZero(ValueError):
    pass


class NotSolvable(ValueError):
    pass


class Matrix:
    """Dense row-major exact matrix with explicit shape (empty shapes allowed)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence], nrows: int | None = None, ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix or shape mismatch")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    # construction helpers
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries) -> "Matrix":
        """Build from a mapping or iterable of ``((i, j), value)`` pairs (values summed)."""
        grid = [[0] * ncols for _ in range(nrows)]
        items = entries.items() if hasattr(entries, "items") else entries
        for (i, j), v in items:
            grid[i][j] += v
        return cls(grid, nrows, ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls([[c[i] for c in columns] for i in range(nrows)], nrows, len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({[list(r) for r in self.rows]}, {self.nrows}, {self.ncols})"

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]

    def columns(self) -> list[list]:
        return [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.rows for v in r)

    def nonzero_rows(self) -> list[dict[int, object]]:
        return [{j: v for j, v in enumerate(r) if v} for r in self.rows]

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self.rows), self.ncols, self.nrows) if self.nrows and self.ncols \
            else Matrix.zeros(self.ncols, self.nrows)

    def __neg__(self) -> "Matrix":
        return Matrix([[-v for v in r] for r in self.rows], self.nrows, self.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.nrows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.nrows, self.ncols)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * v for v in r] for r in self.rows], self.nrows, self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.nonzero_rows()
        out = []
        for r in self.rows:
            acc: dict[int, object] = {}
            for k, a in enumerate(r):
                if a:
                    for j, b in orows[k].items():
                        acc[j] = acc.get(j, 0) + a * b
            row = [0] * other.ncols
            for j, v in acc.items():
                row[j] = v
            out.append(row)
        return Matrix(out, self.nrows, other.ncols)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        nz = [(k, v) for k, v in enumerate(vec) if v]
        return [sum((r[k] * v for k, v in nz), 0) for r in self.rows]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in col_idx] for i in row_idx], len(row_idx), len(col_idx))

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([a * b for a in r for b in s])
        return Matrix(rows, self.nrows * other.nrows, self.ncols * other.ncols)

    def to_fraction(self) -> "Matrix":
        return Matrix([[Fraction(v) for v in r] for r in self.rows], self.nrows, self.ncols)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)
                   for r in self.rows for v in r)

    def to_int(self) -> "Matrix":
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return Matrix([[int(v) for v in r] for r in self.rows], self.nrows, self.ncols)


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def hstack(blocks: Sequence[Matrix], nrows: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(nrows or 0, 0)
    n = blocks[0].nrows
    if any(b.nrows != n for b in blocks):
        raise ValueError("hstack row mismatch")
    rows = [sum((list(b.rows[i]) for b in blocks), []) for i in range(n)]
    return Matrix(rows, n, sum(b.ncols for b in blocks))


def vstack(blocks: Sequence[Matrix], ncols: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, ncols or 0)
    m = blocks[0].ncols
    if any(b.ncols != m for b in blocks):
        raise ValueError("vstack column mismatch")
    rows = [r for b in blocks for r in b.rows]
    return Matrix(rows, sum(b.nrows for b in blocks), m)


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(list(row)) for row in grid])


def direct_sum(blocks: Sequence[Matrix]) -> Matrix:
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    entries = {}
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            for j, v in enumerate(row):
                if v:
                    entries[(r0 + i, c0 + j)] = v
        r0 += b.nrows
        c0 += b.ncols
    return Matrix.from_entries(nr, nc, entries)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfDecomposition:
    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _pick_pivot(a: list[list[int]], t: int, m: int, n: int):
    best = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v:
                av = abs(v)
                if best is None or av < best[0]:
                    best = (av, i, j)
                    if av == 1:
                        return i, j
    return None if best is None else (best[1], best[2])


def _snf_dense(a: list[list[int]], m: int, n: int, track: bool):
    """In-place Smith reduction of ``a``; returns (U, V) as lists when ``track``."""
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        rd, rs = a[dst], a[src]
        for j in range(n):
            if rs[j]:
                rd[j] -= q * rs[j]
        if track:
            ud, us = U[dst], U[src]
            for j in range(m):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            if row[src]:
                row[dst] -= q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        piv = _pick_pivot(a, t, m, n)
        if piv is None:
            break
        i, j = piv
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, _nearest_quotient(a[i][t], p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, _nearest_quotient(a[t][j], p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder appeared in row/column t: re-pivot on it
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            if track:
                U[t] = [-v for v in U[t]]
        t += 1
    return U, V


def _nearest_quotient(x: int, p: int) -> int:
    q, r = divmod(x, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def smith_normal_form(M: Matrix) -> SnfDecomposition:
    """U·M·V = D with unimodular U, V and d1 | d2 | ... on the diagonal.

    Pivot rule: smallest nonzero absolute value in the remaining block, ties broken
    by lexicographically smallest (row, col).
    """
    m, n = M.shape
    a = [[int(v) for v in r] for r in M.to_int().rows]
    U, V = _snf_dense(a, m, n, track=True)
    return SnfDecomposition(Matrix(U, m, m), Matrix(a, m, n), Matrix(V, n, n))


def _sparse_unit_elimination(rows: list[dict[int, int]]):
    """Eliminate unit pivots; returns (count of unit pivots, residual rows)."""
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    alive = set(i for i, r in enumerate(rows) if r)
    units = 0
    progress = True
    while progress:
        progress = False
        for r_idx in sorted(alive, key=lambda i: (len(rows[i]), i)):
            if r_idx not in alive:
                continue
            row = rows[r_idx]
            if not row:
                alive.discard(r_idx)
                continue
            best = None
            for j, v in row.items():
                if v == 1 or v == -1:
                    c = len(col_rows[j])
                    if best is None or c < best[0] or (c == best[0] and j < best[1]):
                        best = (c, j)
            if best is None:
                continue
            pc = best[1]
            pv = row[pc]
            for other in sorted(col_rows[pc] - {r_idx}):
                orow = rows[other]
                f = orow[pc] * pv
                for j, v in row.items():
                    nv = orow.get(j, 0) - f * v
                    if nv:
                        if j not in orow:
                            col_rows[j].add(other)
                        orow[j] = nv
                    else:
                        if j in orow:
                            del orow[j]
                            col_rows[j].discard(other)
                if not orow:
                    alive.discard(other)
            for j in row:
                col_rows[j].discard(r_idx)
            rows[r_idx] = {}
            alive.discard(r_idx)
            units += 1
            progress = True
    residual = [rows[i] for i in sorted(alive) if rows[i]]
    return units, residual


def invariant_factors(M: Matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form (no transforms; sparse-first)."""
    rows = [{j: int(v) for j, v in enumerate(r) if v} for r in M.rows]
    units, residual = _sparse_unit_elimination(rows)
    factors = [1] * units
    if residual:
        cols = sorted({j for r in residual for j in r})
        cidx = {j: k for k, j in enumerate(cols)}
        a = [[0] * len(cols) for _ in residual]
        for i, r in enumerate(residual):
            for j, v in r.items():
                a[i][cidx[j]] = v
        m, n = len(a), len(cols)
        _snf_dense(a, m, n, track=False)
        factors.extend(a[i][i] for i in range(min(m, n)) if a[i][i])
    return sorted(factors, key=lambda d: (d != 1, d)) if factors else []


def rank_integer(M: Matrix) -> int:
    return len(invariant_factors(M))


def rank_rational(M: Matrix) -> int:
    """Rank over Q by sparse fraction-exact Gaussian elimination."""
    rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in M.rows]
    rank = 0
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = dict(row)
        while row:
            j = min(row)
            if j in pivots:
                prow = pivots[j]
                f = row[j]
                for k, v in prow.items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            else:
                inv = 1 / row[j]
                pivots[j] = {k: v * inv for k, v in row.items()}
                rank += 1
                break
    return rank


def rank(M: Matrix) -> int:
    if M.is_integral():
        return rank_integer(M)
    return rank_rational(M)


# ---------------------------------------------------------------------------
# kernels, images, solving


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    a = [[Fraction(v) for v in r] for r in M.rows]
    m, n = M.shape
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return Matrix(a, m, n), pivots


def rational_kernel(M: Matrix) -> Matrix:
    """Columns form a basis of ker M over Q (RREF free-variable basis)."""
    m, n = M.shape
    R, piv = rref(M)
    free = [j for j in range(n) if j not in piv]
    cols = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i, f]
        cols.append(v)
    return Matrix.from_columns(cols, n)


def integer_kernel(M: Matrix) -> Matrix:
    """Columns form a Z-basis of the (saturated) lattice ker M ∩ Z^n."""
    snf = smith_normal_form(M)
    r = snf.rank
    n = M.ncols
    cols = [snf.V.column(j) for j in range(r, n)]
    return Matrix.from_columns(cols, n)


def solve_rational(A: Matrix, b: Sequence) -> list[Fraction]:
    m, n = A.shape
    aug = Matrix([list(A.rows[i]) + [b[i]] for i in range(m)], m, n + 1)
    R, piv = rref(aug)
    if n in piv:
        raise NotSolvable("inconsistent system")
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i, n]
    return x


def solve_integer(A: Matrix, b: Sequence[int], snf: SnfDecomposition | None = None) -> list[int]:
    """An integer solution of A x = b via the Smith form (deterministic)."""
    snf = snf or smith_normal_form(A)
    y = snf.U.apply(list(b))
    diag = snf.diagonal
    z = [0] * A.ncols
    for i, yi in enumerate(y):
        d = diag[i] if i < len(diag) else 0
        if d:
            if yi % d:
                raise NotSolvable("no integer solution")
            z[i] = yi // d
        elif yi:
            raise NotSolvable("b not in column space")
    return snf.V.apply(z)


def coordinates(basis: Matrix, vec: Sequence, integral: bool = False) -> list:
    """Coordinates of ``vec`` in the column basis ``basis`` (must lie in the span)."""
    x = solve_rational(basis, vec)
    if integral:
        if any(v.denominator != 1 for v in x):
            raise NotSolvable("coordinates are not integral")
        return [int(v) for v in x]
    return x


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        t = tuple(self.torsion)
        if any(x <= 1 for x in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"bad torsion chain {t}")
        object.__setattr__(self, "torsion", t)

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = (["Z^%d" % self.betti] if self.betti > 1 else ["Z"] if self.betti else []) + \
            [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def homology_at(d_in: Matrix, d_out: Matrix, ring: str = "Z") -> HomologyGroup:
    """ker(d_out) / im(d_in), where d_in: C_{n+1} -> C_n and d_out: C_n -> C_{n-1}."""
    if d_in.nrows != d_out.ncols:
        raise ValueError(f"incompatible shapes {d_in.shape}, {d_out.shape}")
    n = d_in.nrows
    if d_out.nrows and d_in.ncols and not (d_out @ d_in).is_zero():
        raise CompositionNotZero("d_out · d_in != 0")
    if ring == "Q":
        r_out, r_in = rank_rational(d_out), rank_rational(d_in)
        return HomologyGroup(n - r_out - r_in)
    r_out = rank_integer(d_out)
    factors = invariant_factors(d_in)
    return HomologyGroup(n - r_out - len(factors), tuple(d for d in factors if d > 1))
