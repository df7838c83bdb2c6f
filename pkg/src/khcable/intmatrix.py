"""Sparse exact integer matrices, Smith normal form and homology ranks.

Matrices act on column vectors, so a differential ``C -> C'`` is stored with
shape ``(dim C', dim C)``.  Entries are Python integers and never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DifferentialLawError


class IntMatrix:
    """Row-sparse integer matrix.  Treated as immutable once built."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[dict[int, int]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [dict() for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        self.rows = [{c: v for c, v in r.items() if v} for r in rows]

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        nrows = len(dense)
        if ncols is None:
            ncols = len(dense[0]) if nrows else 0
        rows = []
        for r in dense:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({c: int(v) for c, v in enumerate(r) if v})
        return cls(nrows, ncols, rows)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, int]]) -> "IntMatrix":
        rows: list[dict[int, int]] = [dict() for _ in range(nrows)]
        for r, c, v in entries:
            if v:
                row = rows[r]
                row[c] = row.get(c, 0) + v
        return cls(nrows, ncols, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            for c, v in row.items():
                out[i][c] = v
        return out

    def entries(self):
        for i, row in enumerate(self.rows):
            for c in sorted(row):
                yield i, c, row[c]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def transpose(self) -> "IntMatrix":
        cols: list[dict[int, int]] = [dict() for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for c, v in row.items():
                cols[c][i] = v
        return IntMatrix(self.ncols, self.nrows, cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for row in self.rows:
            acc: dict[int, int] = {}
            for k, a in row.items():
                for c, b in other.rows[k].items():
                    acc[c] = acc.get(c, 0) + a * b
            out.append(acc)
        return IntMatrix(self.nrows, other.ncols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = []
        for r1, r2 in zip(self.rows, other.rows):
            acc = dict(r1)
            for c, v in r2.items():
                acc[c] = acc.get(c, 0) + v
            out.append(acc)
        return IntMatrix(self.nrows, self.ncols, out)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.nrows, self.ncols, [{c: k * v for c, v in r.items()} for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


@dataclass(frozen=True)
class SnfResult:
    """Invariant factors ``d1 | d2 | ...`` (nonzero ones only) and the rank.

    ``left``/``right`` hold unimodular ``U``, ``V`` with ``U A V = D`` when the
    decomposition was requested.
    """

    diagonal: tuple[int, ...]
    rank: int
    left: IntMatrix | None = field(default=None, compare=False)
    right: IntMatrix | None = field(default=None, compare=False)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)

    def diagonal_matrix(self, nrows: int, ncols: int) -> IntMatrix:
        return IntMatrix.from_entries(nrows, ncols, ((i, i, d) for i, d in enumerate(self.diagonal)))


def _dense_snf(a: list[list[int]], track: bool):
    """In-place Smith form of a dense matrix; returns (diagonal, U, V)."""
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        ra, rd = a[src], a[dst]
        for c in range(n):
            if ra[c]:
                rd[c] += k * ra[c]
        if track:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] += k * us[c]

    def add_col(src, dst, k):  # col dst += k * col src
        for row in a:
            if row[src]:
                row[dst] += k * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += k * row[src]

    diag = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder appeared in row/column t: pivot on it
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, t)
                for j in range(t, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            if track:
                U[t] = [-v for v in U[t]]
        diag.append(a[t][t])
    return diag, U, V


def smith_normal_form(m: IntMatrix, transforms: bool = False) -> SnfResult:
    """Smith normal form of ``m``.

    With ``transforms=True`` the unimodular ``U``, ``V`` with ``U m V = D``
    are returned too (dense algorithm, meant for small matrices).  Otherwise
    the matrix is first reduced by sparse elimination on unit pivots, and
    only the leftover block goes through the dense algorithm.
    """
    if transforms:
        a = m.to_dense()
        if not a or not a[0]:
            return SnfResult((), 0, IntMatrix.identity(m.nrows), IntMatrix.identity(m.ncols))
        diag, U, V = _dense_snf(a, track=True)
        return SnfResult(tuple(diag), len(diag), IntMatrix.from_dense(U, m.nrows), IntMatrix.from_dense(V, m.ncols))
    units, rest = _eliminate_units(m)
    if rest:
        diag, _, _ = _dense_snf(rest, track=False)
    else:
        diag = []
    full = [1] * units + diag
    return SnfResult(tuple(full), len(full))


def _eliminate_units(m: IntMatrix):
    """Sparse Gaussian elimination on +-1 pivots.

    Returns the number of unit pivots used and the remaining nonzero block
    as a dense list of rows (possibly empty).
    """
    rows: dict[int, dict[int, int]] = {i: dict(r) for i, r in enumerate(m.rows) if r}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for c in r:
            cols.setdefault(c, set()).add(i)

    def pivot(pi: int, pc: int) -> None:
        prow = rows.pop(pi)
        u = prow[pc]
        for c in prow:
            cols[c].discard(pi)
        others = cols.pop(pc)
        for ri in others:
            row = rows[ri]
            factor = row.pop(pc) * u
            for c, v in prow.items():
                if c == pc:
                    continue
                nv = row.get(c, 0) - factor * v
                if nv:
                    if c not in row:
                        cols[c].add(ri)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    cols[c].discard(ri)
            if not row:
                del rows[ri]
        for c in prow:
            if c != pc and not cols[c]:
                del cols[c]

    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(rows, key=lambda k: (len(rows[k]), k)):
            r = rows.get(i)
            if r is None:
                continue
            best = None
            for c, v in r.items():
                if v == 1 or v == -1:
                    k = len(cols[c])
                    if best is None or (k, c) < best:
                        best = (k, c)
            if best is not None:
                pivot(i, best[1])
                units += 1
                progress = True
    if not rows:
        return units, []
    col_ids = sorted({c for r in rows.values() for c in r})
    index = {c: k for k, c in enumerate(col_ids)}
    dense = []
    for i in sorted(rows):
        line = [0] * len(col_ids)
        for c, v in rows[i].items():
            line[index[c]] = v
        dense.append(line)
    return units, dense


def matrix_rank(m: IntMatrix) -> int:
    return smith_normal_form(m).rank


def homology_ranks(d_in: IntMatrix, d_out: IntMatrix) -> tuple[int, tuple[int, ...]]:
    """Homology at the middle group of ``A --d_in--> B --d_out--> C``.

    Returns the free rank and the torsion coefficients (increasing).
    Raises :class:`DifferentialLawError` if ``d_out @ d_in`` is not zero.
    """
    if d_in.nrows != d_out.ncols:
        raise ValueError(f"incompatible shapes {d_in.shape} then {d_out.shape}")
    if not (d_out @ d_in).is_zero():
        raise DifferentialLawError("d_out . d_in != 0")
    snf_in = smith_normal_form(d_in)
    rank_out = smith_normal_form(d_out).rank
    free = d_in.nrows - rank_out - snf_in.rank
    return free, tuple(sorted(snf_in.torsion))
