"""Dense GF(2) matrices with rows packed into Python ints.

Row ``r`` is an int whose bit ``c`` is entry (r, c).  Bits at or above
``ncols`` are always zero, so two matrices are equal exactly when their row
tuples are.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BitMatrix",
    "LeftSolver",
    "RingMatrix",
    "SingularMatrixError",
    "InconsistentSystemError",
    "left_solver",
    "mat_invert",
    "mat_mul",
    "mat_rank",
    "hstack",
    "mat_solve",
    "vstack",
    "submatrix_columns",
    "tmap",
]


class SingularMatrixError(ValueError):
    pass


class InconsistentSystemError(ValueError):
    pass


def _parity(v: int) -> int:
    return v.bit_count() & 1


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.ncols < 0:
            raise ValueError("negative column count")
        limit = 1 << self.ncols
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError("row has bits beyond the column count")

    # -- construction -------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def from_lists(cls, grid: Sequence[Sequence[int]], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            ncols = len(grid[0]) if grid else 0
        rows = []
        for row in grid:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            v = 0
            for c, bit in enumerate(row):
                if bit & 1:
                    v |= 1 << c
            rows.append(v)
        return cls(tuple(rows), ncols)

    @classmethod
    def from_array(cls, arr) -> "BitMatrix":
        arr = np.asarray(arr, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        return cls.from_lists(arr.tolist(), arr.shape[1])

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for r, v in enumerate(self.rows):
            for c in range(self.ncols):
                if (v >> c) & 1:
                    out[r, c] = 1
        return out

    # -- shape and access --------------------------------------------
    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        if not (0 <= c < self.ncols):
            raise IndexError(c)
        return (self.rows[r] >> c) & 1

    def column(self, c: int) -> int:
        """Column ``c`` as an int whose bit r is entry (r, c)."""
        v = 0
        for r, row in enumerate(self.rows):
            if (row >> c) & 1:
                v |= 1 << r
        return v

    def ones(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(tuple(self.column(c) for c in range(self.ncols)), self.nrows)

    def row_slice(self, start: int, stop: int) -> "BitMatrix":
        return BitMatrix(self.rows[start:stop], self.ncols)

    def col_slice(self, start: int, stop: int) -> "BitMatrix":
        mask = (1 << (stop - start)) - 1
        return BitMatrix(tuple((r >> start) & mask for r in self.rows), stop - start)

    def mul_vec(self, v: int) -> int:
        """Matrix times a column vector given as an int (bit c = entry c)."""
        out = 0
        for r, row in enumerate(self.rows):
            if _parity(row & v):
                out |= 1 << r
        return out

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return BitMatrix(tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.ncols)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mat_mul(self, other)

    def __str__(self) -> str:
        return "\n".join(
            "".join("1" if (row >> c) & 1 else "0" for c in range(self.ncols)) for row in self.rows
        )


def hstack(mats: Sequence[BitMatrix]) -> BitMatrix:
    if not mats:
        raise ValueError("nothing to stack")
    nrows = mats[0].nrows
    if any(m.nrows != nrows for m in mats):
        raise ValueError("row counts differ")
    rows = [0] * nrows
    off = 0
    for m in mats:
        for r, v in enumerate(m.rows):
            rows[r] |= v << off
        off += m.ncols
    return BitMatrix(tuple(rows), off)


def vstack(mats: Sequence[BitMatrix]) -> BitMatrix:
    if not mats:
        raise ValueError("nothing to stack")
    ncols = mats[0].ncols
    if any(m.ncols != ncols for m in mats):
        raise ValueError("column counts differ")
    return BitMatrix(tuple(r for m in mats for r in m.rows), ncols)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    out = []
    for row in a.rows:
        acc = 0
        while row:
            low = row & -row
            acc ^= b.rows[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return BitMatrix(tuple(out), b.ncols)


def mat_rank(a: BitMatrix) -> int:
    rows = list(a.rows)
    rank = 0
    for c in range(a.ncols):
        bit = 1 << c
        piv = next((k for k in range(rank, len(rows)) if rows[k] & bit), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for k in range(rank + 1, len(rows)):
            if rows[k] & bit:
                rows[k] ^= rows[rank]
        rank += 1
    return rank


@dataclass(frozen=True)
class LeftSolver:
    """Row operations reducing a full-column-rank ``A`` to ``[I; 0]``.

    ``solve`` is ``A``'s left inverse; ``check`` spans the left null space, so
    ``A e = s`` is consistent exactly when ``check * s == 0``.
    """

    solve: BitMatrix
    check: BitMatrix

    def __call__(self, rhs: int) -> int:
        if self.check.mul_vec(rhs):
            raise InconsistentSystemError("no solution")
        return self.solve.mul_vec(rhs)


def left_solver(a: BitMatrix) -> LeftSolver:
    nr, nc = a.shape
    if nc > nr:
        raise SingularMatrixError("not uniquely solvable: more unknowns than equations")
    # augmented rows: low nc bits hold A, the next nr bits track the row operations
    rows = [v | (1 << (nc + k)) for k, v in enumerate(a.rows)]
    for c in range(nc):
        bit = 1 << c
        piv = next((k for k in range(c, nr) if rows[k] & bit), None)
        if piv is None:
            raise SingularMatrixError("not uniquely solvable: matrix is rank deficient")
        rows[c], rows[piv] = rows[piv], rows[c]
        pr = rows[c]
        for k in range(nr):
            if k != c and rows[k] & bit:
                rows[k] ^= pr
    ops = [v >> nc for v in rows]
    return LeftSolver(BitMatrix(tuple(ops[:nc]), nr), BitMatrix(tuple(ops[nc:]), nr))


def mat_solve(a: BitMatrix, rhs: int | Sequence[int]) -> int:
    """Unique ``e`` with ``a * e == rhs``; vectors are ints (bit k = entry k)."""
    if not isinstance(rhs, int):
        rhs = sum((b & 1) << k for k, b in enumerate(rhs))
    if rhs >> a.nrows:
        raise ValueError("right-hand side longer than the row count")
    return left_solver(a)(rhs)


def mat_invert(a: BitMatrix) -> BitMatrix:
    if a.nrows != a.ncols:
        raise ValueError("only square matrices can be inverted")
    try:
        return left_solver(a).solve
    except SingularMatrixError as exc:
        raise SingularMatrixError("matrix is singular") from exc


@dataclass(frozen=True)
class RingMatrix:
    """A grid of ring elements sharing one set of ring parameters."""

    entries: tuple[tuple, ...]

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries or not entries[0]:
            raise ValueError("empty ring matrix")
        width = len(entries[0])
        params = entries[0][0].params
        for row in entries:
            if len(row) != width:
                raise ValueError("ragged ring matrix")
            for e in row:
                if e.params != params:
                    raise ValueError("mixed ring parameters")

    @property
    def params(self):
        return self.entries[0][0].params

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def select_columns(self, cols: Iterable[int]) -> "RingMatrix":
        cols = list(cols)
        return RingMatrix(tuple(tuple(row[j] for j in cols) for row in self.entries))

    def hstack(self, other: "RingMatrix") -> "RingMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return RingMatrix(tuple(a + b for a, b in zip(self.entries, other.entries)))


def tmap(b: RingMatrix) -> BitMatrix:
    """Block matrix whose block (i, j) is A_{tau,tau}(b[i, j])."""
    params = b.params
    m, q = params.m, params.row_size
    qmask = (1 << q) - 1
    full = (1 << m) - 1
    rows = []
    for entry_row in b.entries:
        for t in range(q):
            v = 0
            for j, e in enumerate(entry_row):
                if e.bits:
                    rot = ((e.bits << t) | (e.bits >> (m - t))) & full if t else e.bits
                    v |= (rot & qmask) << (j * q)
            rows.append(v)
    return BitMatrix(tuple(rows), b.ncols * q)


def submatrix_columns(a: BitMatrix, pattern, block: int) -> BitMatrix:
    """Concatenate the ``block``-wide column groups named by ``pattern``, ascending."""
    idx = sorted(getattr(pattern, "indices", pattern))
    if block <= 0 or a.ncols % block:
        raise ValueError("block width must divide the column count")
    nblocks = a.ncols // block
    for j in idx:
        if not (0 <= j < nblocks):
            raise IndexError(f"column block {j} out of range [0, {nblocks})")
    mask = (1 << block) - 1
    rows = []
    for v in a.rows:
        out = 0
        for k, j in enumerate(idx):
            out |= ((v >> (j * block)) & mask) << (k * block)
        rows.append(out)
    return BitMatrix(tuple(rows), block * len(idx))
