"""Bit-sliced storage for many codewords at once.

A batch of codewords is a uint64 array of shape (columns, rows, words).  Bit
``b`` of word ``w`` belongs to codeword ``64*w + b``, so one XOR of two word
vectors performs the same bit operation in up to 64*words codewords.  XOR
counts are always reported per codeword.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..binmat import BitMatrix

WORD = np.uint64
LANES_PER_WORD = 64


def empty(ncols: int, nrows: int, words: int = 1) -> np.ndarray:
    return np.zeros((ncols, nrows, words), dtype=WORD)


def random_planes(rng: np.random.Generator, ncols: int, nrows: int, lanes: int) -> np.ndarray:
    words = -(-lanes // LANES_PER_WORD)
    out = rng.integers(0, 2**64, size=(ncols, nrows, words), dtype=WORD, endpoint=False)
    spare = words * LANES_PER_WORD - lanes
    if spare:
        out[..., -1] &= WORD((1 << (LANES_PER_WORD - spare)) - 1)
    return out


def columns_to_planes(columns: Sequence[int], nrows: int) -> np.ndarray:
    """Single codeword (one int per column, bit t = row t) into lane 0."""
    out = empty(len(columns), nrows)
    for j, col in enumerate(columns):
        for t in range(nrows):
            if (col >> t) & 1:
                out[j, t, 0] = 1
    return out


def planes_to_columns(planes: np.ndarray, lane: int = 0) -> list[int]:
    word, bit = divmod(lane, LANES_PER_WORD)
    bits = (planes[:, :, word] >> WORD(bit)) & WORD(1)
    out = []
    for col in bits:
        v = 0
        for t, b in enumerate(col.tolist()):
            if b:
                v |= 1 << t
        out.append(v)
    return out


def lane_columns(planes: np.ndarray, lanes: int) -> list[list[int]]:
    return [planes_to_columns(planes, k) for k in range(lanes)]


class RowProgram:
    """A BitMatrix compiled for products with bit-sliced vectors."""

    def __init__(self, matrix: BitMatrix):
        self.matrix = matrix
        self.rows = [np.array([c for c in range(matrix.ncols) if (v >> c) & 1], dtype=np.intp)
                     for v in matrix.rows]
        # first term of each row is a copy; every further term is one XOR
        self.cost = sum(max(len(r) - 1, 0) for r in self.rows)

    def apply(self, vec: np.ndarray, ledger=None, phase: str = "") -> np.ndarray:
        """``vec`` has shape (ncols, words); returns (nrows, words)."""
        out = np.zeros((len(self.rows), vec.shape[-1]), dtype=WORD)
        for k, idx in enumerate(self.rows):
            if len(idx):
                out[k] = np.bitwise_xor.reduce(vec[idx], axis=0)
        if ledger is not None:
            ledger.add(phase, self.cost)
        return out
