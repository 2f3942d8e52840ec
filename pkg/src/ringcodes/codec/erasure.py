"""Systematic encoding and erasure decoding by syndrome-then-solve.

Zero the unknown columns, compute the syndrome s of what is left, and solve
H_e e = s where H_e holds the binary parity-check columns of the unknowns.
Encoding is the special case where the unknowns are the parity columns.
"""

from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..binmat import BitMatrix, InconsistentSystemError, SingularMatrixError, left_solver, submatrix_columns
from ..constructions import CodeSpec
from ..ring import circulant
from . import planes as pl
from .ledger import XorLedger
from .syndrome import CodewordArray, syndrome_planes

__all__ = ["DecodeError", "ErasurePattern", "decode", "decode_planes", "encode", "encode_planes"]


class DecodeError(ValueError):
    pass


@dataclass(frozen=True)
class ErasurePattern:
    indices: tuple[int, ...]

    def __init__(self, indices: Iterable[int] = ()):
        idx = tuple(sorted(set(int(i) for i in indices)))
        if any(i < 0 for i in idx):
            raise ValueError("negative column index")
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


class _Solver:
    """Recovers erased columns for one pattern."""

    def __init__(self, spec: CodeSpec, pattern: ErasurePattern):
        q = spec.row_size
        sub = submatrix_columns(spec.Hbin, pattern, q)
        try:
            ls = left_solver(sub)
        except SingularMatrixError as exc:
            raise DecodeError(f"erasure pattern {pattern.indices} not decodable") from exc
        self.solve = pl.RowProgram(ls.solve)
        self.check = pl.RowProgram(ls.check) if ls.check.nrows else None

    def __call__(self, s: np.ndarray, ledger) -> np.ndarray:
        flat = s.reshape(-1, s.shape[-1])
        if self.check is not None and self.check.apply(flat).any():
            raise DecodeError("surviving columns are inconsistent with the code")
        return self.solve.apply(flat, ledger, "solve")


class _ParityShortcut:
    """Parity solve for layouts whose parity block is (nearly) an identity.

    Either the parity block is the identity, or only its first column is
    general with a 1 on top, as in the shortened-identity layout.  Then the
    first parity column is s_0 and each other one is s_i plus a circulant
    image of the first.
    """

    def __init__(self, spec: CodeSpec):
        self.spec = spec
        first = spec.H.column(spec.data_cols)
        params = spec.params
        self.coupled = [(i, pl.RowProgram(circulant(first[i], params.tau, params.tau)))
                        for i in range(1, spec.r) if not first[i].is_zero()]

    @staticmethod
    def applies(spec: CodeSpec) -> bool:
        if spec.family == "br":
            return False
        H, params = spec.H, spec.params
        cols = [H.column(j) for j in spec.parity_cols]
        if cols[0][0] != params.one():
            return False
        for k, col in enumerate(cols[1:], start=1):
            if any(e != (params.one() if i == k else params.zero()) for i, e in enumerate(col)):
                return False
        return True

    def __call__(self, s: np.ndarray, ledger) -> np.ndarray:
        out = s.copy()
        for i, prog in self.coupled:
            # A_{tau,tau}(h) is square here, acting on the first parity column
            out[i] ^= prog.apply(s[0], ledger, "solve")
            if ledger is not None:
                ledger.add("solve", sum(1 for r in prog.rows if len(r)))
        return out


class _Codec:
    def __init__(self, spec: CodeSpec):
        self.spec = spec
        self._solvers: dict[tuple[int, ...], _Solver] = {}
        self._lock = threading.Lock()
        self.shortcut = _ParityShortcut(spec) if _ParityShortcut.applies(spec) else None

    def solver(self, pattern: ErasurePattern) -> _Solver:
        hit = self._solvers.get(pattern.indices)
        if hit is None:
            hit = _Solver(self.spec, pattern)
            with self._lock:
                hit = self._solvers.setdefault(pattern.indices, hit)
        return hit


_CODECS: "weakref.WeakKeyDictionary[CodeSpec, _Codec]" = weakref.WeakKeyDictionary()


def _codec(spec: CodeSpec) -> _Codec:
    c = _CODECS.get(spec)
    if c is None:
        c = _CODECS[spec] = _Codec(spec)
    return c


def encode_planes(spec: CodeSpec, data: np.ndarray, ledger: XorLedger | None = None,
                  mode: str = "auto") -> np.ndarray:
    """``data`` is (data_cols, rows, words); returns the full (total_cols, rows, words) batch."""
    k, q = spec.data_cols, spec.row_size
    if data.ndim != 3 or data.shape[:2] != (k, q):
        raise ValueError(f"expected {k} data columns of {q} rows, got shape {data.shape[:2]}")
    x = np.zeros((spec.total_cols, q, data.shape[2]), dtype=pl.WORD)
    x[:k] = data
    s = syndrome_planes(spec, x, ledger, mode)
    codec = _codec(spec)
    if codec.shortcut is not None:
        x[k:] = codec.shortcut(s, ledger)
    else:
        x[k:] = codec.solver(ErasurePattern(spec.parity_cols))(s, ledger).reshape(spec.r, q, -1)
    return x


def decode_planes(spec: CodeSpec, damaged: np.ndarray, pattern: ErasurePattern,
                  ledger: XorLedger | None = None, mode: str = "auto") -> np.ndarray:
    """Recover the columns in ``pattern``; their content in ``damaged`` is ignored."""
    if len(pattern) > spec.r:
        raise DecodeError(f"{len(pattern)} erasures exceed the {spec.r} parity columns")
    if pattern.indices and pattern.indices[-1] >= spec.total_cols:
        raise ValueError(f"column index {pattern.indices[-1]} out of range")
    x = damaged.copy()
    idx = list(pattern.indices)
    x[idx] = 0
    s = syndrome_planes(spec, x, ledger, mode)
    if not idx:
        if s.any():
            raise DecodeError("array is not a codeword")
        return x
    e = _codec(spec).solver(pattern)(s, ledger)
    x[idx] = e.reshape(len(idx), spec.row_size, -1)
    return x


def encode(spec: CodeSpec, data_columns: Sequence[int], ledger: XorLedger | None = None) -> CodewordArray:
    if len(data_columns) != spec.data_cols:
        raise ValueError(f"expected {spec.data_cols} data columns, got {len(data_columns)}")
    data = CodewordArray(tuple(data_columns), spec.row_size).to_planes()
    return CodewordArray.from_planes(encode_planes(spec, data, ledger))


def decode(spec: CodeSpec, damaged: CodewordArray, pattern: ErasurePattern,
           ledger: XorLedger | None = None) -> CodewordArray:
    if len(damaged.columns) != spec.total_cols or damaged.row_size != spec.row_size:
        raise ValueError(f"expected {spec.total_cols} columns of {spec.row_size} bits")
    return CodewordArray.from_planes(decode_planes(spec, damaged.to_planes(), pattern, ledger))
