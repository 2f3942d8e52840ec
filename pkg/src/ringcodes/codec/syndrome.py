"""Syndrome computation: the plain matrix product and the transform-based fast paths.

The fast paths work on reversed columns.  A data column x_j (bit t = row t)
is placed at exponents m-1-t of an m-bit ring element, so the tau padding
rows land on exponents 0..tau-1 and are known to be zero.  Row t of
A_{tau,tau}(a) * x_j is then the coefficient of x^(m-1-t) in a * X_j.
"""

from __future__ import annotations

import time
import weakref
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..binmat import BitMatrix, hstack
from ..constructions import CodeSpec
from ..ring import RingElem, circulant, rotate
from . import planes as pl
from .ledger import XorLedger
from .transform import FijTable, derive_fij, rm_transform_planes

__all__ = [
    "CodewordArray",
    "MATVEC_THRESHOLD",
    "Syndrome",
    "measure_xors",
    "syndrome",
    "syndrome_fast_vesip",
    "syndrome_fast_vetbr",
    "syndrome_naive",
]

# from this many syndrome rows on, the combine step multiplies by materialized circulants
MATVEC_THRESHOLD = 8

FAST_FAMILIES = ("vand-vetbr", "vand-vesip4")


@dataclass(frozen=True)
class CodewordArray:
    columns: tuple[int, ...]
    row_size: int

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(int(c) for c in self.columns))
        for c in self.columns:
            if c < 0 or c >> self.row_size:
                raise ValueError(f"column does not fit in {self.row_size} bits")

    @classmethod
    def zeros(cls, spec: CodeSpec) -> "CodewordArray":
        return cls((0,) * spec.total_cols, spec.row_size)

    @classmethod
    def random(cls, spec: CodeSpec, rng: np.random.Generator) -> "CodewordArray":
        q = spec.row_size
        return cls(tuple(int(rng.integers(0, 1 << q)) for _ in range(spec.total_cols)), q)

    def bit(self, row: int, col: int) -> int:
        return (self.columns[col] >> row) & 1

    def to_planes(self) -> np.ndarray:
        return pl.columns_to_planes(self.columns, self.row_size)

    @classmethod
    def from_planes(cls, planes: np.ndarray, lane: int = 0) -> "CodewordArray":
        return cls(tuple(pl.planes_to_columns(planes, lane)), planes.shape[1])

    def replace(self, updates: dict[int, int]) -> "CodewordArray":
        cols = list(self.columns)
        for j, v in updates.items():
            cols[j] = v
        return CodewordArray(tuple(cols), self.row_size)


@dataclass(frozen=True)
class Syndrome:
    parts: tuple[int, ...]
    row_size: int

    def is_zero(self) -> bool:
        return not any(self.parts)

    def as_vector(self) -> int:
        v = 0
        for i, part in enumerate(self.parts):
            v |= part << (i * self.row_size)
        return v


def _check_shape(spec: CodeSpec, x: np.ndarray) -> None:
    if x.ndim != 3 or x.shape[:2] != (spec.total_cols, spec.row_size):
        raise ValueError(f"expected {spec.total_cols} columns of {spec.row_size} rows, got shape {x.shape[:2]}")


class _SyndromeEngine:
    """Per-spec precomputation, built once and shared read-only."""

    def __init__(self, spec: CodeSpec):
        self.spec = spec
        self._naive = None
        self._fij = None
        self._gather = {}
        self._programs = {}

    @property
    def naive_program(self) -> pl.RowProgram:
        if self._naive is None:
            self._naive = pl.RowProgram(self.spec.Hbin)
        return self._naive

    @property
    def fij(self) -> FijTable:
        if self._fij is None:
            spec = self.spec
            n0 = spec.n0 if spec.family == "vand-vetbr" else spec.n1
            self._fij = derive_fij(spec.r, n0, spec.params)
        return self._fij

    # -- combine step ---------------------------------------------------
    def _gather_plan(self, i: int):
        plan = self._gather.get(i)
        if plan is None:
            m = self.spec.params.m
            ks, es = [], []
            for k, coeff in self.fij.coeff[i].items():
                for e in range(m):
                    if (coeff >> e) & 1:
                        ks.append(k)
                        es.append(e)
            ks = np.array(ks, dtype=np.intp)
            es = np.array(es, dtype=np.intp)
            rows = (np.arange(m)[None, :] - es[:, None]) % m
            plan = self._gather[i] = (ks, es, rows)
        return plan

    def _matvec_program(self, i: int):
        prog = self._programs.get(i)
        if prog is None:
            params = self.spec.params
            tau = params.tau
            ks = sorted(self.fij.coeff[i])
            blocks = []
            for k in ks:
                # column e of the transposed circulant holds a shifted copy of the coefficient
                full = circulant(RingElem(self.fij.coeff[i][k], params), 0, 0).transpose()
                blocks.append(full.col_slice(tau, params.m))
            prog = self._programs[i] = (np.array(ks, dtype=np.intp), pl.RowProgram(hstack(blocks)))
        return prog

    def combine(self, i: int, y: np.ndarray, window: int, ledger) -> tuple[np.ndarray, int]:
        """P(i) = sum_k c(i,k) y_k; ``y`` holds full m-row reversed vectors."""
        m = self.spec.params.m
        tau = self.spec.params.tau
        if i == 0:
            return y[0].copy(), window
        if self.spec.r >= MATVEC_THRESHOLD:
            ks, prog = self._matvec_program(i)
            vec = y[ks, tau:, :].reshape(-1, y.shape[-1])
            out = prog.apply(vec, ledger, "combine")
            nonzero = [e for e, idx in enumerate(prog.rows) if len(idx)]
            return out, sum(1 << e for e in nonzero)
        ks, es, rows = self._gather_plan(i)
        out = np.bitwise_xor.reduce(y[ks[:, None], rows], axis=0)
        support = 0
        cost = 0
        for e in es.tolist():
            s = rotate(window, e, m)
            cost += s.bit_count()
            support |= s
        if ledger is not None and len(es):
            ledger.add("combine", cost - rotate(window, int(es[0]), m).bit_count())
        return out, support

    def finish(self, i: int, v: np.ndarray, support: int, ledger) -> np.ndarray:
        """Window of (1 + x^tau)^i * v, returned in normal row order."""
        params = self.spec.params
        m, tau = params.m, params.tau
        window = ((1 << m) - 1) ^ ((1 << tau) - 1)
        shifts = [tau << a for a in range(i.bit_length()) if (i >> a) & 1]
        for sh in shifts[:-1]:
            v = v ^ np.roll(v, sh, axis=0)
            if ledger is not None:
                ledger.add("finish", support.bit_count())
            support |= rotate(support, sh, m)
        if shifts:
            sh = shifts[-1]
            out = v[tau:] ^ np.roll(v, sh, axis=0)[tau:]
            if ledger is not None:
                ledger.add("finish", (rotate(support, sh, m) & window).bit_count())
        else:
            out = v[tau:].copy()
        return out[::-1]

    def transform(self, cols: np.ndarray, ledger) -> np.ndarray:
        """Reverse, RM-transform and zero-extend the Vandermonde-part columns."""
        params = self.spec.params
        m, tau, q = params.m, params.tau, params.row_size
        n0 = self.fij.n0
        rev = np.ascontiguousarray(cols[:, ::-1, :])
        rm_transform_planes(rev, n0, self.fij.needed_outputs(), q, ledger)
        y = np.zeros((rev.shape[0], m, rev.shape[2]), dtype=pl.WORD)
        y[:, tau:, :] = rev
        return y


_ENGINES: "weakref.WeakKeyDictionary[CodeSpec, _SyndromeEngine]" = weakref.WeakKeyDictionary()


def engine_for(spec: CodeSpec) -> _SyndromeEngine:
    eng = _ENGINES.get(spec)
    if eng is None:
        eng = _ENGINES[spec] = _SyndromeEngine(spec)
    return eng


# -- bit-sliced entry points -------------------------------------------------

def syndrome_naive_planes(spec: CodeSpec, x: np.ndarray, ledger: XorLedger | None = None) -> np.ndarray:
    _check_shape(spec, x)
    prog = engine_for(spec).naive_program
    out = prog.apply(x.reshape(-1, x.shape[-1]), ledger, "syndrome")
    return out.reshape(spec.r, spec.row_size, x.shape[-1])


def syndrome_fast_vetbr_planes(spec: CodeSpec, x: np.ndarray, ledger: XorLedger | None = None) -> np.ndarray:
    if spec.family != "vand-vetbr":
        raise ValueError(f"fast V-ETBR syndrome needs a vand-vetbr spec, got {spec.family}")
    _check_shape(spec, x)
    eng = engine_for(spec)
    params = spec.params
    window = ((1 << params.m) - 1) ^ ((1 << params.tau) - 1)
    y = eng.transform(x, ledger)
    out = np.empty((spec.r, spec.row_size, x.shape[-1]), dtype=pl.WORD)
    for i in range(spec.r):
        p, support = eng.combine(i, y, window, ledger)
        out[i] = eng.finish(i, p, support, ledger)
    return out


def syndrome_fast_vesip_planes(spec: CodeSpec, x: np.ndarray, ledger: XorLedger | None = None) -> np.ndarray:
    if spec.family != "vand-vesip4":
        raise ValueError(f"fast V-ESIP syndrome needs a vand-vesip4 spec, got {spec.family}")
    _check_shape(spec, x)
    eng = engine_for(spec)
    params = spec.params
    m, w = params.m, spec.w
    window = ((1 << m) - 1) ^ ((1 << params.tau) - 1)
    half = 1 << spec.n1
    y = eng.transform(x[:half], ledger)
    P, S = [], []
    for i in range(4):
        p, support = eng.combine(i, y, window, ledger)
        P.append(p)
        S.append(support)

    def shifted(i, k):
        return np.roll(P[i], k * w, axis=0), rotate(S[i], k * w, m)

    # Q(i) = sum_k C(i, k) x^{(i-k) w} P(k), binomials mod 2
    recipe = {0: [], 1: [(0, 1)], 2: [(0, 2)], 3: [(2, 1), (1, 2), (0, 3)]}
    out = np.empty((4, spec.row_size, x.shape[-1]), dtype=pl.WORD)
    for i in range(4):
        q, support = P[i].copy(), S[i]
        for k, mult in recipe[i]:
            add, add_support = shifted(k, mult)
            q ^= add
            if ledger is not None:
                ledger.add("combine", add_support.bit_count())
            support |= add_support
        s = eng.finish(i, q, support, ledger)
        s ^= x[half + i]
        if ledger is not None:
            ledger.add("finish", spec.row_size)
        out[i] = s
    return out


def syndrome_planes(spec: CodeSpec, x: np.ndarray, ledger: XorLedger | None = None,
                    mode: str = "auto") -> np.ndarray:
    if mode == "auto":
        mode = "fast" if spec.family in FAST_FAMILIES else "naive"
    if mode == "naive":
        return syndrome_naive_planes(spec, x, ledger)
    if mode != "fast":
        raise ValueError(f"unknown mode {mode!r}")
    if spec.family == "vand-vetbr":
        return syndrome_fast_vetbr_planes(spec, x, ledger)
    if spec.family == "vand-vesip4":
        return syndrome_fast_vesip_planes(spec, x, ledger)
    raise ValueError(f"fast mode needs a Vandermonde family, got {spec.family}")


# -- single-codeword wrappers --------------------------------------------------

def _as_planes(spec: CodeSpec, x: CodewordArray) -> np.ndarray:
    if len(x.columns) != spec.total_cols or x.row_size != spec.row_size:
        raise ValueError(f"expected {spec.total_cols} columns of {spec.row_size} bits")
    return x.to_planes()


def _to_syndrome(s: np.ndarray) -> Syndrome:
    return Syndrome(tuple(pl.planes_to_columns(s)), s.shape[1])


def syndrome_naive(spec: CodeSpec, x: CodewordArray, ledger: XorLedger | None = None) -> Syndrome:
    return _to_syndrome(syndrome_naive_planes(spec, _as_planes(spec, x), ledger))


def syndrome_fast_vetbr(spec: CodeSpec, x: CodewordArray, ledger: XorLedger | None = None) -> Syndrome:
    return _to_syndrome(syndrome_fast_vetbr_planes(spec, _as_planes(spec, x), ledger))


def syndrome_fast_vesip(spec: CodeSpec, x: CodewordArray, ledger: XorLedger | None = None) -> Syndrome:
    return _to_syndrome(syndrome_fast_vesip_planes(spec, _as_planes(spec, x), ledger))


def syndrome(spec: CodeSpec, x: CodewordArray, ledger: XorLedger | None = None, mode: str = "auto") -> Syndrome:
    return _to_syndrome(syndrome_planes(spec, _as_planes(spec, x), ledger, mode))


def measure_xors(spec: CodeSpec, mode: str = "fast", trials: int = 3, seed: int = 0) -> dict:
    """Syndrome cost per data bit; counts are data independent, trials must agree."""
    if mode not in ("fast", "naive"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "fast" and spec.family not in FAST_FAMILIES:
        raise ValueError(f"fast mode needs a Vandermonde family, got {spec.family}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    ledgers = []
    start = time.perf_counter()
    for _ in range(trials):
        led = XorLedger()
        x = pl.random_planes(rng, spec.total_cols, spec.row_size, 1)
        syndrome_planes(spec, x, led, mode)
        ledgers.append(led)
    elapsed = time.perf_counter() - start
    first = ledgers[0].as_dict()
    if any(l.as_dict() != first for l in ledgers[1:]):
        raise AssertionError("XOR count depends on the data")
    data_bits = spec.total_cols * spec.row_size
    total = ledgers[0].total
    return {
        "mode": mode,
        "trials": trials,
        "phases": first,
        "total_xors": total,
        "data_bits": data_bits,
        "xors_per_data_bit": total / data_bits,
        "seconds_per_syndrome": elapsed / trials,
    }
