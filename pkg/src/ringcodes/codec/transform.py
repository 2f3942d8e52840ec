"""Reed-Muller (subset-sum) transform and the coefficient table for syndrome rows.

With y = RM(x), i.e. ``y_k = sum of x_j over j that contain k bitwise``,
the sum ``sum_j (h'_j)^i x_j`` for h'_j = "bits of j read as a polynomial"
can be rewritten as ``sum_k c(i, k) y_k`` where c(i, k) only depends on the
indices.  Expanding (h'_j)^i as a product over the set bits a of i of
``sum_{t in bits(j)} x^(t * 2^a)`` and grouping the resulting tuples by the
set of t values they use gives c(i, k): the sum of x^(sum t_a 2^a) over tuples
whose value set is exactly bits(k).  Only k with popcount(k) <= popcount(i)
can appear.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..ring import RingElem, RingParams


def _bits(v: int) -> list[int]:
    return [a for a in range(v.bit_length()) if (v >> a) & 1]


def rm_transform(xs: Sequence[RingElem]) -> list[RingElem]:
    """Superset-sum butterfly; an involution over GF(2)."""
    n = len(xs)
    if n == 0 or n & (n - 1):
        raise ValueError(f"length must be a power of two, got {n}")
    ys = list(xs)
    step = 1
    while step < n:
        for i in range(n):
            if not i & step:
                ys[i] = ys[i] + ys[i + step]
        step <<= 1
    return ys


def butterfly_schedule(n0: int, wanted: set[int]) -> list[np.ndarray]:
    """Per stage, the low indices whose butterfly addition is actually needed.

    Working backwards: an index is needed after stage k if a wanted output
    reads it later; a needed low index at stage k also needs its partner.
    """
    n = 1 << n0
    needed = set(wanted)
    stages: list[np.ndarray] = [np.empty(0, dtype=np.intp)] * n0
    for k in reversed(range(n0)):
        step = 1 << k
        active = sorted(i for i in needed if not i & step)
        stages[k] = np.array(active, dtype=np.intp)
        needed |= {i + step for i in active}
    assert all(0 <= i < n for i in needed)
    return stages


def rm_transform_planes(x: np.ndarray, n0: int, wanted: set[int], support: int, ledger=None) -> np.ndarray:
    """In-place pruned butterfly on bit-sliced columns x[j] (shape (2^n0, rows, words)).

    ``support`` is the number of rows per column that may be nonzero; only
    those are charged.  Outputs outside ``wanted`` are left incomplete.
    """
    for k, low in enumerate(butterfly_schedule(n0, wanted)):
        if len(low):
            x[low] ^= x[low + (1 << k)]
            if ledger is not None:
                ledger.add("rm-transform", len(low) * support)
    return x


@dataclass(frozen=True)
class FijTable:
    """coeff[i][k] for 0 <= i < r, as exponent bit masks in F2[x]/(x^m + 1)."""

    params: RingParams
    r: int
    n0: int
    coeff: tuple[dict[int, int], ...]

    def terms(self, i: int) -> list[tuple[int, RingElem]]:
        return [(k, RingElem(v, self.params)) for k, v in sorted(self.coeff[i].items())]

    def f(self, i: int, k: int) -> RingElem:
        """Coefficient of y_k in row i for a k with at least two set bits."""
        if k.bit_count() < 2:
            raise ValueError("f(i, k) is defined for popcount(k) >= 2; use singleton()")
        return RingElem(self.coeff[i].get(k, 0), self.params)

    def singleton(self, i: int, t: int) -> RingElem:
        return RingElem(self.coeff[i].get(1 << t, 0), self.params)

    def needed_outputs(self) -> set[int]:
        return {k for row in self.coeff for k in row}

    def monomial_count(self, i: int) -> int:
        return sum(v.bit_count() for v in self.coeff[i].values())


def derive_fij(r: int, n0: int, params: RingParams) -> FijTable:
    if r < 1 or n0 < 0:
        raise ValueError("need r >= 1 and n0 >= 0")
    m = params.m
    n = 1 << n0
    rows: list[dict[int, int]] = [{0: 1}]
    for i in range(1, r):
        weights = [1 << a for a in _bits(i)]
        row: dict[int, int] = {}
        for k in range(1, n):
            support = _bits(k)
            if len(support) > len(weights):
                continue
            acc = 0
            for tup in itertools.product(support, repeat=len(weights)):
                if len(set(tup)) == len(support):
                    acc ^= 1 << (sum(t * w for t, w in zip(tup, weights)) % m)
            if acc:
                row[k] = acc
        rows.append(row)
    return FijTable(params, r, n0, tuple(rows))
