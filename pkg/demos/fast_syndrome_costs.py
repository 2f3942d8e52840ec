"""
Counting XORs in the syndrome
=============================

The fast path runs a Reed-Muller style butterfly over the data columns, then
combines the transformed columns with shifts and a few XORs.  The ledger counts
one XOR per bit of every vector added; shifts and copies are free.
"""

import numpy as np

from ringcodes import build_vand_vesip_r4, build_vand_vetbr, measure_xors
from ringcodes.codec import syndrome_fast_vetbr_planes, syndrome_naive_planes
from ringcodes.codec import planes as pl

print(f"{'code':38s} {'naive':>8s} {'fast':>8s} {'floor':>6s}")
for p, r, n0 in [(11, 3, 8), (11, 3, 10), (13, 4, 8), (11, 5, 8), (17, 8, 8)]:
    spec = build_vand_vetbr(p, 1, r, n0)
    naive = measure_xors(spec, "naive", 1)["xors_per_data_bit"]
    fast = measure_xors(spec, "fast", 1)["xors_per_data_bit"]
    print(f"{spec.describe():38s} {naive:8.3f} {fast:8.3f} {r.bit_length():6d}")

# n1 = 8 is past the MDS bound at p = 11; fine for counting
spec = build_vand_vesip_r4(11, 1, 8, check_bounds=False)
print("four-parity systematic, n1=8:", round(measure_xors(spec, "fast", 1)["xors_per_data_bit"], 3))

# per-phase breakdown
spec = build_vand_vetbr(11, 1, 3, 8)
print(measure_xors(spec, "fast", 1)["phases"])

# each bit lane of the uint64 planes is an independent codeword
x = pl.random_planes(np.random.default_rng(0), spec.total_cols, spec.row_size, 256)
print("fast == naive on 256 arrays:", np.array_equal(syndrome_fast_vetbr_planes(spec, x), syndrome_naive_planes(spec, x)))
