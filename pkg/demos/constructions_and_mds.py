"""
Building codes and checking MDS
===============================

Each builder returns a CodeSpec holding the ring parity-check matrix and its
binary image.  Two checks are available: a report against algebraic sufficient
conditions, and exhaustive rank testing of every erasure pattern.
"""

from ringcodes import (
    build_br,
    build_cauchy_vesip,
    build_generalized_rdp,
    build_vand_vesip_r4,
    build_vand_vetbr,
    check_mds_conditions,
    verify_mds_exhaustive,
)

specs = [
    build_vand_vetbr(5, 1, r=3, n0=3),
    build_vand_vesip_r4(11, 1, n1=2),
    build_cauchy_vesip(5, 1, r=2, n=3),
    build_generalized_rdp(7, 3),
    build_br(5, 3),
]

for spec in specs:
    print(spec.describe())
    print("  binary parity check:", spec.Hbin.shape)
    print("  ", check_mds_conditions(spec).summary().replace("\n", "\n   "))
    print("  exhaustive:", "MDS" if verify_mds_exhaustive(spec) else "not MDS")

# the generalized RDP family is not MDS for every (p, r)
rdp = build_generalized_rdp(7, 4)
print(rdp.describe(), "exhaustive:", "MDS" if verify_mds_exhaustive(rdp) else "not MDS")
