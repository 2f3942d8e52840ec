"""Binary MDS array codes over F2[x]/(1 + x^tau + ... + x^((p-1)tau))."""

from .binmat import BitMatrix, RingMatrix, mat_invert, mat_mul, mat_rank, mat_solve, submatrix_columns, tmap
from .codec import (
    CodewordArray,
    ErasurePattern,
    XorLedger,
    decode,
    decode_planes,
    encode,
    encode_planes,
    measure_xors,
    syndrome_fast_vesip,
    syndrome_fast_vetbr,
    syndrome_naive,
)
from .constructions import (
    CodeSpec,
    build_br,
    build_cauchy_vesip,
    build_custom,
    build_generalized_rdp,
    build_vand_vesip_r4,
    build_vand_vetbr,
    check_mds_conditions,
    verify_mds_exhaustive,
)
from .gf2poly import Poly, lambda_of
from .ring import RingElem, RingParams, circulant

__version__ = "0.1.0"
