"""Encoding, decoding and syndrome computation with XOR accounting."""

from .erasure import DecodeError, ErasurePattern, decode, decode_planes, encode, encode_planes
from .ledger import XorLedger
from .syndrome import (
    MATVEC_THRESHOLD,
    CodewordArray,
    Syndrome,
    measure_xors,
    syndrome,
    syndrome_fast_vesip,
    syndrome_fast_vesip_planes,
    syndrome_fast_vetbr,
    syndrome_fast_vetbr_planes,
    syndrome_naive,
    syndrome_naive_planes,
    syndrome_planes,
)
from .transform import FijTable, derive_fij, rm_transform

__all__ = [
    "CodewordArray",
    "DecodeError",
    "ErasurePattern",
    "FijTable",
    "MATVEC_THRESHOLD",
    "Syndrome",
    "XorLedger",
    "decode",
    "decode_planes",
    "derive_fij",
    "encode",
    "encode_planes",
    "measure_xors",
    "rm_transform",
    "syndrome",
    "syndrome_fast_vesip",
    "syndrome_fast_vesip_planes",
    "syndrome_fast_vetbr",
    "syndrome_fast_vetbr_planes",
    "syndrome_naive",
    "syndrome_naive_planes",
    "syndrome_planes",
]
