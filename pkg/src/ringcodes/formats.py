"""On-disk formats: JSON spec files and binary column shards.

Shard layout (little-endian)::

    magic     4 bytes  b"VTBR"
    version   u16
    reserved  u16      zero
    digest    32 bytes SHA-256 of the binary parity-check matrix
    column    u32
    length    u64      true byte length of the striped input
    stripes   u64
    payload   stripes * ceil(row_size / 8) bytes

Each stripe contributes one column of ``row_size`` bits, packed LSB first
and zero padded to a whole byte.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .binmat import BitMatrix
from .constructions import (
    CodeSpec,
    build_br,
    build_cauchy_vesip,
    build_generalized_rdp,
    build_vand_vesip_r4,
    build_vand_vetbr,
)
from .gf2poly import Poly

SPEC_FORMAT = "ringcodes-spec"
SPEC_VERSION = 1
SHARD_MAGIC = b"VTBR"
SHARD_VERSION = 1
_HEADER = struct.Struct("<4sHH32sIQQ")
HEADER_SIZE = _HEADER.size


class FormatError(ValueError):
    pass


class DigestMismatch(FormatError):
    pass


def hbin_digest(h: BitMatrix) -> str:
    width = (h.ncols + 7) // 8
    d = hashlib.sha256(f"{h.nrows}x{h.ncols}\n".encode())
    for row in h.rows:
        d.update(row.to_bytes(width, "little"))
    return d.hexdigest()


# -- spec files ----------------------------------------------------------------

def build_spec(family: str, p: int, tau: int = 1, r: int | None = None, n0: int | None = None,
               n1: int | None = None, n: int | None = None, a_list=None, b_list=None,
               check_bounds: bool = True) -> CodeSpec:
    def need(name, value):
        if value is None:
            raise ValueError(f"family {family} needs --{name.replace('_', '-')}")
        return value

    if family == "vand-vetbr":
        return build_vand_vetbr(p, tau, need("r", r), need("n0", n0), check_bounds=check_bounds)
    if family == "vand-vesip4":
        if r not in (None, 4):
            raise ValueError("vand-vesip4 always has r = 4")
        return build_vand_vesip_r4(p, tau, need("n1", n1), check_bounds=check_bounds)
    if family == "cauchy-vesip":
        return build_cauchy_vesip(p, tau, need("r", r), need("n", n), a_list, b_list)
    if family in ("gen-rdp", "br"):
        if tau != 1:
            raise ValueError(f"{family} is defined for tau = 1 only")
        builder = build_generalized_rdp if family == "gen-rdp" else build_br
        return builder(p, need("r", r))
    raise ValueError(f"unknown family {family!r}")


def spec_to_dict(spec: CodeSpec) -> dict:
    doc = {
        "format": SPEC_FORMAT,
        "version": SPEC_VERSION,
        "family": spec.family,
        "p": spec.params.p,
        "tau": spec.params.tau,
        "r": spec.r,
    }
    if spec.family == "vand-vetbr":
        doc["n0"] = spec.n0
    elif spec.family == "vand-vesip4":
        doc["n1"] = spec.n1
    elif spec.family == "cauchy-vesip":
        doc["n"] = spec.n
        doc["a_list"] = [format(a.bits, "x") for a in spec.a_list]
        doc["b_list"] = [format(b.bits, "x") for b in spec.b_list]
    elif spec.family not in ("gen-rdp", "br"):
        raise FormatError(f"family {spec.family} cannot be serialized")
    if not spec.bounds_checked:
        doc["check_bounds"] = False
    doc["total_cols"] = spec.total_cols
    doc["row_size"] = spec.row_size
    doc["hbin_sha256"] = hbin_digest(spec.Hbin)
    return doc


def spec_from_dict(doc: dict) -> CodeSpec:
    if doc.get("format") != SPEC_FORMAT or doc.get("version") != SPEC_VERSION:
        raise FormatError("not a version-1 spec file")
    hexes = lambda key: [Poly(int(v, 16)) for v in doc[key]] if key in doc else None
    spec = build_spec(doc["family"], doc["p"], doc.get("tau", 1), doc.get("r"), doc.get("n0"),
                      doc.get("n1"), doc.get("n"), hexes("a_list"), hexes("b_list"),
                      doc.get("check_bounds", True))
    digest = hbin_digest(spec.Hbin)
    if "hbin_sha256" in doc and doc["hbin_sha256"] != digest:
        raise DigestMismatch("rebuilt parity-check matrix does not match the recorded digest")
    return spec


def write_spec(spec: CodeSpec, path: Path) -> None:
    Path(path).write_text(json.dumps(spec_to_dict(spec), indent=2) + "\n")


def read_spec(path: Path) -> CodeSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not JSON ({exc})") from exc
    return spec_from_dict(doc)


# -- shard files -----------------------------------------------------------------

@dataclass(frozen=True)
class ShardHeader:
    digest: bytes
    column: int
    length: int
    stripes: int
    version: int = SHARD_VERSION

    def pack(self) -> bytes:
        return _HEADER.pack(SHARD_MAGIC, self.version, 0, self.digest, self.column, self.length, self.stripes)

    @classmethod
    def unpack(cls, raw: bytes, name: str = "shard") -> "ShardHeader":
        if len(raw) < HEADER_SIZE:
            raise FormatError(f"{name}: truncated header")
        magic, version, _, digest, column, length, stripes = _HEADER.unpack_from(raw)
        if magic != SHARD_MAGIC:
            raise FormatError(f"{name}: bad magic {magic!r}")
        if version != SHARD_VERSION:
            raise FormatError(f"{name}: unsupported version {version}")
        return cls(digest, column, length, stripes, version)


def shard_name(column: int) -> str:
    return f"col{column:04d}.vtbr"


def column_bytes(row_size: int) -> int:
    return (row_size + 7) // 8


# -- bit slicing between byte streams and codeword batches -------------------------

def stripes_to_planes(bits: np.ndarray, ncols: int, row_size: int) -> np.ndarray:
    """``bits`` is (stripes, ncols*row_size) uint8; returns (ncols, row_size, words) uint64."""
    count = bits.shape[0]
    lanes = -(-count // 64) * 64
    cube = np.zeros((ncols, row_size, lanes), dtype=np.uint8)
    cube[:, :, :count] = bits.reshape(count, ncols, row_size).transpose(1, 2, 0)
    packed = np.packbits(cube, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False)


def planes_to_stripes(planes: np.ndarray, count: int) -> np.ndarray:
    """Inverse of ``stripes_to_planes``: returns (stripes, ncols*row_size) uint8."""
    ncols, row_size, _ = planes.shape
    raw = np.ascontiguousarray(planes.astype("<u8", copy=False)).view(np.uint8)
    bits = np.unpackbits(raw, axis=-1, bitorder="little")[:, :, :count]
    return bits.transpose(2, 0, 1).reshape(count, ncols * row_size)


def column_payload(planes_col: np.ndarray, count: int) -> bytes:
    """One column over ``count`` stripes as shard payload bytes."""
    row_size = planes_col.shape[0]
    bits = planes_to_stripes(planes_col[None], count)  # (count, row_size)
    padded = np.zeros((count, column_bytes(row_size) * 8), dtype=np.uint8)
    padded[:, :row_size] = bits
    return np.packbits(padded, axis=-1, bitorder="little").tobytes()


def payload_to_planes(payload: bytes, count: int, row_size: int) -> np.ndarray:
    """Shard payload for ``count`` stripes back into a (row_size, words) plane block."""
    width = column_bytes(row_size)
    if len(payload) != count * width:
        raise FormatError(f"payload holds {len(payload)} bytes, expected {count * width}")
    arr = np.frombuffer(payload, dtype=np.uint8).reshape(count, width)
    bits = np.unpackbits(arr, axis=-1, bitorder="little")[:, :row_size]
    return stripes_to_planes(np.ascontiguousarray(bits), 1, row_size)[0]
