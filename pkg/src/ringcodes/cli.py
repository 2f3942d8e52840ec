"""Command-line front end.

    ringcodes spec   --family vand-vetbr --p 11 --r 3 --n0 8 --out code.json
    ringcodes encode code.json input.bin shards/
    ringcodes decode code.json shards/ output.bin [--missing 0,5] [--repair]
    ringcodes verify code.json --mode exhaustive|conditions
    ringcodes bench  code.json --mode fast|naive --trials 3 --report report.json

Exit status: 0 success, 1 verification found the code not MDS, 2 usage or
parameter error, 3 I/O or file-format error, 4 decode failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from .codec import DecodeError, ErasurePattern, decode_planes, encode_planes, measure_xors, syndrome_planes
from .codec import planes as pl
from .constructions import (
    FAMILIES,
    PatternLimitError,
    check_mds_conditions,
    max_patterns_limit,
    verify_mds_exhaustive,
)
from .formats import (
    HEADER_SIZE,
    DigestMismatch,
    FormatError,
    ShardHeader,
    build_spec,
    column_bytes,
    column_payload,
    hbin_digest,
    payload_to_planes,
    planes_to_stripes,
    read_spec,
    shard_name,
    stripes_to_planes,
    write_spec,
)
from .gf2poly import Poly

EXIT_OK = 0
EXIT_NOT_MDS = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DECODE = 4

CHUNK_STRIPES = 1 << 15
FAST_FAMILIES = ("vand-vetbr", "vand-vesip4")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _hex_list(text: str | None):
    if text is None:
        return None
    return [Poly(int(v, 16)) for v in text.split(",") if v.strip()]


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _load_spec(path):
    try:
        return read_spec(Path(path))
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read spec {path}: {exc}") from exc
    except FormatError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(EXIT_USAGE, f"invalid spec {path}: {exc}") from exc


def cmd_spec(args) -> int:
    try:
        spec = build_spec(args.family, args.p, args.tau, args.r, args.n0, args.n1, args.n,
                          _hex_list(args.a), _hex_list(args.b), check_bounds=not args.unchecked)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc
    if args.out:
        try:
            write_spec(spec, Path(args.out))
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot write {args.out}: {exc}") from exc
    print(spec.describe())
    print(f"columns: {spec.total_cols} ({spec.data_cols} data, {spec.r} parity)")
    print(f"row size: {spec.row_size} bits")
    print(f"digest: {hbin_digest(spec.Hbin)}")
    if not spec.bounds_checked:
        print("note: built without parameter bounds; not guaranteed MDS")
    if not args.no_check:
        print(check_mds_conditions(spec).summary())
    return EXIT_OK


def _stripe_geometry(spec):
    return spec.data_cols * spec.row_size


def cmd_encode(args) -> int:
    spec = _load_spec(args.spec)
    try:
        data = Path(args.input).read_bytes()
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc
    stripe_bits = _stripe_geometry(spec)
    nstripes = -(-len(data) * 8 // stripe_bits)
    bits = np.zeros(nstripes * stripe_bits, dtype=np.uint8)
    bits[: len(data) * 8] = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    bits = bits.reshape(nstripes, stripe_bits)
    parts: list[list[bytes]] = [[] for _ in range(spec.total_cols)]
    for start in range(0, nstripes, CHUNK_STRIPES):
        stop = min(start + CHUNK_STRIPES, nstripes)
        batch = stripes_to_planes(bits[start:stop], spec.data_cols, spec.row_size)
        full = encode_planes(spec, batch)
        for j in range(spec.total_cols):
            parts[j].append(column_payload(full[j], stop - start))
    digest = bytes.fromhex(hbin_digest(spec.Hbin))
    try:
        for j in range(spec.total_cols):
            header = ShardHeader(digest, j, len(data), nstripes)
            (out_dir / shard_name(j)).write_bytes(header.pack() + b"".join(parts[j]))
    except OSError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc
    print(f"wrote {spec.total_cols} shards, {nstripes} stripes, {len(data)} bytes")
    return EXIT_OK


def _read_shards(spec, shard_dir: Path, forced_missing: set[int]):
    digest = bytes.fromhex(hbin_digest(spec.Hbin))
    present: dict[int, bytes] = {}
    meta = None
    for j in range(spec.total_cols):
        path = shard_dir / shard_name(j)
        if j in forced_missing or not path.exists():
            continue
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise CliError(EXIT_IO, f"{path}: {exc}") from exc
        try:
            header = ShardHeader.unpack(raw, str(path))
        except FormatError as exc:
            raise CliError(EXIT_IO, str(exc)) from exc
        if header.digest != digest:
            raise CliError(EXIT_DECODE, f"{path}: spec digest does not match")
        if header.column != j:
            raise CliError(EXIT_DECODE, f"{path}: header names column {header.column}")
        if meta is None:
            meta = (header.length, header.stripes)
        elif meta != (header.length, header.stripes):
            raise CliError(EXIT_DECODE, f"{path}: length or stripe count disagrees with other shards")
        payload = raw[HEADER_SIZE:]
        if len(payload) != header.stripes * column_bytes(spec.row_size):
            raise CliError(EXIT_IO, f"{path}: payload size does not match the header")
        present[j] = payload
    missing = [j for j in range(spec.total_cols) if j not in present]
    if len(missing) > spec.r:
        raise CliError(EXIT_DECODE, f"insufficient shards: {len(missing)} missing, at most {spec.r} recoverable")
    return present, missing, meta


def cmd_decode(args) -> int:
    spec = _load_spec(args.spec)
    shard_dir = Path(args.shard_dir)
    forced = set(_int_list(args.missing)) if args.missing else set()
    bad = [j for j in forced if not 0 <= j < spec.total_cols]
    if bad:
        raise CliError(EXIT_USAGE, f"--missing names columns outside [0, {spec.total_cols}): {bad}")
    present, missing, meta = _read_shards(spec, shard_dir, forced)
    length, nstripes = meta
    width = column_bytes(spec.row_size)
    pattern = ErasurePattern(missing)
    data_parts = []
    repaired: dict[int, list[bytes]] = {j: [] for j in missing}
    for start in range(0, nstripes, CHUNK_STRIPES):
        stop = min(start + CHUNK_STRIPES, nstripes)
        count = stop - start
        words = -(-count // 64)
        batch = np.zeros((spec.total_cols, spec.row_size, words), dtype=np.uint64)
        for j, payload in present.items():
            batch[j] = payload_to_planes(payload[start * width: stop * width], count, spec.row_size)
        try:
            full = decode_planes(spec, batch, pattern)
        except DecodeError as exc:
            raise CliError(EXIT_DECODE, str(exc)) from exc
        data_parts.append(planes_to_stripes(full[: spec.data_cols], count))
        for j in missing:
            repaired[j].append(column_payload(full[j], count))
    bits = np.concatenate(data_parts).ravel() if data_parts else np.zeros(0, dtype=np.uint8)
    out = np.packbits(bits[: length * 8], bitorder="little").tobytes()
    try:
        Path(args.out_file).write_bytes(out)
        if args.repair:
            digest = bytes.fromhex(hbin_digest(spec.Hbin))
            for j, parts in repaired.items():
                header = ShardHeader(digest, j, length, nstripes)
                (shard_dir / shard_name(j)).write_bytes(header.pack() + b"".join(parts))
    except OSError as exc:
        raise CliError(EXIT_IO, str(exc)) from exc
    note = f", repaired columns {missing}" if args.repair and missing else ""
    print(f"recovered {length} bytes from {len(present)} shards{note}")
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _load_spec(args.spec)
    if args.mode == "conditions":
        report = check_mds_conditions(spec)
        print(report.summary())
        return EXIT_OK if report.passed else EXIT_NOT_MDS
    try:
        ok = verify_mds_exhaustive(spec, max_patterns_limit())
    except PatternLimitError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc
    print(f"exhaustive: {'MDS' if ok else 'NOT MDS'} ({math.comb(spec.total_cols, spec.r)} patterns)")
    return EXIT_OK if ok else EXIT_NOT_MDS


def bench_report(spec, mode: str, trials: int, lanes: int = 4096) -> dict:
    if mode == "fast" and spec.family not in FAST_FAMILIES:
        raise ValueError(f"fast mode is only available for {', '.join(FAST_FAMILIES)}")
    m = measure_xors(spec, mode, trials)
    rng = np.random.default_rng(1)
    batch = pl.random_planes(rng, spec.total_cols, spec.row_size, lanes)
    start = time.perf_counter()
    syndrome_planes(spec, batch, mode=mode)
    elapsed = max(time.perf_counter() - start, 1e-9)
    report = {
        "family": spec.family,
        "params": {k: v for k, v in (("p", spec.params.p), ("tau", spec.params.tau), ("r", spec.r),
                                     ("n", spec.n), ("n0", spec.n0), ("n1", spec.n1)) if v is not None},
        "total_cols": spec.total_cols,
        "row_size": spec.row_size,
        "mode": mode,
        "trials": trials,
        "phases": m["phases"],
        "total_xors": m["total_xors"],
        "xors_per_data_bit": round(m["xors_per_data_bit"], 6),
        "throughput_mb_per_s": round(lanes * m["data_bits"] / 8 / elapsed / 1e6, 3),
    }
    if spec.family in FAST_FAMILIES:
        report["theoretical"] = spec.r.bit_length()
    if spec.family in ("br", "gen-rdp"):
        base = measure_xors(spec, "naive", 1)
        report["baseline"] = {"tag": "naive-matrix-product",
                              "xors_per_data_bit": round(base["xors_per_data_bit"], 6)}
    return report


def cmd_bench(args) -> int:
    spec = _load_spec(args.spec)
    try:
        report = bench_report(spec, args.mode, args.trials)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.report:
        try:
            Path(args.report).write_text(text + "\n")
        except OSError as exc:
            raise CliError(EXIT_IO, str(exc)) from exc
    print(text)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ringcodes", description="Binary MDS array codes over polynomial rings.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spec", help="build a code and write its spec file")
    sp.add_argument("--family", required=True, choices=[f for f in FAMILIES if not f.startswith("custom")])
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--tau", type=int, default=1)
    sp.add_argument("--r", type=int)
    sp.add_argument("--n0", type=int)
    sp.add_argument("--n1", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--a", help="comma-separated hex coefficient strings")
    sp.add_argument("--b", help="comma-separated hex coefficient strings")
    sp.add_argument("--unchecked", action="store_true", help="skip n0/n1 bounds (cost studies only)")
    sp.add_argument("--no-check", action="store_true", help="skip the MDS condition report")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_spec)

    sp = sub.add_parser("encode", help="stripe a file into column shards")
    sp.add_argument("spec")
    sp.add_argument("input")
    sp.add_argument("out_dir")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="rebuild a file from surviving shards")
    sp.add_argument("spec")
    sp.add_argument("shard_dir")
    sp.add_argument("out_file")
    sp.add_argument("--missing", help="comma-separated column indices to treat as lost")
    sp.add_argument("--repair", action="store_true", help="rewrite the lost shard files")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("verify", help="check that a spec is MDS")
    sp.add_argument("spec")
    sp.add_argument("--mode", choices=["exhaustive", "conditions"], default="conditions")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="count syndrome XORs")
    sp.add_argument("spec")
    sp.add_argument("--mode", choices=["fast", "naive"], default="fast")
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
