import json

import numpy as np
import pytest

from ringcodes.cli import (
    EXIT_DECODE,
    EXIT_IO,
    EXIT_NOT_MDS,
    EXIT_OK,
    EXIT_USAGE,
    bench_report,
    main,
)
from ringcodes.constructions import MAX_PATTERNS_ENV, build_br, build_vand_vetbr
from ringcodes.formats import (
    HEADER_SIZE,
    DigestMismatch,
    FormatError,
    ShardHeader,
    build_spec,
    hbin_digest,
    read_spec,
    shard_name,
    spec_from_dict,
    spec_to_dict,
    write_spec,
)
from ringcodes.gf2poly import Poly


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def small_spec(tmp_path):
    # p=5, n0=3, r=3: 8 columns, 5 data, row size 4 -> 20-bit stripes
    path = tmp_path / "code.json"
    write_spec(build_spec("vand-vetbr", 5, r=3, n0=3), path)
    return path


def encode_file(capsys, spec_path, tmp_path, payload: bytes):
    src = tmp_path / "input.bin"
    src.write_bytes(payload)
    shards = tmp_path / "shards"
    code, _, err = run(capsys, "encode", spec_path, src, shards)
    assert code == EXIT_OK, err
    return shards


# -- spec ----------------------------------------------------------------------------

def test_spec_vandermonde_column_count(capsys, tmp_path):
    code, out, _ = run(capsys, "spec", "--family", "vand-vetbr", "--p", 11, "--tau", 1, "--r", 3,
                       "--n0", 8, "--out", tmp_path / "s.json")
    assert code == EXIT_OK
    assert "columns: 256" in out and "row size: 10" in out
    assert read_spec(tmp_path / "s.json").total_cols == 256


def test_spec_gen_rdp_column_count(capsys):
    code, out, _ = run(capsys, "spec", "--family", "gen-rdp", "--p", 5, "--r", 3)
    assert code == EXIT_OK
    assert "columns: 7" in out


def test_spec_rejects_n0_beyond_lambda(capsys):
    code, _, err = run(capsys, "spec", "--family", "vand-vetbr", "--p", 11, "--r", 3, "--n0", 11)
    assert code == EXIT_USAGE
    assert "n0 exceeds λ=10" in err


def test_spec_bad_arguments_are_usage_errors(capsys):
    assert run(capsys, "spec", "--family", "nope", "--p", 5)[0] == EXIT_USAGE
    assert run(capsys, "spec", "--family", "br", "--p", 9, "--r", 2)[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE


def test_spec_unchecked_allows_cost_study_shapes(capsys):
    code, out, _ = run(capsys, "spec", "--family", "vand-vesip4", "--p", 11, "--n1", 8, "--unchecked", "--no-check")
    assert code == EXIT_OK
    assert "not guaranteed MDS" in out


@pytest.mark.parametrize("family,kw", [
    ("vand-vetbr", dict(r=4, n0=3, tau=2)),
    ("vand-vesip4", dict(n1=1)),
    ("cauchy-vesip", dict(r=2, n=3)),
    ("cauchy-vesip", dict(r=2, n=2, a_list=[Poly(0b11), Poly(0b101)], b_list=[Poly(0b110)])),
    ("gen-rdp", dict(r=3)),
    ("br", dict(r=2)),
])
def test_spec_file_round_trip(tmp_path, family, kw):
    spec = build_spec(family, 5, **kw)
    path = tmp_path / "s.json"
    write_spec(spec, path)
    back = read_spec(path)
    assert back.family == spec.family
    assert back.Hbin == spec.Hbin
    assert hbin_digest(back.Hbin) == hbin_digest(spec.Hbin)


def test_spec_file_digest_mismatch_detected():
    doc = spec_to_dict(build_spec("vand-vetbr", 5, r=2, n0=2))
    doc["hbin_sha256"] = "0" * 64
    with pytest.raises(DigestMismatch):
        spec_from_dict(doc)


def test_spec_file_is_plain_json(tmp_path):
    path = tmp_path / "s.json"
    write_spec(build_spec("br", 5, r=3), path)
    doc = json.loads(path.read_text())
    assert doc["format"] == "ringcodes-spec" and doc["family"] == "br" and doc["p"] == 5


# -- shard format --------------------------------------------------------------------

def test_shard_header_round_trip():
    h = ShardHeader(bytes(range(32)), 7, 12345, 99)
    raw = h.pack()
    assert len(raw) == HEADER_SIZE and raw[:4] == b"VTBR"
    assert ShardHeader.unpack(raw + b"tail", "x") == h


def test_shard_header_rejects_garbage():
    with pytest.raises(FormatError, match="truncated"):
        ShardHeader.unpack(b"VT", "col0000.vtbr")
    raw = bytearray(ShardHeader(bytes(32), 0, 0, 0).pack())
    raw[0:4] = b"XXXX"
    with pytest.raises(FormatError, match="col0000.vtbr"):
        ShardHeader.unpack(bytes(raw), "col0000.vtbr")


@pytest.mark.parametrize("length", [0, 1, 4, 5, 6, 137])
def test_encode_decode_round_trip_lengths(capsys, tmp_path, small_spec, length):
    # stripe is 20 bits, so 4/5/6 bytes straddle stripe boundaries the byte grid allows
    payload = np.random.default_rng(length).integers(0, 256, length, dtype=np.uint8).tobytes()
    shards = encode_file(capsys, small_spec, tmp_path, payload)
    assert len(list(shards.iterdir())) == 8
    out = tmp_path / "out.bin"
    code, _, err = run(capsys, "decode", small_spec, shards, out)
    assert code == EXIT_OK, err
    assert out.read_bytes() == payload


@pytest.mark.parametrize("delta", [-1, 0, 1])
def test_round_trip_around_stripe_size(capsys, tmp_path, delta):
    # 6 data columns x 4 bits = exactly 3 bytes per stripe
    path = tmp_path / "code.json"
    write_spec(build_spec("vand-vetbr", 5, r=2, n0=3), path)
    assert read_spec(path).data_cols * read_spec(path).row_size == 24
    payload = bytes(range(1, 4 + delta))
    shards = encode_file(capsys, path, tmp_path, payload)
    out = tmp_path / "out.bin"
    assert run(capsys, "decode", path, shards, out, "--missing", "0,3")[0] == EXIT_OK
    assert out.read_bytes() == payload


def test_empty_file_gives_valid_headers(capsys, tmp_path, small_spec):
    shards = encode_file(capsys, small_spec, tmp_path, b"")
    raw = (shards / shard_name(3)).read_bytes()
    header = ShardHeader.unpack(raw, "x")
    assert (header.column, header.length, header.stripes) == (3, 0, 0)
    assert len(raw) == HEADER_SIZE


def test_repair_restores_identical_shards(capsys, tmp_path, small_spec):
    payload = bytes(range(256)) * 3
    shards = encode_file(capsys, small_spec, tmp_path, payload)
    lost = [0, 4, 7]
    originals = {j: (shards / shard_name(j)).read_bytes() for j in lost}
    for j in lost:
        (shards / shard_name(j)).unlink()
    out = tmp_path / "out.bin"
    code, stdout, _ = run(capsys, "decode", small_spec, shards, out, "--repair")
    assert code == EXIT_OK and "repaired" in stdout
    assert out.read_bytes() == payload
    for j in lost:
        assert (shards / shard_name(j)).read_bytes() == originals[j]


def test_missing_flag_overrides_present_shards(capsys, tmp_path, small_spec):
    payload = b"forced erasures" * 9
    shards = encode_file(capsys, small_spec, tmp_path, payload)
    # clobber shards that --missing tells the decoder to ignore
    for j in (1, 2, 6):
        (shards / shard_name(j)).write_bytes(b"junk")
    out = tmp_path / "out.bin"
    assert run(capsys, "decode", small_spec, shards, out, "--missing", "1,2,6")[0] == EXIT_OK
    assert out.read_bytes() == payload
    assert run(capsys, "decode", small_spec, shards, out, "--missing", "99")[0] == EXIT_USAGE


def test_corrupt_magic_names_the_shard(capsys, tmp_path, small_spec):
    shards = encode_file(capsys, small_spec, tmp_path, b"abc")
    path = shards / shard_name(2)
    path.write_bytes(b"NOPE" + path.read_bytes()[4:])
    code, _, err = run(capsys, "decode", small_spec, shards, tmp_path / "o")
    assert code == EXIT_IO
    assert shard_name(2) in err


def test_insufficient_shards(capsys, tmp_path, small_spec):
    shards = encode_file(capsys, small_spec, tmp_path, b"abcdef")
    for j in range(4):
        (shards / shard_name(j)).unlink()
    code, _, err = run(capsys, "decode", small_spec, shards, tmp_path / "o")
    assert code == EXIT_DECODE
    assert "insufficient shards" in err


def test_shards_from_another_spec_are_rejected(capsys, tmp_path, small_spec):
    shards = encode_file(capsys, small_spec, tmp_path, b"abcdef")
    other = tmp_path / "other.json"
    write_spec(build_spec("vand-vetbr", 5, r=2, n0=3), other)
    code, _, err = run(capsys, "decode", other, shards, tmp_path / "o")
    assert code == EXIT_DECODE
    assert "digest" in err


def test_tampered_shard_is_a_decode_error(capsys, tmp_path, small_spec):
    shards = encode_file(capsys, small_spec, tmp_path, bytes(40))
    path = shards / shard_name(5)
    raw = bytearray(path.read_bytes())
    raw[HEADER_SIZE] ^= 1
    path.write_bytes(bytes(raw))
    code, _, err = run(capsys, "decode", small_spec, shards, tmp_path / "o", "--missing", "0")
    assert code == EXIT_DECODE
    assert "inconsistent" in err


def test_io_errors(capsys, tmp_path, small_spec):
    assert run(capsys, "encode", small_spec, tmp_path / "absent", tmp_path / "s")[0] == EXIT_IO
    assert run(capsys, "verify", tmp_path / "absent.json")[0] == EXIT_IO
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", bad)[0] != EXIT_OK


# -- verify --------------------------------------------------------------------------

def test_verify_modes(capsys, tmp_path, small_spec):
    assert run(capsys, "verify", small_spec, "--mode", "conditions")[0] == EXIT_OK
    code, out, _ = run(capsys, "verify", small_spec, "--mode", "exhaustive")
    assert code == EXIT_OK and "MDS" in out
    rdp = tmp_path / "rdp.json"
    write_spec(build_spec("gen-rdp", 7, r=4), rdp)
    code, out, _ = run(capsys, "verify", rdp, "--mode", "exhaustive")
    assert code == EXIT_NOT_MDS and "NOT MDS" in out


def test_verify_pattern_guard(capsys, monkeypatch, small_spec):
    monkeypatch.setenv(MAX_PATTERNS_ENV, "10")
    code, _, err = run(capsys, "verify", small_spec, "--mode", "exhaustive")
    assert code == EXIT_USAGE
    assert MAX_PATTERNS_ENV in err or "patterns" in err


# -- bench ---------------------------------------------------------------------------

def test_bench_vandermonde_report(capsys, tmp_path):
    spec = tmp_path / "v.json"
    report = tmp_path / "r.json"
    write_spec(build_vand_vetbr(11, 1, 5, 8), spec)
    code, _, _ = run(capsys, "bench", spec, "--mode", "fast", "--trials", 1, "--report", report)
    assert code == EXIT_OK
    doc = json.loads(report.read_text())
    assert doc["xors_per_data_bit"] == pytest.approx(3.145, rel=0.02)
    assert doc["theoretical"] == 3
    assert set(doc["phases"]) >= {"rm-transform", "combine", "finish"}
    assert doc["throughput_mb_per_s"] > 0


def test_bench_br_baseline(capsys, tmp_path):
    spec = tmp_path / "br.json"
    write_spec(build_br(5, 2), spec)
    code, out, _ = run(capsys, "bench", spec, "--mode", "naive", "--trials", 1)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["baseline"]["tag"] == "naive-matrix-product"
    assert "theoretical" not in doc


def test_bench_fast_needs_vandermonde(capsys, tmp_path):
    spec = tmp_path / "br.json"
    write_spec(build_br(5, 2), spec)
    assert run(capsys, "bench", spec, "--mode", "fast")[0] == EXIT_USAGE
    with pytest.raises(ValueError):
        bench_report(build_br(5, 2), "fast", 1)


def test_bench_report_keys_are_stable():
    doc = bench_report(build_vand_vetbr(5, 1, 2, 2), "naive", 1, lanes=64)
    assert set(doc) == {"family", "params", "total_cols", "row_size", "mode", "trials", "phases",
                        "total_xors", "xors_per_data_bit", "throughput_mb_per_s", "theoretical"}
