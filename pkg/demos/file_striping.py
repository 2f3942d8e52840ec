"""
Striping a file into shards
===========================

Runs the command-line tool in-process: build a spec, encode a file into one
shard per column, lose some shards, and repair them.
"""

import os
import random
import tempfile
from pathlib import Path

from ringcodes.cli import main
from ringcodes.formats import shard_name

work = Path(tempfile.mkdtemp(prefix="ringcodes-"))
spec = work / "code.json"
main(["spec", "--family", "vand-vetbr", "--p", "11", "--r", "4", "--n0", "8", "--out", str(spec)])

src = work / "input.bin"
src.write_bytes(os.urandom(1 << 20))
main(["encode", str(spec), str(src), str(work / "shards")])

lost = sorted(random.sample(range(256), 4))
print("deleting shards", lost)
for j in lost:
    (work / "shards" / shard_name(j)).unlink()

main(["decode", str(spec), str(work / "shards"), str(work / "out.bin"), "--repair"])
print("identical:", (work / "out.bin").read_bytes() == src.read_bytes())
print("shards back:", all((work / "shards" / shard_name(j)).exists() for j in lost))
main(["bench", str(spec), "--trials", "1"])
