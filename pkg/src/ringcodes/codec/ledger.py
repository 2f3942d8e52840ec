"""XOR accounting.

Convention: a vector XOR costs the number of addend positions that can be
nonzero.  Copies, cyclic shifts and other permutations are free.  The first
term of a sum is a copy into the accumulator; every later term is counted
even where the accumulator is still zero.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

PHASES = ("rm-transform", "combine", "finish", "syndrome", "solve")


@dataclass
class XorLedger:
    counters: Counter = field(default_factory=Counter)

    def add(self, phase: str, count: int) -> None:
        if count < 0:
            raise ValueError("negative XOR count")
        self.counters[phase] += count

    @property
    def total(self) -> int:
        return sum(self.counters.values())

    def as_dict(self) -> dict[str, int]:
        return {k: int(self.counters.get(k, 0)) for k in PHASES if k in self.counters}

    def merged(self, other: "XorLedger") -> "XorLedger":
        return XorLedger(self.counters + other.counters)
