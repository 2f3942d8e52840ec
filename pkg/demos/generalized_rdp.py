"""
Generalized RDP as a ring code
==============================

The row and diagonal parity equations of generalized RDP produce the same
parity columns as the systematic ring code with h_ij = x^(-i*j).
"""

import random

from ringcodes import build_generalized_rdp, encode

p, r = 5, 3
spec = build_generalized_rdp(p, r)
q = spec.row_size
rnd = random.Random(1)
data = [rnd.getrandbits(q) for _ in range(p - 1)]


def bit(col, i):
    return (col >> i) & 1 if i < q else 0


# row parity, then diagonals over the first p columns; row p-1 is imaginary
row = [0] * p
for col in data:
    for i in range(q):
        row[i] ^= bit(col, i)
cols = data + [sum(b << i for i, b in enumerate(row[:q]))]
parity = [cols[p - 1]]
for j in range(1, r):
    v = 0
    for i in range(q):
        acc = 0
        for l in range(p):
            acc ^= bit(cols[l], (i - j * l) % p)
        v |= acc << i
    parity.append(v)

cw = encode(spec, data)
for j, col in enumerate(cw.columns):
    print(f"col {j}: " + "".join(str(bit(col, i)) for i in range(q)))
print("matches the parity equations:", list(cw.columns[p - 1:]) == parity)
