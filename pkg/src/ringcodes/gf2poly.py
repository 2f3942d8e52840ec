"""Polynomials over GF(2).

A polynomial is stored as a nonnegative Python int: bit k is the coefficient
of x^k.  Shifting by x is then a left shift and addition is XOR.  The zero
polynomial has degree ``NEG_INF`` so that ``deg(a*b) == deg(a) + deg(b)``
holds without special cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "NEG_INF",
    "NotInvertibleError",
    "Poly",
    "lambda_of",
    "poly_divmod",
    "poly_gcd",
    "poly_inv_mod",
    "poly_mul",
]

NEG_INF = -math.inf


class NotInvertibleError(ArithmeticError):
    """Raised when an inverse is requested for a non-unit; ``gcd`` is the witness."""

    def __init__(self, gcd: "Poly", message: str | None = None):
        self.gcd = gcd
        super().__init__(message or f"not invertible: gcd is {gcd}")


def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    out = 0
    while b:
        low = b & -b
        out ^= a << (low.bit_length() - 1)
        b ^= low
    return out


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


@dataclass(frozen=True, slots=True)
class Poly:
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("coefficient bits must be nonnegative")

    @classmethod
    def from_exponents(cls, exps) -> "Poly":
        v = 0
        for e in exps:
            v ^= 1 << e
        return cls(v)

    @classmethod
    def x(cls, k: int = 1) -> "Poly":
        return cls(1 << k)

    @property
    def degree(self):
        return self.bits.bit_length() - 1 if self.bits else NEG_INF

    def is_zero(self) -> bool:
        return self.bits == 0

    def exponents(self) -> list[int]:
        out, v = [], self.bits
        while v:
            low = v & -v
            out.append(low.bit_length() - 1)
            v ^= low
        return out

    def weight(self) -> int:
        return self.bits.bit_count()

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def __divmod__(self, other: "Poly"):
        return poly_divmod(self, other)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return poly_divmod(self, other)[1]

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = 1, self.bits
        while e:
            if e & 1:
                result = _clmul(result, base)
            e >>= 1
            if e:
                base = _clmul(base, base)
        return Poly(result)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for k in self.exponents():
            terms.append("1" if k == 0 else "x" if k == 1 else f"x^{k}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Poly({self})"


def poly_mul(a: Poly, b: Poly) -> Poly:
    return Poly(_clmul(a.bits, b.bits))


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Return ``(q, r)`` with ``a == q*b + r`` and ``deg r < deg b``."""
    q, r = _divmod(a.bits, b.bits)
    return Poly(q), Poly(r)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    u, v = a.bits, b.bits
    if u == 0 and v == 0:
        raise ValueError("gcd(0, 0) is undefined")
    while v:
        u, v = v, _divmod(u, v)[1]
    return Poly(u)


def poly_inv_mod(a: Poly, f: Poly) -> Poly:
    """Inverse of ``a`` modulo ``f`` by the extended Euclidean algorithm."""
    if f.bits < 2:
        raise ValueError("modulus must be nonconstant")
    r0, r1 = f.bits, _divmod(a.bits, f.bits)[1]
    s0, s1 = 0, 1
    while r1:
        q, rem = _divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 ^ _clmul(q, s1)
    if r0 != 1:
        raise NotInvertibleError(Poly(r0), f"{a} is not invertible modulo {f}: gcd is {Poly(r0)}")
    return Poly(_divmod(s0, f.bits)[1])


def lambda_of(p: int) -> int:
    """Smallest degree of an irreducible factor of 1 + x + ... + x^(p-1).

    The factors correspond to the 2-cyclotomic cosets of the nonzero
    residues mod p, so this is the size of the smallest such coset.
    """
    if isinstance(p, bool) or not isinstance(p, int) or p <= 1 or p % 2 == 0:
        raise ValueError(f"p must be an odd integer > 1, got {p!r}")
    best = p
    seen = set()
    for a in range(1, p):
        if a in seen:
            continue
        coset, b = [], a
        while b not in coset:
            coset.append(b)
            b = 2 * b % p
        seen.update(coset)
        best = min(best, len(coset))
    return best
