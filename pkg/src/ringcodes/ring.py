"""Arithmetic in F2[x]/(x^m + 1) and in the quotient F2[x]/f_{p,tau}.

With m = p*tau, multiplication by x in the big ring is a cyclic shift of the
m coefficient bits.  The quotient modulus f_{p,tau} = 1 + x^tau + ... +
x^{(p-1)tau} divides x^m + 1, so quotient arithmetic can be carried out in the
big ring and reduced at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .binmat import BitMatrix
from .gf2poly import Poly, poly_divmod, poly_inv_mod

__all__ = [
    "RingElem",
    "RingParams",
    "circulant",
    "quotient_inv",
    "reduce_to_quotient",
    "ring_mul",
    "rotate",
]


def rotate(bits: int, k: int, m: int) -> int:
    """Multiply an m-bit ring element by x^k (cyclic left rotation)."""
    k %= m
    if k == 0:
        return bits
    mask = (1 << m) - 1
    return ((bits << k) | (bits >> (m - k))) & mask


def _fold(bits: int, m: int) -> int:
    mask = (1 << m) - 1
    while bits >> m:
        bits = (bits & mask) ^ (bits >> m)
    return bits


@dataclass(frozen=True)
class RingParams:
    p: int
    tau: int = 1

    def __post_init__(self):
        p, tau = self.p, self.tau
        if isinstance(p, bool) or not isinstance(p, int) or p <= 1 or p % 2 == 0:
            raise ValueError(f"p must be an odd integer > 1, got {p!r}")
        if isinstance(tau, bool) or not isinstance(tau, int) or tau < 1 or tau & (tau - 1):
            raise ValueError(f"tau must be a power of two, got {tau!r}")
        f = Poly.from_exponents(k * tau for k in range(p))
        if f != Poly.from_exponents(range(p)) ** tau:
            raise AssertionError("f_{p,tau} != f_{p,1}^tau")
        object.__setattr__(self, "_modulus", f)

    @property
    def m(self) -> int:
        return self.p * self.tau

    @property
    def s(self) -> int:
        return self.tau.bit_length() - 1

    @property
    def row_size(self) -> int:
        """Bits per codeword column, m - tau."""
        return self.m - self.tau

    @property
    def modulus(self) -> Poly:
        """f_{p,tau}."""
        return self._modulus

    @property
    def cycle(self) -> Poly:
        """x^m + 1."""
        return Poly((1 << self.m) | 1)

    def elem(self, value) -> "RingElem":
        """Coerce an int, Poly or RingElem into this ring."""
        if isinstance(value, RingElem):
            if value.params != self:
                raise ValueError("ring parameters differ")
            return value
        bits = value.bits if isinstance(value, Poly) else int(value)
        return RingElem(_fold(bits, self.m), self)

    def zero(self) -> "RingElem":
        return RingElem(0, self)

    def one(self) -> "RingElem":
        return RingElem(1, self)

    def monomial(self, k: int) -> "RingElem":
        return RingElem(1 << (k % self.m), self)


@dataclass(frozen=True)
class RingElem:
    bits: int
    params: RingParams

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.params.m:
            raise ValueError(f"element does not fit in m={self.params.m} bits")

    @property
    def poly(self) -> Poly:
        return Poly(self.bits)

    def is_zero(self) -> bool:
        return self.bits == 0

    def shifted(self, k: int) -> "RingElem":
        return RingElem(rotate(self.bits, k, self.params.m), self.params)

    def coeff(self, k: int) -> int:
        return (self.bits >> (k % self.params.m)) & 1

    def __add__(self, other: "RingElem") -> "RingElem":
        if self.params != other.params:
            raise ValueError("ring parameters differ")
        return RingElem(self.bits ^ other.bits, self.params)

    __sub__ = __add__

    def __mul__(self, other: "RingElem") -> "RingElem":
        return ring_mul(self, other)

    def __pow__(self, e: int) -> "RingElem":
        if e < 0:
            raise ValueError("negative exponent")
        out, base = self.params.one(), self
        while e:
            if e & 1:
                out = ring_mul(out, base)
            e >>= 1
            if e:
                base = ring_mul(base, base)
        return out

    def __str__(self) -> str:
        return str(self.poly)

    def __repr__(self) -> str:
        return f"RingElem({self.poly}; p={self.params.p}, tau={self.params.tau})"


def ring_mul(a: RingElem, b: RingElem) -> RingElem:
    """Product modulo x^m + 1 (cyclic convolution of the coefficient vectors)."""
    if a.params != b.params:
        raise ValueError("ring parameters differ")
    return RingElem(_fold((a.poly * b.poly).bits, a.params.m), a.params)


def reduce_to_quotient(a: RingElem) -> Poly:
    return poly_divmod(a.poly, a.params.modulus)[1]


def quotient_inv(a: Poly, params: RingParams) -> Poly:
    """Inverse in F2[x]/f_{p,tau}; raises NotInvertibleError with the gcd."""
    return poly_inv_mod(a, params.modulus)


def circulant(a: RingElem, i: int, j: int) -> BitMatrix:
    """A_{i,j}(a): the m x m circulant of ``a`` minus its last i rows and j columns.

    Entry (r, c) is the coefficient of x^((c - r) mod m).
    """
    m = a.params.m
    if not (0 <= i < m and 0 <= j < m):
        raise ValueError(f"trim counts must lie in [0, {m}), got i={i}, j={j}")
    mask = (1 << (m - j)) - 1
    rows = tuple(rotate(a.bits, r, m) & mask for r in range(m - i))
    return BitMatrix(rows, m - j)
