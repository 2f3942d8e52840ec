"""
Polynomial rings over GF(2)
===========================

Elements of F2[x]/(x^m + 1) are stored as Python ints, bit k holding the
coefficient of x^k.  Multiplication by x is a rotation, and every element has
a circulant binary matrix that multiplies the same way.
"""

from ringcodes.binmat import mat_mul, mat_rank
from ringcodes.gf2poly import Poly, lambda_of, poly_gcd
from ringcodes.ring import RingParams, circulant

# p odd, tau a power of two, m = p * tau
rp = RingParams(p=5, tau=2)
print(rp, "m =", rp.m, "row size =", rp.row_size)
print("modulus:", rp.modulus)

a = rp.elem(Poly.from_exponents([0, 3, 7]))
b = rp.elem(Poly.from_exponents([1, 2]))
print("a       =", a.poly)
print("b       =", b.poly)
print("a * b   =", (a * b).poly)
print("a * x   =", (a * rp.monomial(1)).poly, "(a rotated by one)")

# the full circulant turns ring products into matrix products
A, B = circulant(a, 0, 0), circulant(b, 0, 0)
print("circulant(a*b) == A @ B:", circulant(a * b, 0, 0) == mat_mul(A, B))

# trimming tau rows and columns keeps full rank when gcd(a, x^m+1) = 1 + x^tau
lift = Poly.from_exponents([0, rp.tau])
c = rp.elem(lift * Poly(0b1011))
print("gcd(c, x^m+1) =", poly_gcd(c.poly, rp.cycle))
print("rank of trimmed circulant:", mat_rank(circulant(c, rp.tau, rp.tau)), "of", rp.row_size)

# lambda: smallest degree of an irreducible factor of 1 + x + ... + x^(p-1)
for p in (3, 5, 7, 11, 13, 17, 31):
    print(f"lambda({p}) = {lambda_of(p)}")
