"""Code families over F2[x]/f_{p,tau} and their MDS checks.

Every builder returns a ``CodeSpec`` holding the ring-valued parity-check
matrix and its binary image.  Two layouts exist:

``etbr``
    ``H`` is r x n and the binary matrix is ``tmap(H)``.
``esip``
    ``H`` is r x n, extended on the right by the r x (r-1) identity without its
    first column, giving r x (n + r - 1).

In both layouts the last r columns of a codeword are the parity columns.
The ``br`` family is the classic polynomial-ring code whose binary image is
built from multiplication modulo f_{p,1} instead of ``tmap``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from typing import Sequence

from .binmat import BitMatrix, RingMatrix, mat_rank, submatrix_columns, tmap
from .gf2poly import Poly, lambda_of, poly_divmod, poly_gcd
from .ring import RingElem, RingParams, quotient_inv, reduce_to_quotient

__all__ = [
    "FAMILIES",
    "CodeSpec",
    "ConditionResult",
    "MdsConditionReport",
    "PatternLimitError",
    "build_br",
    "build_cauchy_vesip",
    "build_custom",
    "build_generalized_rdp",
    "build_vand_vesip_r4",
    "build_vand_vetbr",
    "check_mds_conditions",
    "default_cauchy_elements",
    "is_prime",
    "verify_mds_exhaustive",
]

FAMILIES = ("cauchy-vesip", "vand-vetbr", "vand-vesip4", "gen-rdp", "br", "custom-etbr", "custom-esip")

MAX_PATTERNS_ENV = "RINGCODES_MAX_PATTERNS"
DEFAULT_MAX_PATTERNS = 10**6


class PatternLimitError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class CodeSpec:
    family: str
    params: RingParams
    n: int
    r: int
    H: RingMatrix
    Hbin: BitMatrix
    layout: str
    # construction data kept for the fast codec and for serialization
    h_prime: tuple[Poly, ...] | None = None
    w: int | None = None
    n0: int | None = None
    n1: int | None = None
    a_list: tuple[Poly, ...] | None = None
    b_list: tuple[Poly, ...] | None = None
    bounds_checked: bool = True
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        q = self.row_size
        if self.Hbin.shape != (self.r * q, self.total_cols * q):
            raise AssertionError(f"binary matrix has shape {self.Hbin.shape}")

    @property
    def total_cols(self) -> int:
        return self.n + self.r - 1 if self.layout == "esip" else self.n

    @property
    def row_size(self) -> int:
        return self.params.row_size

    @property
    def data_cols(self) -> int:
        return self.total_cols - self.r

    @property
    def parity_cols(self) -> tuple[int, ...]:
        return tuple(range(self.data_cols, self.total_cols))

    @property
    def H_core(self) -> RingMatrix:
        """The r x n part of H without the appended identity columns."""
        return self.H.select_columns(range(self.n)) if self.layout == "esip" else self.H

    def describe(self) -> str:
        bits = [f"p={self.params.p}", f"tau={self.params.tau}", f"r={self.r}"]
        for name in ("n0", "n1"):
            if getattr(self, name) is not None:
                bits.append(f"{name}={getattr(self, name)}")
        if self.family in ("cauchy-vesip", "custom-etbr", "custom-esip"):
            bits.append(f"n={self.n}")
        return f"{self.family}({', '.join(bits)})"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _identity_tail(params: RingParams, r: int, drop_first: bool) -> list[list[RingElem]]:
    start = 1 if drop_first else 0
    return [[params.one() if i == j else params.zero() for j in range(start, r)] for i in range(r)]


def _spec(family, params, n, r, H, layout, **kw) -> CodeSpec:
    return CodeSpec(family, params, n, r, H, tmap(H), layout, **kw)


# -- Cauchy ----------------------------------------------------------------

def default_cauchy_elements(p: int, r: int, n: int) -> tuple[list[Poly], list[Poly]]:
    """First r + n - 1 polynomials of degree < lambda in degree-then-lex order."""
    lam = lambda_of(p)
    need = r + n - 1
    if need > 2**lam:
        raise ValueError(f"need {need} distinct elements of degree < {lam}, only {2**lam} exist")
    # ints in increasing order are exactly degree-then-lexicographic order
    return [Poly(i) for i in range(r)], [Poly(r + j) for j in range(n - 1)]


def build_cauchy_vesip(p: int, tau: int, r: int, n: int,
                       a_list: Sequence[Poly] | None = None,
                       b_list: Sequence[Poly] | None = None) -> CodeSpec:
    params = RingParams(p, tau)
    if r < 2 or n < 2:
        raise ValueError(f"need r >= 2 and n >= 2, got r={r}, n={n}")
    if a_list is None and b_list is None:
        a_list, b_list = default_cauchy_elements(p, r, n)
    elif a_list is None or b_list is None:
        raise ValueError("give both a_list and b_list, or neither")
    a_list, b_list = [Poly(int(getattr(a, "bits", a))) for a in a_list], [Poly(int(getattr(b, "bits", b))) for b in b_list]
    if len(a_list) != r or len(b_list) != n - 1:
        raise ValueError(f"expected {r} a-elements and {n - 1} b-elements")
    lam = lambda_of(p)
    for e in a_list + b_list:
        if e.degree >= lam:
            raise ValueError(f"element {e} has degree >= λ={lam}")
    if len(set(a_list)) != r:
        raise ValueError("a-elements must be pairwise distinct")
    if len(set(b_list)) != n - 1:
        raise ValueError("b-elements must be pairwise distinct")
    clash = set(a_list) & set(b_list)
    if clash:
        raise ValueError(f"a_i = b_j for {sorted(map(str, clash))}")
    lift = params.elem(Poly.from_exponents([0, tau]))
    rows = []
    for i, a in enumerate(a_list):
        row = [lift * params.elem(quotient_inv(a + b, params)) for b in b_list]
        row += [params.one() if k == i else params.zero() for k in range(r)]
        rows.append(row)
    return _spec("cauchy-vesip", params, n, r, RingMatrix(rows), "esip",
                 a_list=tuple(a_list), b_list=tuple(b_list))


# -- Vandermonde -----------------------------------------------------------

def _binary_expansion_bases(count: int) -> list[Poly]:
    # h'_0 = 0 and h'_{i + 2^j} = h'_i + x^j, i.e. the bits of i read as a polynomial
    return [Poly(i) for i in range(count)]


def _vandermonde(params: RingParams, bases: Sequence[RingElem], r: int) -> list[list[RingElem]]:
    rows = [[params.one()] * len(bases)]
    for _ in range(1, r):
        rows.append([a * b for a, b in zip(rows[-1], bases)])
    return rows


def build_vand_vetbr(p: int, tau: int, r: int, n0: int, check_bounds: bool = True) -> CodeSpec:
    """Vandermonde code with n = 2^n0 columns and bases (1 + x^tau) * h'_i.

    ``check_bounds=False`` skips the ``n0 <= lambda`` requirement; such specs are
    only useful for cost measurements and are not guaranteed MDS.
    """
    params = RingParams(p, tau)
    lam = lambda_of(p)
    if n0 < 1:
        raise ValueError("n0 must be >= 1")
    if check_bounds and n0 > lam:
        raise ValueError(f"n0 exceeds λ={lam}")
    n = 2**n0
    if not (2 <= r < n):
        raise ValueError(f"r must satisfy 2 <= r < n={n}, got {r}")
    hp = _binary_expansion_bases(n)
    lift = params.elem(Poly.from_exponents([0, tau]))
    bases = [lift * params.elem(h) for h in hp]
    H = RingMatrix(_vandermonde(params, bases, r))
    return _spec("vand-vetbr", params, n, r, H, "etbr", h_prime=tuple(hp), n0=n0,
                 bounds_checked=check_bounds)


def build_vand_vesip_r4(p: int, tau: int, n1: int, check_bounds: bool = True) -> CodeSpec:
    """Systematic four-parity code with n = 2^n1 + 1 and bases (h'_i + x^w)(1 + x^tau).

    ``check_bounds=False`` permits ``n1 > w`` for cost measurements only.
    """
    params = RingParams(p, tau)
    lam = lambda_of(p)
    w = (lam - 1) // 2
    if n1 < 1:
        raise ValueError("n1 must be >= 1")
    if check_bounds and n1 > w:
        raise ValueError(f"n1 exceeds w={w}")
    r = 4
    n = 2**n1 + 1
    hp = _binary_expansion_bases(2**n1)
    lift = params.elem(Poly.from_exponents([0, tau]))
    bases = [lift * params.elem(h + Poly.x(w)) for h in hp] + [params.zero()]
    core = _vandermonde(params, bases, r)
    tail = _identity_tail(params, r, drop_first=True)
    H = RingMatrix([a + b for a, b in zip(core, tail)])
    return _spec("vand-vesip4", params, n, r, H, "esip", h_prime=tuple(hp), w=w, n1=n1,
                 bounds_checked=check_bounds)


# -- reference codes ---------------------------------------------------------

def build_generalized_rdp(p: int, r: int) -> CodeSpec:
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if r < 2:
        raise ValueError("r must be >= 2")
    params = RingParams(p, 1)
    core = [[params.monomial((p - j) * i) for j in range(p)] for i in range(r)]
    tail = _identity_tail(params, r, drop_first=True)
    H = RingMatrix([a + b for a, b in zip(core, tail)])
    return _spec("gen-rdp", params, p, r, H, "esip")


def _mult_matrix_mod_f(k: int, p: int) -> list[int]:
    """Columns (as ints) of multiplication by x^k on F2[x]/f_{p,1}, basis 1..x^(p-2)."""
    allones = (1 << (p - 1)) - 1
    cols = []
    for l in range(p - 1):
        e = (k + l) % p
        cols.append(allones if e == p - 1 else 1 << e)
    return cols


def build_br(p: int, r: int) -> CodeSpec:
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if not (2 <= r < p):
        raise ValueError(f"r must satisfy 2 <= r < p={p}")
    params = RingParams(p, 1)
    q = p - 1
    H = RingMatrix([[params.monomial(i * j) for j in range(p)] for i in range(r)])
    rows = []
    for i in range(r):
        blocks = [_mult_matrix_mod_f(i * j, p) for j in range(p)]
        for t in range(q):
            v = 0
            for j, cols in enumerate(blocks):
                for l, col in enumerate(cols):
                    if (col >> t) & 1:
                        v |= 1 << (j * q + l)
            rows.append(v)
    return CodeSpec("br", params, p, r, H, BitMatrix(tuple(rows), p * q), "etbr")


def build_custom(params: RingParams, H: RingMatrix, layout: str) -> CodeSpec:
    """Wrap an arbitrary r x n ring matrix; ``esip`` appends the shortened identity."""
    if H.params != params:
        raise ValueError("matrix entries use different ring parameters")
    r, n = H.shape
    if layout == "etbr":
        if not (2 <= r < n):
            raise ValueError(f"need 2 <= r < n, got r={r}, n={n}")
        return _spec("custom-etbr", params, n, r, H, "etbr")
    if layout == "esip":
        if r < 2 or n < 2:
            raise ValueError(f"need r >= 2 and n >= 2, got r={r}, n={n}")
        full = RingMatrix([list(a) + b for a, b in zip(H.entries, _identity_tail(params, r, True))])
        return _spec("custom-esip", params, n, r, full, "esip")
    raise ValueError(f"unknown layout {layout!r}")


# -- MDS condition reports ---------------------------------------------------

@dataclass
class ConditionResult:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    partial: bool = False
    note: str = ""


@dataclass
class MdsConditionReport:
    rule: str
    conditions: list[ConditionResult]
    passed: bool

    @property
    def partial(self) -> bool:
        return any(c.partial for c in self.conditions)

    def summary(self) -> str:
        lines = [f"conditions ({self.rule}): {'PASS' if self.passed else 'FAIL'}"
                 + (" [partial]" if self.partial else "")]
        for c in self.conditions:
            tag = "pass" if c.passed else "fail"
            extra = " [partial]" if c.partial else ""
            note = f" - {c.note}" if c.note else ""
            lines.append(f"  {c.name}: {tag}{extra}{note}")
        return "\n".join(lines)


_MAX_WITNESSES = 8


def _unit(a: RingElem) -> bool:
    """Invertible modulo f_{p,tau}."""
    return poly_gcd(reduce_to_quotient(a), a.params.modulus).bits == 1


def _gcd_is_lift(a: RingElem) -> bool:
    """gcd(a, x^m + 1) == x^tau + 1."""
    params = a.params
    return poly_gcd(a.poly, params.cycle) == Poly.from_exponents([0, params.tau])


def _det(M: RingMatrix, rows: tuple[int, ...], cols: tuple[int, ...], memo: dict) -> RingElem:
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    params = M.params
    if len(rows) == 1:
        out = M[rows[0], cols[0]]
    else:
        out = params.zero()
        head, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            e = M[head, c]
            if not e.is_zero():
                out = out + e * _det(M, rest, cols[:k] + cols[k + 1:], memo)
    memo[key] = out
    return out


def _ring_mds_by_minors(M: RingMatrix, r: int, max_minor_size: int, max_minors: int) -> ConditionResult:
    name = "ring-mds"
    if r > max_minor_size:
        return ConditionResult(name, True, partial=True,
                               note=f"r={r} exceeds the minor size cap {max_minor_size}; not evaluated")
    rows = tuple(range(r))
    memo: dict = {}
    bad = []
    checked = 0
    total = math.comb(M.ncols, r)
    for cols in itertools.combinations(range(M.ncols), r):
        if checked >= max_minors:
            break
        checked += 1
        if not _unit(_det(M, rows, cols, memo)):
            bad.append(cols)
            if len(bad) >= _MAX_WITNESSES:
                break
    partial = not bad and checked < total
    note = f"{checked} of {total} r x r minors checked" if partial else ""
    return ConditionResult(name, not bad, [("columns", c) for c in bad], partial, note)


def _ring_mds_by_differences(bases: Sequence[RingElem]) -> ConditionResult:
    # a Vandermonde minor is the product of base differences
    bad = []
    for j, k in itertools.combinations(range(len(bases)), 2):
        if not _unit(bases[j] + bases[k]):
            bad.append(("columns", (j, k), str(bases[j] + bases[k])))
            if len(bad) >= _MAX_WITNESSES:
                break
    return ConditionResult("ring-mds", not bad, bad, note="via pairwise base differences")


def _entry_gcd_condition(H: RingMatrix, rows, cols, name: str) -> ConditionResult:
    bad = []
    for i in rows:
        for j in cols:
            if not _gcd_is_lift(H[i, j]):
                bad.append((i, j, str(H[i, j])))
    return ConditionResult(name, not bad, bad[:_MAX_WITNESSES])


def _entry_or_pair_condition(H: RingMatrix) -> ConditionResult:
    bad = []
    n = H.ncols
    for i in range(1, H.nrows):
        for j in range(n):
            if _gcd_is_lift(H[i, j]):
                continue
            for k in range(n):
                if k != j and not _gcd_is_lift(H[i, j] + H[i, k]):
                    bad.append((i, j, k))
                    break
    return ConditionResult("entry-or-pair-sum-gcd", not bad, bad[:_MAX_WITNESSES])


def _pair_divisibility_condition(H: RingMatrix) -> ConditionResult:
    params = H.params
    lift = Poly.from_exponents([0, params.tau])
    bad = []
    for i in range(1, H.nrows):
        # x^tau + 1 divides every pairwise sum iff all residues agree
        residues = [poly_divmod(H[i, j].poly, lift)[1] for j in range(H.ncols)]
        for j in range(1, H.ncols):
            if residues[j] != residues[0]:
                bad.append((i, 0, j))
                break
    return ConditionResult("pair-sums-divisible", not bad, bad[:_MAX_WITNESSES])


def _vandermonde_bases(spec: CodeSpec):
    if spec.family in ("vand-vetbr", "br") and spec.r >= 2:
        return list(spec.H.entries[1])
    return None


def check_mds_conditions(spec: CodeSpec, max_minor_size: int = 4, max_minors: int = 20000) -> MdsConditionReport:
    """Evaluate the sufficient MDS conditions that apply to ``spec``'s shape."""
    core = spec.H_core
    params = spec.params
    bases = _vandermonde_bases(spec)
    if bases is not None:
        ring = _ring_mds_by_differences(bases)
    else:
        ring = _ring_mds_by_minors(spec.H, spec.r, max_minor_size, max_minors)

    if spec.family == "br":
        return MdsConditionReport("br", [ring], ring.passed)

    first_row_ones = all(e == params.one() for e in core.entries[0])
    if spec.layout == "etbr":
        plain = _entry_gcd_condition(core, range(core.nrows), range(core.ncols), "entry-gcd")
        conds = [ring, plain]
        ok = plain.passed
        if first_row_ones:
            alt = _entry_or_pair_condition(core)
            conds.append(alt)
            ok = ok or alt.passed
        return MdsConditionReport("etbr", conds, ring.passed and ok)

    last = core.column(core.ncols - 1)
    identity_tail = last[0] == params.one() and all(e.is_zero() for e in last[1:])
    if first_row_ones:
        div = _pair_divisibility_condition(core)
        return MdsConditionReport("esip-ones-row", [ring, div], ring.passed and div.passed)
    if identity_tail:
        g = _entry_gcd_condition(core, range(core.nrows), range(core.ncols - 1), "entry-gcd")
        return MdsConditionReport("esip-identity-tail", [ring, g], ring.passed and g.passed)
    return MdsConditionReport("none", [ring, ConditionResult(
        "shape", False, note="neither an all-one first row nor an identity tail")], False)


def max_patterns_limit() -> int:
    raw = os.environ.get(MAX_PATTERNS_ENV)
    return int(raw) if raw else DEFAULT_MAX_PATTERNS


def verify_mds_exhaustive(spec: CodeSpec, limit: int | None = None) -> bool:
    """True iff every set of r erased columns leaves a full-rank subsystem."""
    limit = max_patterns_limit() if limit is None else limit
    count = math.comb(spec.total_cols, spec.r)
    if count > limit:
        raise PatternLimitError(
            f"{count} erasure patterns exceed the limit of {limit}; "
            f"use check_mds_conditions or raise {MAX_PATTERNS_ENV}")
    full = spec.r * spec.row_size
    for pattern in itertools.combinations(range(spec.total_cols), spec.r):
        if mat_rank(submatrix_columns(spec.Hbin, pattern, spec.row_size)) != full:
            return False
    return True
