import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import rank_by_span
from ringcodes.binmat import (
    BitMatrix,
    InconsistentSystemError,
    RingMatrix,
    SingularMatrixError,
    hstack,
    mat_invert,
    mat_mul,
    mat_rank,
    mat_solve,
    submatrix_columns,
    tmap,
    vstack,
)
from ringcodes.ring import RingElem, RingParams, circulant


def random_matrix(rng, nr, nc):
    return BitMatrix(tuple(rng.getrandbits(nc) if nc else 0 for _ in range(nr)), nc)


def random_invertible(rng, n):
    while True:
        a = random_matrix(rng, n, n)
        if mat_rank(a) == n:
            return a


def test_padding_is_rejected():
    with pytest.raises(ValueError):
        BitMatrix((0b100,), 2)


def test_array_round_trip():
    a = random_matrix(random.Random(1), 5, 9)
    assert BitMatrix.from_array(a.to_array()) == a
    assert a.transpose().transpose() == a


def test_mul_examples():
    rng = random.Random(2)
    a = random_matrix(rng, 6, 9)
    assert mat_mul(a, BitMatrix.identity(9)) == a
    assert mat_mul(BitMatrix.identity(6), a) == a
    r3 = RingParams(3)
    x = circulant(r3.monomial(1), 0, 0)
    assert mat_mul(x, x) == circulant(r3.monomial(2), 0, 0)
    assert a.mul_vec(0) == 0
    with pytest.raises(ValueError):
        mat_mul(a, a)


def test_rank_examples():
    assert mat_rank(BitMatrix.identity(7)) == 7
    assert mat_rank(BitMatrix((0b1011, 0b1011), 4)) == 1
    r3 = RingParams(3)
    assert mat_rank(circulant(RingElem(0b11, r3), 1, 1)) == 2
    assert mat_rank(circulant(RingElem(0b111, r3), 1, 1)) == 1


@given(st.integers(1, 6), st.integers(1, 6), st.randoms(use_true_random=False))
def test_rank_against_span_enumeration(nr, nc, rnd):
    a = random_matrix(rnd, nr, nc)
    assert mat_rank(a) == rank_by_span(list(a.rows))


def test_rank_leaves_input_untouched():
    a = random_matrix(random.Random(3), 8, 8)
    before = a.rows
    mat_rank(a)
    assert a.rows == before


def test_solve_examples():
    assert mat_solve(BitMatrix.identity(5), 0b10110) == 0b10110
    a = BitMatrix.from_lists([[1, 1], [0, 1]])
    assert mat_solve(a, [1, 1]) == 0b10


def test_solve_round_trip_on_tall_systems():
    rng = random.Random(4)
    done = 0
    while done < 100:
        nr = rng.randint(1, 40)
        nc = rng.randint(1, nr)
        a = random_matrix(rng, nr, nc)
        if mat_rank(a) < nc:
            continue
        e = rng.getrandbits(nc)
        assert mat_solve(a, a.mul_vec(e)) == e
        done += 1


def test_solve_errors():
    with pytest.raises(SingularMatrixError, match="not uniquely solvable"):
        mat_solve(BitMatrix((0b11, 0b11), 2), 0)
    tall = BitMatrix((0b1, 0b1), 1)
    with pytest.raises(InconsistentSystemError, match="no solution"):
        mat_solve(tall, 0b01)


def test_invert_examples():
    assert mat_invert(BitMatrix.identity(4)) == BitMatrix.identity(4)
    a = BitMatrix.from_lists([[1, 1], [0, 1]])
    assert mat_invert(a) == a
    r3 = RingParams(3)
    assert mat_invert(circulant(r3.monomial(1), 0, 0)) == circulant(r3.monomial(2), 0, 0)
    with pytest.raises(SingularMatrixError):
        mat_invert(BitMatrix((0b11, 0b11), 2))


def test_invert_random():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 64)
        a = random_invertible(rng, n)
        assert mat_mul(a, mat_invert(a)) == BitMatrix.identity(n)


def test_stacking():
    a = BitMatrix.from_lists([[1, 0], [0, 1]])
    b = BitMatrix.from_lists([[1], [1]])
    assert hstack([a, b]) == BitMatrix.from_lists([[1, 0, 1], [0, 1, 1]])
    assert vstack([a, a]).shape == (4, 2)


def test_tmap_examples():
    r3 = RingParams(3)
    assert tmap(RingMatrix([[r3.one()]])) == BitMatrix.identity(2)
    assert tmap(RingMatrix([[r3.zero()]])) == BitMatrix.zeros(2, 2)


@given(st.sampled_from([RingParams(3), RingParams(5, 2), RingParams(7)]), st.integers(1, 3),
       st.integers(1, 4), st.randoms(use_true_random=False))
def test_tmap_blocks_are_trimmed_circulants(params, nr, nc, rnd):
    grid = [[RingElem(rnd.getrandbits(params.m), params) for _ in range(nc)] for _ in range(nr)]
    big = tmap(RingMatrix(grid))
    q = params.row_size
    assert big.shape == (nr * q, nc * q)
    for i in range(nr):
        for j in range(nc):
            block = big.row_slice(i * q, (i + 1) * q).col_slice(j * q, (j + 1) * q)
            assert block == circulant(grid[i][j], params.tau, params.tau)


def test_submatrix_columns_examples():
    params = RingParams(5)
    rnd = random.Random(6)
    grid = [[RingElem(rnd.getrandbits(5), params) for _ in range(4)] for _ in range(2)]
    big = tmap(RingMatrix(grid))
    q = params.row_size
    assert submatrix_columns(big, range(4), q) == big
    assert submatrix_columns(big, [], q).shape == (big.nrows, 0)
    col2 = submatrix_columns(big, [2], q)
    assert col2 == vstack([circulant(grid[i][2], 1, 1) for i in range(2)])
    assert submatrix_columns(big, [3, 0], q) == hstack(
        [submatrix_columns(big, [0], q), submatrix_columns(big, [3], q)])
    with pytest.raises(IndexError):
        submatrix_columns(big, [4], q)


def test_ring_matrix_rejects_mixed_params():
    with pytest.raises(ValueError):
        RingMatrix([[RingParams(3).one(), RingParams(5).one()]])
