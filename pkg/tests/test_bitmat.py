"""Bit-packed GF(2) linear algebra against naive per-bit references."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from statdec.bitmat import (BitMatrix, BitVector, Permutation, mat_vec, parity_check_from_systematic,
                            partial_systematize, rank, row_space_contains, solve_row_combination,
                            systematize, vec_mat, weight)
from statdec.errors import DimensionMismatch, SingularLeftBlock


def naive_weight(v: BitVector) -> int:
    return sum(v.get(i) for i in range(v.n))


def naive_mat_vec(G: BitMatrix, v: BitVector) -> list[int]:
    out = []
    for i in range(G.rows):
        acc = 0
        for j in range(G.cols):
            acc ^= G.get(i, j) & v.get(j)
        out.append(acc)
    return out


def random_matrix(rng: random.Random, rows: int, cols: int) -> BitMatrix:
    return BitMatrix(rows, cols, tuple(rng.getrandbits(cols) for _ in range(rows)))


def test_weight_examples():
    assert weight(BitVector.zeros(10)) == 0
    assert weight(BitVector(7, (1 << 7) - 1)) == 7
    assert weight(BitVector.from_bits([1, 0, 1, 1, 0])) == 3


def test_weight_matches_naive_scan():
    rng = random.Random(1)
    for _ in range(50):
        v = BitVector(24, rng.getrandbits(24))
        assert v.weight() == naive_weight(v)


def test_bitvector_bounds():
    with pytest.raises(DimensionMismatch):
        BitVector(3, 0b1000)
    with pytest.raises(DimensionMismatch):
        BitVector(0, 0)


def test_mat_vec_identity():
    I3 = BitMatrix.identity(3)
    v = BitVector.from_bits([1, 0, 1])
    assert mat_vec(I3, v) == v


def test_mat_vec_hand_example():
    G = BitMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    out = mat_vec(G, BitVector.from_bits([1, 1, 1]))
    # per-bit dot products mod 2: (1+1, 1+1) = (0, 0)
    assert out.to_bits() == [0, 0]


def test_mat_vec_zero_matrix():
    Z = BitMatrix(2, 5, (0, 0))
    rng = random.Random(2)
    for _ in range(10):
        v = BitVector(5, rng.getrandbits(5))
        assert mat_vec(Z, v).bits == 0


def test_mat_vec_matches_naive():
    rng = random.Random(3)
    for _ in range(30):
        G = random_matrix(rng, 6, 13)
        v = BitVector(13, rng.getrandbits(13))
        assert mat_vec(G, v).to_bits() == naive_mat_vec(G, v)


def test_mat_vec_linearity():
    rng = random.Random(4)
    G = random_matrix(rng, 16, 32)
    for _ in range(100):
        u = BitVector(32, rng.getrandbits(32))
        v = BitVector(32, rng.getrandbits(32))
        assert mat_vec(G, u ^ v) == mat_vec(G, u) ^ mat_vec(G, v)


def test_mat_vec_dimension_mismatch():
    G = BitMatrix.identity(3)
    with pytest.raises(DimensionMismatch):
        mat_vec(G, BitVector.zeros(4))


def test_permutation_roundtrip_seeded():
    rng = random.Random(5)
    for _ in range(100):
        p = Permutation.random(12, rng)
        v = BitVector(12, rng.getrandbits(12))
        assert p.inverse().apply(p.apply(v)) == v
        assert p.unapply(p.apply(v)) == v


@settings(max_examples=60)
@given(st.integers(1, 40), st.integers(0, 2**40 - 1), st.integers(0, 2**32 - 1))
def test_permutation_roundtrip_property(n, bits, seed):
    rng = random.Random(seed)
    p = Permutation.random(n, rng)
    v = BitVector(n, bits & ((1 << n) - 1))
    assert p.inverse().apply(p.apply(v)) == v


def test_permutation_rejects_non_bijection():
    with pytest.raises(DimensionMismatch):
        Permutation(3, (0, 0, 2))


def test_permute_cols_compatible_with_apply():
    # column permutation of G and apply on v cancel inside the product
    rng = random.Random(6)
    G = random_matrix(rng, 5, 11)
    for _ in range(20):
        p = Permutation.random(11, rng)
        v = BitVector(11, rng.getrandbits(11))
        assert mat_vec(G.permute_cols(p), p.apply(v)) == mat_vec(G, v)


def test_systematize_identity_case():
    form = systematize(BitMatrix.identity(3), Permutation.identity(3))
    assert form.matrix == BitMatrix.identity(3)
    assert form.transform_applied is False


def test_systematize_hand_elimination():
    G = BitMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    form = systematize(G, Permutation.identity(3))
    # row-reduce over GF(2): add row 2 to row 1
    assert [form.matrix.row(i).to_bits() for i in range(2)] == [[1, 0, 1], [0, 1, 1]]
    assert form.transform_applied is True


def test_systematize_singular_left_block():
    G = BitMatrix.from_rows([[0, 0, 1, 1], [0, 0, 1, 0]])
    with pytest.raises(SingularLeftBlock):
        systematize(G, Permutation.identity(4))


def test_systematize_leading_identity_and_row_space():
    rng = random.Random(7)
    G = random_matrix(rng, 8, 16)
    while rank(G) < 8:
        G = random_matrix(rng, 8, 16)
    checked = 0
    for _ in range(100):
        p = Permutation.random(16, rng)
        try:
            form = systematize(G, p)
        except SingularLeftBlock:
            continue
        checked += 1
        gp = G.permute_cols(p)
        for i in range(8):
            row = form.matrix.row(i)
            assert all(row.get(j) == (1 if j == i else 0) for j in range(8))
            assert row_space_contains(gp, row)
    assert checked > 10


def test_partial_systematize_l0_degenerates():
    rng = random.Random(8)
    G = random_matrix(rng, 6, 12)
    while rank(G) < 6:
        G = random_matrix(rng, 6, 12)
    p = Permutation.random(12, rng)
    try:
        full = systematize(G, p)
    except SingularLeftBlock:
        pytest.skip("unlucky permutation for this seed")
    part = partial_systematize(G, p, 0)
    assert part.top == full.matrix
    assert part.bottom_right.rows == 0


def test_partial_systematize_identity_input():
    # I_3 padded with zero columns; l = 1 keeps the third row in G2
    G = BitMatrix.from_rows([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]])
    part = partial_systematize(G, Permutation.identity(5), 1)
    assert part.top.rows == 2
    assert [part.top.row(i).to_bits() for i in range(2)] == [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]]
    # G2 = last row restricted to the last n - (k-l) = 3 columns
    assert part.bottom_right.rows == 1
    assert part.bottom_right.row(0).to_bits() == [1, 0, 0]


def test_partial_systematize_g2_support_and_row_space():
    rng = random.Random(9)
    G = random_matrix(rng, 8, 16)
    while rank(G) < 8:
        G = random_matrix(rng, 8, 16)
    done = 0
    for _ in range(50):
        p = Permutation.random(16, rng)
        try:
            part = partial_systematize(G, p, 2)
        except SingularLeftBlock:
            continue
        done += 1
        gp = G.permute_cols(p)
        split = 6  # k - l
        for i in range(part.bottom_right.rows):
            embedded = BitVector(16, part.bottom_right.row_data[i] << split)
            assert row_space_contains(gp, embedded)
            assert all(embedded.get(j) == 0 for j in range(split))
    assert done > 5


def test_parity_check_from_systematic_is_dual_basis():
    rng = random.Random(10)
    G = random_matrix(rng, 5, 12)
    while rank(G) < 5:
        G = random_matrix(rng, 5, 12)
    form = systematize(G, Permutation.identity(12)) if rank(G.submatrix_cols(0, 5)) == 5 else None
    if form is None:
        pytest.skip("left block singular for this seed")
    H = parity_check_from_systematic(form.matrix)
    assert H.rows == 7 and rank(H) == 7
    for j in range(H.rows):
        assert mat_vec(form.matrix, H.row(j)).bits == 0


def test_solve_row_combination_roundtrip():
    rng = random.Random(11)
    G = random_matrix(rng, 7, 15)
    while rank(G) < 7:
        G = random_matrix(rng, 7, 15)
    for _ in range(30):
        x = BitVector(7, rng.getrandbits(7))
        target = vec_mat(x, G)
        assert solve_row_combination(G, target) == x
    # something outside the row space (exists since 7 < 15) is rejected
    misses = 0
    for _ in range(30):
        v = BitVector(15, rng.getrandbits(15))
        if solve_row_combination(G, v) is None:
            misses += 1
    assert misses > 20  # hit probability is 2^-8


@settings(max_examples=40)
@given(st.integers(0, 2**15 - 1), st.integers(0, 2**15 - 1), st.integers(0, 10**6))
def test_xor_linearity_property(a, b, seed):
    rng = random.Random(seed)
    G = random_matrix(rng, 4, 15)
    u, v = BitVector(15, a), BitVector(15, b)
    assert mat_vec(G, u ^ v) == mat_vec(G, u) ^ mat_vec(G, v)
