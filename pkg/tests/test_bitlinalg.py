import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unichan.bitlinalg import (BitMatrix, BitVector, DimensionError, NotInKernelError, mat_vec_mul,
                               message_of_codeword, null_space, nullspace_codeword, rank, rref, span)


def matrices(max_rows=8, max_cols=12):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.integers(0, (1 << c) - 1), min_size=1, max_size=max_rows).map(
            lambda rows: BitMatrix(tuple(rows), c)))


def _rank_by_elimination(rows):
    """Textbook rank: XOR away the highest set bit one row at a time."""
    basis = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def test_hex_round_trip_and_padding():
    v = BitVector(12, 0xABC)
    assert v.to_hex() == "12:bc0a"
    assert BitVector.from_hex("12:bc0a") == v
    with pytest.raises(ValueError):
        BitVector.from_hex("12:bcfa")   # bits beyond n set
    with pytest.raises(ValueError):
        BitVector.from_hex("12:bc")


def test_from_str_is_index_zero_first():
    v = BitVector.from_str("1101")
    assert v.value == 0b1011
    assert str(v) == "1101"
    assert v.weight() == 3


def test_xor_length_mismatch():
    with pytest.raises(DimensionError):
        BitVector(3, 1) ^ BitVector(4, 1)


def test_identity_apply():
    I = BitMatrix.identity(5)
    assert all(I.apply(x) == x for x in range(32))


def test_small_known_null_space():
    # x0 + x1 = 0, x1 + x2 = 0: the kernel is {000, 111}
    H = BitMatrix((0b011, 0b110), 3)
    ns = null_space(H)
    assert ns.k == 1
    assert ns.basis == (0b111,)
    assert rank(H) == 2


def test_text_round_trip():
    H = BitMatrix((0b1010, 0b0111, 0), 4)
    assert BitMatrix.from_text(H.to_text()) == H


def test_mat_vec_dimension_check():
    with pytest.raises(DimensionError):
        mat_vec_mul(BitMatrix.identity(4), BitVector(5, 1))


def test_message_of_codeword_rejects_non_kernel():
    H = BitMatrix((0b011,), 3)
    with pytest.raises(NotInKernelError):
        message_of_codeword(null_space(H), BitVector(3, 0b001))


@given(matrices())
def test_rank_matches_independent_elimination(H):
    assert rank(H) == _rank_by_elimination(H.rows)


@given(matrices())
def test_rank_nullity(H):
    assert rank(H) + null_space(H).k == H.cols


@given(matrices())
def test_rref_pivots_are_increasing_unit_columns(H):
    R, pivots = rref(H)
    assert pivots == sorted(pivots)
    for i, p in enumerate(pivots):
        assert [(row >> p) & 1 for row in R.rows[:len(pivots)]] == [int(j == i) for j in range(len(pivots))]


@given(matrices(), st.data())
def test_codewords_lie_in_kernel_and_round_trip(H, data):
    ns = null_space(H)
    m = data.draw(st.integers(0, (1 << ns.k) - 1))
    x = nullspace_codeword(ns, m)
    assert H.apply(x.value) == 0
    assert message_of_codeword(ns, x) == m


@given(matrices(), st.data())
def test_encoding_is_linear(H, data):
    ns = null_space(H)
    m1, m2 = (data.draw(st.integers(0, (1 << ns.k) - 1)) for _ in range(2))
    assert nullspace_codeword(ns, m1 ^ m2) == nullspace_codeword(ns, m1) ^ nullspace_codeword(ns, m2)


@settings(max_examples=50)
@given(matrices(max_rows=5, max_cols=8))
def test_kernel_exhaustively(H):
    ns = null_space(H)
    kernel = [x for x in range(1 << H.cols) if H.apply(x) == 0]
    assert span(ns.basis) == kernel


@given(st.lists(st.integers(0, 255), max_size=6))
def test_span_is_closed_and_sized(vectors):
    s = span(vectors)
    assert len(s) == 1 << _rank_by_elimination(vectors)
    members = set(s)
    assert all(a ^ b in members for a in s for b in s)


def test_apply_distributes_over_xor():
    rng = random.Random(3)
    H = BitMatrix(tuple(rng.getrandbits(40) for _ in range(10)), 40)
    for _ in range(200):
        a, b = rng.getrandbits(40), rng.getrandbits(40)
        assert H.apply(a ^ b) == H.apply(a) ^ H.apply(b)


def test_vstack_and_columns():
    A = BitMatrix((0b01, 0b10), 2)
    B = BitMatrix.from_columns([0b1, 0b1], 1)
    S = A.vstack(B)
    assert S.shape == (3, 2)
    assert S.column(0) == 0b101
