from functools import reduce as fold
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ppxh.bitlin import (
    BitMatrix,
    BitVector,
    array_to_ints,
    independent_columns,
    independent_rows,
    ints_to_array,
    rank,
    xor,
)
from ppxh.errors import UsageError

from conftest import WORKED_X, sets_to_bits


def test_xor_examples():
    v = BitVector.from_string("10110")
    assert xor(v, BitVector.from_string("00000")) == v
    assert str(xor(v, v)) == "00000"
    # {c,d} ^ {a,b,c,d} == {a,b}
    assert str(xor(BitVector.from_string("00110"), BitVector.from_string("11110"))) == "11000"


def test_xor_length_mismatch():
    with pytest.raises(UsageError):
        xor(BitVector(3, 1), BitVector(4, 1))


def test_bitvector_bounds():
    v = BitVector(3, 0b101)
    assert [v[0], v[1], v[2]] == [1, 0, 1]
    with pytest.raises(IndexError):
        v[3]


def test_rank_examples():
    assert rank(BitMatrix.identity(6)) == 6
    assert rank(BitMatrix.zeros(4, 5)) == 0
    assert rank(BitMatrix(tuple(sets_to_bits(WORKED_X)), 5)) == 5


def test_worked_columns_have_no_dependent_subset():
    m = BitMatrix(tuple(sets_to_bits(WORKED_X)), 5)
    cols = [m.column(j).bits for j in range(5)]
    for r in range(1, 6):
        for subset in combinations(cols, r):
            assert fold(lambda a, b: a ^ b, subset) != 0
    basis = independent_columns(m)
    assert basis.pivot_indices == (0, 1, 2, 3, 4)
    assert basis.certificates == {}


def test_independent_columns_certificate():
    # columns a, b, a^b
    m = BitMatrix.from_lists([[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    basis = independent_columns(m)
    assert basis.pivot_indices == (0, 1)
    assert basis.certificates == {2: (0, 1)}


def test_zero_column_has_empty_certificate():
    m = BitMatrix.from_lists([[1, 0], [1, 0]])
    assert independent_columns(m).certificates == {1: ()}


def test_independent_rows_examples():
    basis = independent_rows(BitMatrix.from_lists([[1, 0], [0, 1], [1, 1]]))
    assert basis.pivot_indices == (0, 1)
    assert basis.certificates == {2: (0, 1)}
    rows = BitMatrix.from_lists([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert independent_rows(rows).pivot_indices == (0, 1, 2)


def test_independent_rows_six_by_four():
    rows = [0b0001, 0b0010, 0b0100, 0b1000, 0b0011, 0b1101]
    basis = independent_rows(BitMatrix(tuple(rows), 4))
    assert basis.rank == 4
    for i, cert in basis.certificates.items():
        assert fold(lambda a, b: a ^ b, (rows[j] for j in cert)) == rows[i]


@given(st.lists(st.integers(0, 255), min_size=1, max_size=12), st.booleans())
def test_certificates_reproduce(rows, by_rows):
    m = BitMatrix(tuple(rows), 8)
    basis = independent_rows(m) if by_rows else independent_columns(m)
    vecs = rows if by_rows else [m.column(j).bits for j in range(8)]
    for i, cert in basis.certificates.items():
        assert fold(lambda a, b: a ^ b, (vecs[j] for j in cert), 0) == vecs[i]
    pivots = [vecs[p] for p in basis.pivot_indices]
    assert rank(BitMatrix(tuple(pivots), 16 if by_rows else len(rows))) == len(pivots)
    assert basis.rank == rank(m)


@given(st.lists(st.integers(0, 63), min_size=1, max_size=10))
def test_rank_of_transpose(rows):
    m = BitMatrix(tuple(rows), 6)
    assert rank(m) == rank(m.T) <= min(len(rows), 6)


def test_wide_matrix_uses_same_answer():
    rng = np.random.default_rng(3)
    arr = rng.integers(0, 2, size=(12, 600), dtype=np.uint8)
    arr[:, 5] = arr[:, 1] ^ arr[:, 2]
    rows = array_to_ints(arr)
    assert (ints_to_array(rows, 600) == arr).all()
    basis = independent_columns(BitMatrix(tuple(rows), 600))
    assert basis.rank == rank(BitMatrix(tuple(rows), 600)) == 12
    for j, cert in basis.certificates.items():
        col = arr[:, list(cert)].sum(axis=1) % 2 if cert else np.zeros(12)
        assert (col == arr[:, j]).all()
