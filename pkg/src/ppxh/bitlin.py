"""Bit-packed GF(2) vectors and matrices.

Rows are stored as Python integers, bit ``j`` holding column ``j``.  Python
integers are arbitrary-precision word arrays, so row xor is word-parallel and
wide matrices (tens of thousands of columns) stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError

__all__ = [
    "BitVector",
    "BitMatrix",
    "Basis",
    "xor",
    "rank",
    "independent_columns",
    "independent_rows",
    "iter_bits",
    "popcount",
    "ints_to_array",
    "array_to_ints",
]


def popcount(x: int) -> int:
    return bin(x).count("1")


def iter_bits(x: int):
    """Yield the positions of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def ints_to_array(rows: Sequence[int], ncols: int) -> np.ndarray:
    """Unpack integer rows into an ``(len(rows), ncols)`` uint8 0/1 array."""
    nbytes = max(1, (ncols + 7) // 8)
    buf = b"".join(int(r).to_bytes(nbytes, "little") for r in rows)
    packed = np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes)
    return np.unpackbits(packed, axis=1, count=ncols, bitorder="little")


def array_to_ints(arr) -> list[int]:
    """Pack a 2-D 0/1 array into integer rows (inverse of :func:`ints_to_array`)."""
    arr = np.asarray(arr, dtype=np.uint8)
    if arr.ndim != 2:
        raise UsageError("expected a 2-D array")
    packed = np.packbits(arr & 1, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2)."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise UsageError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise UsageError("bits exceed vector length")

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVector":
        values = list(values)
        word = 0
        for j, v in enumerate(values):
            if v not in (0, 1):
                raise UsageError(f"entry {v!r} is not a bit")
            if v:
                word |= 1 << j
        return cls(len(values), word)

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        return cls.from_bits(int(ch) for ch in text)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(f"bit {j} out of range for length {self.length}")
        return (self.bits >> j) & 1

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: "BitVector") -> "BitVector":
        return xor(self, other)

    def count(self) -> int:
        return popcount(self.bits)

    def support(self) -> list[int]:
        return list(iter_bits(self.bits))

    def __str__(self) -> str:
        return "".join(str((self.bits >> j) & 1) for j in range(self.length))


def xor(u: BitVector, v: BitVector) -> BitVector:
    """Positionwise exclusive-or of two equal-length vectors."""
    if u.length != v.length:
        raise UsageError(f"length mismatch: {u.length} != {v.length}")
    return BitVector(u.length, u.bits ^ v.bits)


@dataclass(frozen=True)
class BitMatrix:
    """Row-major matrix over GF(2); ``rows[i]`` is an integer bitset of width ``cols``."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        limit = 1 << self.cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise UsageError("row wider than the declared column count")

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        vecs = [BitVector.from_bits(row) for row in data]
        if cols is None:
            cols = vecs[0].length if vecs else 0
        if any(v.length != cols for v in vecs):
            raise UsageError("ragged rows")
        return cls(tuple(v.bits for v in vecs), cols)

    @classmethod
    def identity(cls, m: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(m)), m)

    @classmethod
    def zeros(cls, n: int, m: int) -> "BitMatrix":
        return cls((0,) * n, m)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.cols)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.rows[i])

    def column(self, j: int) -> BitVector:
        if not 0 <= j < self.cols:
            raise IndexError(j)
        word = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                word |= 1 << i
        return BitVector(len(self.rows), word)

    def to_array(self) -> np.ndarray:
        return ints_to_array(self.rows, self.cols)

    def transpose(self) -> "BitMatrix":
        if not self.rows:
            return BitMatrix((0,) * self.cols, 0)
        return BitMatrix(tuple(array_to_ints(self.to_array().T)), len(self.rows))

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()


@dataclass(frozen=True)
class Basis:
    """Maximal independent subset of rows or columns of a matrix.

    ``pivot_indices`` lists the selected indices in increasing order.  Every
    other index ``a`` has ``certificates[a]``: the pivot indices whose xor
    reproduces it (empty for a zero vector).
    """

    pivot_indices: tuple[int, ...]
    certificates: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.pivot_indices)

    def dependent_indices(self) -> list[int]:
        return sorted(self.certificates)


def _rref(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduce ``rows`` in place to reduced row echelon form.

    Pivot columns are chosen leftmost-first, row swaps only.  Returns the
    nonzero reduced rows and their pivot columns.
    """
    rows = list(rows)
    pivots: list[int] = []
    r = 0
    n = len(rows)
    while r < n:
        union = 0
        for i in range(r, n):
            union |= rows[i]
        if not union:
            break
        col = (union & -union).bit_length() - 1
        bit = 1 << col
        for i in range(r, n):
            if rows[i] & bit:
                rows[r], rows[i] = rows[i], rows[r]
                break
        p = rows[r]
        for i in range(n):
            if i != r and rows[i] & bit:
                rows[i] ^= p
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def rank(m: BitMatrix) -> int:
    """GF(2) rank."""
    return len(_rref(list(m.rows))[1])


def independent_columns(m: BitMatrix) -> Basis:
    """Leftmost maximal independent column set with a certificate for every other column."""
    reduced, pivots = _rref(list(m.rows))
    pivot_set = set(pivots)
    members: dict[int, list[int]] = {j: [] for j in range(m.cols) if j not in pivot_set}
    if members and reduced:
        pivot_mask = 0
        for p in pivots:
            pivot_mask |= 1 << p
        if m.cols > 256:
            arr = ints_to_array([r & ~pivot_mask for r in reduced], m.cols)
            for i, p in enumerate(pivots):
                for j in np.flatnonzero(arr[i]).tolist():
                    members[j].append(p)
        else:
            for i, p in enumerate(pivots):
                for j in iter_bits(reduced[i] & ~pivot_mask):
                    members[j].append(p)
    certificates = {j: tuple(sorted(v)) for j, v in members.items()}
    return Basis(tuple(sorted(pivots)), certificates)


def independent_rows(m: BitMatrix) -> Basis:
    """Rows independent of all earlier rows, scanning in index order.

    Equivalent to :func:`independent_columns` on the transpose, computed
    directly on the row bitsets.
    """
    table: dict[int, tuple[int, int]] = {}  # lowest set bit -> (vector, combination of pivot rows)
    pivots: list[int] = []
    certificates: dict[int, tuple[int, ...]] = {}
    for i, row in enumerate(m.rows):
        v, combo = row, 0
        while v:
            low = v & -v
            entry = table.get(low)
            if entry is None:
                break
            v ^= entry[0]
            combo ^= entry[1]
        if v:
            table[v & -v] = (v, combo ^ (1 << i))
            pivots.append(i)
        else:
            certificates[i] = tuple(iter_bits(combo))
    return Basis(tuple(pivots), certificates)
