"""Exact linear algebra over GF(2) on int bitsets.

Bit ``i`` of a vector is bit ``i`` of the underlying Python int, so XOR is
vector addition and ``(row & x).bit_count() & 1`` is a dot product.  A matrix
is a tuple of row ints.

The hex wire format packs bits little-endian into bytes (equivalently into
little-endian 64-bit words) and prefixes the bit length: ``"12:0d0a"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


class NotInKernelError(ValueError):
    pass


def _mask(n: int) -> int:
    return (1 << n) - 1


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class BitVector:
    n: int
    value: int = 0

    def __post_init__(self):
        if self.n <= 0:
            raise DimensionError("bit vectors need a positive length")
        if self.value < 0 or self.value >> self.n:
            raise ValueError(f"value does not fit in {self.n} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        value = 0
        for i, b in enumerate(bits):
            if b:
                value |= 1 << i
        return cls(len(bits), value)

    @classmethod
    def from_str(cls, s: str) -> "BitVector":
        """Parse a bit string written index 0 first, e.g. ``"110"``."""
        return cls.from_bits([int(c) for c in s])

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    def bits(self) -> list[int]:
        return [(self.value >> i) & 1 for i in range(self.n)]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.value >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if other.n != self.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")
        return BitVector(self.n, self.value ^ other.value)

    __add__ = __xor__

    def weight(self) -> int:
        return self.value.bit_count()

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits())

    def to_hex(self) -> str:
        nbytes = (self.n + 7) // 8
        return f"{self.n}:{self.value.to_bytes(nbytes, 'little').hex()}"

    @classmethod
    def from_hex(cls, text: str) -> "BitVector":
        head, _, body = text.strip().partition(":")
        n = int(head)
        raw = bytes.fromhex(body)
        if len(raw) != (n + 7) // 8:
            raise ValueError(f"expected {(n + 7) // 8} bytes for {n} bits, got {len(raw)}")
        value = int.from_bytes(raw, "little")
        if value >> n:
            raise ValueError("nonzero padding bits beyond the declared length")
        return cls(n, value)


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        limit = 1 << self.cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row does not fit in {self.cols} columns")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != cols:
                raise DimensionError("ragged matrix")
            packed.append(BitVector.from_bits(row).value if cols else 0)
        return cls(tuple(packed), cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls((0,) * rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[int], nrows: int) -> "BitMatrix":
        rows = [0] * nrows
        for j, col in enumerate(columns):
            while col:
                low = col & -col
                rows[low.bit_length() - 1] |= 1 << j
                col ^= low
        return cls(tuple(rows), len(columns))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.cols

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.rows]

    def column(self, j: int) -> int:
        col = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                col |= 1 << i
        return col

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.cols != self.cols:
            raise DimensionError("column mismatch")
        return BitMatrix(self.rows + other.rows, self.cols)

    def apply(self, x: int) -> int:
        """Product with a raw int vector; no length checks."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & x).bit_count() & 1:
                out |= 1 << i
        return out

    def __matmul__(self, x: BitVector) -> BitVector:
        return mat_vec_mul(self, x)

    def to_text(self) -> str:
        return "\n".join(BitVector(self.cols, r).to_hex() for r in self.rows)

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        vecs = [BitVector.from_hex(line) for line in text.splitlines() if line.strip()]
        if not vecs:
            raise ValueError("empty matrix text")
        cols = vecs[0].n
        if any(v.n != cols for v in vecs):
            raise DimensionError("rows of different lengths")
        return cls(tuple(v.value for v in vecs), cols)


def mat_vec_mul(H: BitMatrix, x: BitVector) -> BitVector:
    if H.cols != x.n:
        raise DimensionError(f"matrix has {H.cols} columns, vector has {x.n} bits")
    if not H.rows:
        raise DimensionError("matrix with no rows has no output space")
    return BitVector(H.nrows, H.apply(x.value))


def rref(H: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form; pivots are taken at the lowest column index."""
    work = list(H.rows)
    pivots: list[int] = []
    r = 0
    for col in range(H.cols):
        bit = 1 << col
        pivot = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return BitMatrix(tuple(work), H.cols), pivots


def rank(H: BitMatrix) -> int:
    return len(rref(H)[1])


@dataclass(frozen=True)
class NullSpaceBasis:
    n: int
    k: int
    basis: tuple[int, ...]
    pivot_cols: tuple[int, ...]
    free_cols: tuple[int, ...]
    matrix: BitMatrix

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.n, v) for v in self.basis]


def null_space(H: BitMatrix) -> NullSpaceBasis:
    R, pivots = rref(H)
    pivot_set = set(pivots)
    free = [j for j in range(H.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = 1 << f
        for row, p in zip(R.rows, pivots):
            if (row >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return NullSpaceBasis(H.cols, len(free), tuple(basis), tuple(pivots), tuple(free), H)


def nullspace_codeword(basis: NullSpaceBasis, m: int, k_used: int | None = None) -> BitVector:
    """The ``m``-th kernel element: bit ``j`` of ``m`` selects ``basis[j]``."""
    k = basis.k if k_used is None else k_used
    if k > basis.k:
        raise ValueError(f"code uses {k} message bits but the kernel has dimension {basis.k}")
    if not 0 <= m < (1 << k):
        raise ValueError(f"message {m} out of range for {k} bits")
    x = 0
    j = 0
    while m:
        if m & 1:
            x ^= basis.basis[j]
        m >>= 1
        j += 1
    return BitVector(basis.n, x)


def message_of_codeword(basis: NullSpaceBasis, x: BitVector) -> int:
    if x.n != basis.n:
        raise DimensionError("codeword length mismatch")
    if basis.matrix.apply(x.value):
        raise NotInKernelError("vector is not in the kernel of the parity-check matrix")
    m = 0
    for j, f in enumerate(basis.free_cols):
        if (x.value >> f) & 1:
            m |= 1 << j
    return m


def span(vectors: Iterable[int]) -> list[int]:
    """All GF(2) combinations of ``vectors``, without repeats."""
    elems = {0}
    for v in vectors:
        if v in elems:
            continue
        elems |= {e ^ v for e in elems}
    return sorted(elems)
