"""Dense GF(2) vectors and matrices packed into Python ints.

Indices are 1-based to match the usual subscripts: entry ``i`` of a vector is
bit ``i - 1`` of its integer, and row ``i`` of a matrix is the ``i - 1``-th
element of its row tuple.  A whole matrix also has a single integer *key*
(row ``i`` occupies bits ``(i-1)*cols .. i*cols - 1``), used for hashing and
for the vectorised group code.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class SingularMatrixError(ArithmeticError):
    """The matrix has no inverse over GF(2)."""


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 1:
            raise DimensionError(f"length must be positive, got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#x} do not fit in length {self.length}")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, i: int) -> BitVector:
        """The basis vector e_i."""
        if not 1 <= i <= length:
            raise IndexError(i)
        return cls(length, 1 << (i - 1))

    @classmethod
    def from_list(cls, entries: Sequence[int]) -> BitVector:
        bits = 0
        for i, e in enumerate(entries):
            if e & 1:
                bits |= 1 << i
        return cls(len(entries), bits)

    @classmethod
    def from_str(cls, s: str) -> BitVector:
        """Parse ``"x1x2...xn"``; the first character is entry 1."""
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a bit string: {s!r}")
        return cls.from_list([int(ch) for ch in s])

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexError(f"index {i} outside 1..{self.length}")
        return (self.bits >> (i - 1)) & 1

    def set(self, i: int, value: int) -> BitVector:
        """Return a copy with entry ``i`` replaced."""
        if not 1 <= i <= self.length:
            raise IndexError(f"index {i} outside 1..{self.length}")
        mask = 1 << (i - 1)
        bits = (self.bits | mask) if value & 1 else (self.bits & ~mask)
        return BitVector(self.length, bits)

    def __len__(self) -> int:
        return self.length

    def __iter__(self):
        return (self[i] for i in range(1, self.length + 1))

    def __add__(self, other: BitVector) -> BitVector:
        _same_length(self, other)
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def dot(self, other: BitVector) -> int:
        _same_length(self, other)
        return parity(self.bits & other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_list(self) -> list[int]:
        return list(self)

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


def _same_length(x: BitVector, y: BitVector) -> None:
    if x.length != y.length:
        raise DimensionError(f"length mismatch: {x.length} vs {y.length}")


@dataclass(frozen=True, eq=False)
class BitMatrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionError(f"bad shape {self.rows}x{self.cols}")
        if len(self.data) != self.rows:
            raise DimensionError(f"expected {self.rows} rows, got {len(self.data)}")
        for r in self.data:
            if r < 0 or r >> self.cols:
                raise ValueError(f"row {r:#x} does not fit in {self.cols} columns")

    # construction

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> BitMatrix:
        if not entries:
            raise DimensionError("empty matrix")
        cols = len(entries[0])
        data = []
        for row in entries:
            if len(row) != cols:
                raise DimensionError("ragged rows")
            data.append(BitVector.from_list(row).bits)
        return cls(len(entries), cols, tuple(data))

    @classmethod
    def from_columns(cls, columns: Sequence[BitVector]) -> BitMatrix:
        """Matrix whose j-th column is ``columns[j-1]``."""
        rows = columns[0].length
        data = [0] * rows
        for j, col in enumerate(columns):
            if col.length != rows:
                raise DimensionError("columns of unequal length")
            for i in range(rows):
                if (col.bits >> i) & 1:
                    data[i] |= 1 << j
        return cls(rows, len(columns), tuple(data))

    @classmethod
    def from_key(cls, key: int, rows: int, cols: int) -> BitMatrix:
        mask = (1 << cols) - 1
        return cls(rows, cols, tuple((key >> (i * cols)) & mask for i in range(rows)))

    @classmethod
    def from_str(cls, s: str, rows: int, cols: int) -> BitMatrix:
        """Row-major bit string, first character is entry (1, 1)."""
        if len(s) != rows * cols:
            raise DimensionError(f"need {rows * cols} bits, got {len(s)}")
        v = BitVector.from_str(s)
        return cls.from_lists([[v[i * cols + j + 1] for j in range(cols)] for i in range(rows)])

    @classmethod
    def block_diag(cls, *blocks: BitMatrix) -> BitMatrix:
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        data = []
        offset = 0
        for b in blocks:
            data.extend(r << offset for r in b.data)
            offset += b.cols
        return cls(rows, cols, tuple(data))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def key(self) -> int:
        k = 0
        for i, r in enumerate(self.data):
            k |= r << (i * self.cols)
        return k

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return (self.data[i - 1] >> (j - 1)) & 1

    def row(self, i: int) -> BitVector:
        if not 1 <= i <= self.rows:
            raise IndexError(i)
        return BitVector(self.cols, self.data[i - 1])

    def column(self, j: int) -> BitVector:
        if not 1 <= j <= self.cols:
            raise IndexError(j)
        bits = 0
        for i, r in enumerate(self.data):
            bits |= ((r >> (j - 1)) & 1) << i
        return BitVector(self.rows, bits)

    def columns(self) -> list[BitVector]:
        return [self.column(j) for j in range(1, self.cols + 1)]

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def to_str(self) -> str:
        return "".join(str(b) for row in self.to_lists() for b in row)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(r == 1 << i for i, r in enumerate(self.data))

    def is_zero(self) -> bool:
        return not any(self.data)

    # arithmetic

    def transpose(self) -> BitMatrix:
        return BitMatrix.from_columns([BitVector(self.cols, r) for r in self.data])

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return self.apply(other)
        return mat_mul(self, other)

    def apply(self, x: BitVector) -> BitVector:
        """The column vector ``self @ x``."""
        if x.length != self.cols:
            raise DimensionError(f"cannot apply {self.shape} matrix to length {x.length}")
        bits = 0
        for i, r in enumerate(self.data):
            bits |= parity(r & x.bits) << i
        return BitVector(self.rows, bits)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(b) for b in row) for row in self.to_lists())


def row_times(v: int, data: Sequence[int]) -> int:
    """Row vector ``v`` (packed) times the matrix with rows ``data``."""
    out = 0
    k = 0
    while v:
        if v & 1:
            out ^= data[k]
        v >>= 1
        k += 1
    return out


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return BitMatrix(a.rows, b.cols, tuple(row_times(r, b.data) for r in a.data))


def _eliminate(data: list[int], ncols: int, companion: list[int] | None = None) -> int:
    """Reduce ``data`` in place to reduced row-echelon form; returns the rank.

    Pivot is the first row (from the current position) with a 1 in the
    column.  Row operations are mirrored on ``companion`` when given.
    """
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = next((r for r in range(rank, len(data)) if data[r] & bit), None)
        if pivot is None:
            continue
        data[rank], data[pivot] = data[pivot], data[rank]
        if companion is not None:
            companion[rank], companion[pivot] = companion[pivot], companion[rank]
        for r in range(len(data)):
            if r != rank and data[r] & bit:
                data[r] ^= data[rank]
                if companion is not None:
                    companion[r] ^= companion[rank]
        rank += 1
        if rank == len(data):
            break
    return rank


def rank(a: BitMatrix) -> int:
    return _eliminate(list(a.data), a.cols)


def mat_inverse(a: BitMatrix) -> BitMatrix:
    """Gauss-Jordan inverse; raises :class:`SingularMatrixError` if singular."""
    if a.rows != a.cols:
        raise DimensionError(f"cannot invert non-square {a.shape} matrix")
    work = list(a.data)
    inv = [1 << i for i in range(a.rows)]
    if _eliminate(work, a.cols, inv) < a.rows:
        raise SingularMatrixError("matrix is singular over GF(2)")
    return BitMatrix(a.rows, a.cols, tuple(inv))


def is_invertible(a: BitMatrix) -> bool:
    return a.rows == a.cols and rank(a) == a.rows


def all_vectors(length: int) -> Iterable[BitVector]:
    for bits in range(1 << length):
        yield BitVector(length, bits)
