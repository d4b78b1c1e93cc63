"""The group rings Z[Z2] = Z[t]/(1 - t^2) and Z2[Z2] = Z2[t]/(1 - t^2).

Since t^2 = 1, an element is just a pair ``a + b*t``.  Matrices over Z2[Z2]
are stored as two GF(2) matrices (constant part and t part), so products
reduce to four GF(2) products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gf2 import BitMatrix, DimensionError, SingularMatrixError, mat_inverse
from . import gf2


@dataclass(frozen=True)
class GroupRingElement2:
    """``a + b*t`` in Z2[t]/(1 - t^2)."""

    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise ValueError(f"coefficients must be bits, got ({self.a}, {self.b})")

    def __add__(self, other: GroupRingElement2) -> GroupRingElement2:
        return GroupRingElement2(self.a ^ other.a, self.b ^ other.b)

    __sub__ = __add__

    def __neg__(self) -> GroupRingElement2:
        return self

    def __mul__(self, other: GroupRingElement2) -> GroupRingElement2:
        a, b, c, d = self.a, self.b, other.a, other.b
        return GroupRingElement2((a & c) ^ (b & d), (a & d) ^ (b & c))

    def augment(self) -> int:
        """Image under t -> 1."""
        return self.a ^ self.b

    def is_unit(self) -> bool:
        return self.augment() == 1

    def __str__(self) -> str:
        return {(0, 0): "0", (1, 0): "1", (0, 1): "t", (1, 1): "1+t"}[(self.a, self.b)]

    @classmethod
    def parse(cls, s: str) -> GroupRingElement2:
        table = {"0": (0, 0), "1": (1, 0), "t": (0, 1), "1+t": (1, 1), "t+1": (1, 1)}
        try:
            return cls(*table[s.replace(" ", "")])
        except KeyError:
            raise ValueError(f"not an element of Z2[Z2]: {s!r}") from None


ZERO = GroupRingElement2(0, 0)
ONE = GroupRingElement2(1, 0)
T = GroupRingElement2(0, 1)
ONE_PLUS_T = GroupRingElement2(1, 1)
ELEMENTS2 = (ZERO, ONE, T, ONE_PLUS_T)


@dataclass(frozen=True)
class GroupRingElementZ:
    """``a + b*t`` in Z[t]/(1 - t^2)."""

    a: int = 0
    b: int = 0

    def __add__(self, other: GroupRingElementZ) -> GroupRingElementZ:
        return GroupRingElementZ(self.a + other.a, self.b + other.b)

    def __sub__(self, other: GroupRingElementZ) -> GroupRingElementZ:
        return GroupRingElementZ(self.a - other.a, self.b - other.b)

    def __neg__(self) -> GroupRingElementZ:
        return GroupRingElementZ(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElementZ(self.a * other, self.b * other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return GroupRingElementZ(a * c + b * d, a * d + b * c)

    __rmul__ = __mul__

    def augment(self) -> int:
        return self.a + self.b

    def mod2(self) -> GroupRingElement2:
        return GroupRingElement2(self.a & 1, self.b & 1)

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}t"


@dataclass(frozen=True)
class GroupRingMatrix2:
    """Matrix ``const + t * tpart`` over Z2[Z2]."""

    const: BitMatrix
    tpart: BitMatrix

    def __post_init__(self):
        if self.const.shape != self.tpart.shape:
            raise DimensionError("constant and t parts differ in shape")

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[GroupRingElement2]]) -> GroupRingMatrix2:
        return cls(
            BitMatrix.from_lists([[e.a for e in row] for row in entries]),
            BitMatrix.from_lists([[e.b for e in row] for row in entries]),
        )

    @classmethod
    def lift(cls, m: BitMatrix) -> GroupRingMatrix2:
        """A GF(2) matrix viewed over Z2[Z2] (no t part)."""
        return cls(m, BitMatrix.zeros(m.rows, m.cols))

    @classmethod
    def identity(cls, n: int) -> GroupRingMatrix2:
        return cls.lift(BitMatrix.identity(n))

    @classmethod
    def scalar(cls, s: GroupRingElement2, m: BitMatrix) -> GroupRingMatrix2:
        """``s * m`` for a GF(2) matrix ``m``."""
        z = BitMatrix.zeros(m.rows, m.cols)
        return cls(m if s.a else z, m if s.b else z)

    @property
    def rows(self) -> int:
        return self.const.rows

    @property
    def cols(self) -> int:
        return self.const.cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.const.shape

    def entry(self, i: int, j: int) -> GroupRingElement2:
        return GroupRingElement2(self.const.entry(i, j), self.tpart.entry(i, j))

    def to_entries(self) -> list[list[GroupRingElement2]]:
        return [[self.entry(i, j) for j in range(1, self.cols + 1)] for i in range(1, self.rows + 1)]

    def __add__(self, other: GroupRingMatrix2) -> GroupRingMatrix2:
        return GroupRingMatrix2(self.const + other.const, self.tpart + other.tpart)

    def __matmul__(self, other: GroupRingMatrix2) -> GroupRingMatrix2:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        a, b, c, d = self.const, self.tpart, other.const, other.tpart
        return GroupRingMatrix2(a @ c + b @ d, a @ d + b @ c)

    def is_identity(self) -> bool:
        return self.const.is_identity() and self.tpart.is_zero()

    def __str__(self) -> str:
        rows = [[str(e) for e in row] for row in self.to_entries()]
        width = max(len(s) for row in rows for s in row)
        return "\n".join(" ".join(s.rjust(width) for s in row) for row in rows)


def augment(m: GroupRingMatrix2) -> BitMatrix:
    """Entrywise t -> 1."""
    return m.const + m.tpart


def is_invertible(m: GroupRingMatrix2) -> bool:
    """A square matrix over Z2[Z2] is invertible iff its augmentation is."""
    if m.rows != m.cols:
        raise DimensionError(f"non-square {m.shape} matrix")
    return gf2.is_invertible(augment(m))


def inverse(m: GroupRingMatrix2) -> GroupRingMatrix2:
    """Inverse as ``B0^-1 m B0^-1`` where ``B0`` is the augmentation.

    Writing ``m = B0 + (1+t)K`` gives ``(B0^-1 m)^2 = 1`` because
    ``(1+t)^2 = 0`` in characteristic two.
    """
    if m.rows != m.cols:
        raise DimensionError(f"non-square {m.shape} matrix")
    try:
        b0_inv = GroupRingMatrix2.lift(mat_inverse(augment(m)))
    except SingularMatrixError:
        raise SingularMatrixError("matrix is not invertible over Z2[Z2]") from None
    inv = b0_inv @ m @ b0_inv
    assert (inv @ m).is_identity() and (m @ inv).is_identity()
    return inv
