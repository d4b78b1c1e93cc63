"""Quadratic refinements of the intersection form and their Arf invariant.

A refinement w satisfies w(x + y) = w(x) + w(y) + x.y, so it is fixed by its
values on the basis:  w(x) = sum x_i w(e_i) + sum_k x_{2k-1} x_{2k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .gf2 import BitMatrix, BitVector, DimensionError, parity
from .symplectic import (
    NotSymplecticError,
    _odd_mask,
    is_symplectic,
    key_columns,
    pair_swap,
    parity_u64,
)


@dataclass(frozen=True)
class QuadraticForm:
    g: int
    basis_values: BitVector

    def __post_init__(self):
        if self.basis_values.length != 2 * self.g:
            raise DimensionError(f"need {2 * self.g} basis values, got {self.basis_values.length}")

    @classmethod
    def from_str(cls, s: str) -> QuadraticForm:
        v = BitVector.from_str(s)
        if v.length % 2:
            raise DimensionError("odd number of basis values")
        return cls(v.length // 2, v)

    def __call__(self, x: BitVector) -> int:
        return evaluate(self, x)

    def __str__(self) -> str:
        return str(self.basis_values)


def omega0(g: int) -> QuadraticForm:
    """w0(x) = sum x_{2k-1} x_{2k}; Arf invariant 0."""
    return QuadraticForm(g, BitVector.zeros(2 * g))


def omega1(g: int) -> QuadraticForm:
    """w1(x) = w0(x) + x_1 + x_2; Arf invariant 1."""
    return QuadraticForm(g, BitVector(2 * g, 0b11))


def reference_form(which: int, g: int) -> QuadraticForm:
    if which not in (0, 1):
        raise ValueError(f"which must be 0 or 1, got {which}")
    return omega1(g) if which else omega0(g)


def all_forms(g: int) -> Iterator[QuadraticForm]:
    """Every refinement, in increasing order of the packed basis values."""
    n = 2 * g
    for bits in range(1 << n):
        yield QuadraticForm(g, BitVector(n, bits))


def _quadratic_part(bits: int, n: int) -> int:
    m = _odd_mask(n)
    return parity(bits & (bits >> 1) & m)


def evaluate(w: QuadraticForm, x: BitVector) -> int:
    if x.length != 2 * w.g:
        raise DimensionError(f"vector of length {x.length} for a genus-{w.g} form")
    return parity(x.bits & w.basis_values.bits) ^ _quadratic_part(x.bits, x.length)


def arf(w: QuadraticForm) -> int:
    b = w.basis_values.bits
    return _quadratic_part(b, 2 * w.g)


def compose(w: QuadraticForm, a: BitMatrix) -> QuadraticForm:
    """The form x -> w(a x)."""
    if a.shape != (2 * w.g, 2 * w.g):
        raise DimensionError(f"{a.shape} matrix for a genus-{w.g} form")
    if not is_symplectic(a):
        raise NotSymplecticError("can only compose a quadratic form with a symplectic matrix")
    return QuadraticForm(w.g, BitVector.from_list([evaluate(w, col) for col in a.columns()]))


def difference_vector(w: QuadraticForm, w2: QuadraticForm) -> BitVector:
    """The V with w2(x) - w(x) = V.x for every x.

    The difference is linear with coefficients d_i = w2(e_i) - w(e_i); since
    e_i . x reads the pair partner of i, V is d with pairs swapped.
    """
    if w.g != w2.g:
        raise DimensionError("forms of different genus")
    n = 2 * w.g
    return BitVector(n, pair_swap(w.basis_values.bits ^ w2.basis_values.bits, n))


def zero_set(w: QuadraticForm) -> list[BitVector]:
    n = 2 * w.g
    return [x for x in (BitVector(n, b) for b in range(1 << n)) if evaluate(w, x) == 0]


def compose_keys(keys: np.ndarray, n: int, w: QuadraticForm, columns: list[np.ndarray] | None = None) -> np.ndarray:
    """Packed basis values of ``compose(w, a)`` for every packed key a.

    ``columns`` may carry a precomputed ``key_columns(keys, n)``.
    """
    odd = np.uint64(_odd_mask(n))
    wb = np.uint64(w.basis_values.bits)
    out = np.zeros(keys.shape, dtype=np.uint64)
    for j, col in enumerate(columns if columns is not None else key_columns(keys, n)):
        value = parity_u64(col & wb) ^ parity_u64(col & (col >> np.uint64(1)) & odd)
        out |= value << np.uint64(j)
    return out


def fixes_form_mask(keys: np.ndarray, n: int, w: QuadraticForm, columns: list[np.ndarray] | None = None) -> np.ndarray:
    """Vectorised ``compose(w, a) == w`` over packed matrix keys."""
    return compose_keys(keys, n, w, columns) == np.uint64(w.basis_values.bits)


def fixed_forms_bitmask(keys: np.ndarray, n: int, columns: list[np.ndarray] | None = None) -> np.ndarray:
    """For each key a, a 2^n-bit mask whose bit b says a fixes the form with packed values b.

    Uses one lookup table per column: column j of a is compatible with w when
    w(a e_j) = w_j.  Needs n <= 6 so the mask fits in 64 bits.
    """
    if n > 6:
        raise ValueError("bitmask of forms needs n <= 6")
    size = 1 << n
    table = np.zeros((n, size), dtype=np.uint64)
    for j in range(n):
        for col in range(size):
            quad = _quadratic_part(col, n)
            mask = 0
            for w in range(size):
                if parity(col & w) ^ quad == (w >> j) & 1:
                    mask |= 1 << w
            table[j, col] = mask
    out = np.full(keys.shape, np.uint64((1 << size) - 1))
    for j, col in enumerate(columns if columns is not None else key_columns(keys, n)):
        out &= table[j][col.astype(np.intp)]
    return out
