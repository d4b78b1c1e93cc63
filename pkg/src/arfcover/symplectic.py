"""The symplectic space (Z2^2g, .) and the group Sp(Z2, 2g).

Hyperbolic pairs are adjacent: e_{2k-1} . e_{2k} = 1 and every other pair of
basis vectors is orthogonal.  A matrix acts on column vectors, so its j-th
column is the image of e_j.

Group enumeration works on integer matrix keys (see :mod:`arfcover.gf2`) with
numpy; it is limited to g <= 3, where |Sp(Z2, 6)| = 1451520.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .gf2 import BitMatrix, BitVector, DimensionError, parity, row_times

MAX_ENUMERATION_GENUS = 3


class NotSymplecticError(ValueError):
    pass


class EnumerationLimitError(ValueError):
    """Refused to enumerate a group that is too large."""


def _odd_mask(n: int) -> int:
    """Bits of the odd-indexed entries e_1, e_3, ... of a length-n vector."""
    return int("01" * (n // 2), 2) if n else 0


def pair_swap(bits: int, n: int) -> int:
    """Exchange entries 2k-1 and 2k of a packed vector."""
    m = _odd_mask(n)
    return ((bits & m) << 1) | ((bits >> 1) & m)


def intersection_product(x: BitVector, y: BitVector) -> int:
    if x.length != y.length:
        raise DimensionError(f"length mismatch: {x.length} vs {y.length}")
    if x.length % 2:
        raise DimensionError(f"odd length {x.length}")
    return parity(x.bits & pair_swap(y.bits, y.length))


def pairing_matrix(g: int) -> BitMatrix:
    n = 2 * g
    return BitMatrix(n, n, tuple(1 << (i ^ 1) for i in range(n)))


def is_symplectic(m: BitMatrix) -> bool:
    if m.rows != m.cols:
        raise DimensionError(f"non-square {m.shape} matrix")
    if m.rows % 2:
        raise DimensionError(f"odd dimension {m.rows}")
    return _columns_symplectic(m)


def _columns_symplectic(m: BitMatrix) -> bool:
    n = m.rows
    cols = [m.column(j).bits for j in range(1, n + 1)]
    swapped = [pair_swap(c, n) for c in cols]
    for i in range(n):
        for j in range(i, n):
            if parity(cols[i] & swapped[j]) != (1 if j == (i ^ 1) else 0):
                return False
    return True


@dataclass(frozen=True, eq=False)
class SymplecticMatrix(BitMatrix):
    """A 2g x 2g matrix preserving the intersection product."""

    def __post_init__(self):
        super().__post_init__()
        if self.rows != self.cols or self.rows % 2:
            raise DimensionError(f"symplectic matrices are 2g x 2g, got {self.shape}")
        if not _columns_symplectic(self):
            raise NotSymplecticError("matrix does not preserve the intersection product")

    @classmethod
    def of(cls, m: BitMatrix) -> SymplecticMatrix:
        if isinstance(m, SymplecticMatrix):
            return m
        return cls(m.rows, m.cols, m.data)

    @classmethod
    def identity(cls, n: int) -> SymplecticMatrix:
        return cls.of(BitMatrix.identity(n))

    @property
    def g(self) -> int:
        return self.rows // 2

    def __matmul__(self, other):
        out = super().__matmul__(other)
        if isinstance(other, SymplecticMatrix):
            return SymplecticMatrix(out.rows, out.cols, out.data)
        return out


def transvection(y: BitVector) -> SymplecticMatrix:
    """Matrix of x -> x + (y.x) y."""
    n = y.length
    if n % 2:
        raise DimensionError(f"odd length {n}")
    cols = []
    for j in range(1, n + 1):
        e = BitVector.unit(n, j)
        cols.append(e + y if intersection_product(y, e) else e)
    return SymplecticMatrix.of(BitMatrix.from_columns(cols))


def transvections(g: int) -> list[SymplecticMatrix]:
    """T_y for every nonzero y, ordered by the integer value of y."""
    n = 2 * g
    return [transvection(BitVector(n, bits)) for bits in range(1, 1 << n)]


def permutation_matrix(perm: Sequence[int]) -> BitMatrix:
    """Matrix sending e_j to e_{perm[j-1]} (1-based images)."""
    n = len(perm)
    return BitMatrix.from_columns([BitVector.unit(n, p) for p in perm])


def symplectic_permutations(g: int) -> list[SymplecticMatrix]:
    """Generators of the pairing-preserving permutation matrices.

    The g swaps e_{2k-1} <-> e_{2k}, then the g-1 swaps of adjacent
    hyperbolic pairs.  They generate a group of order 2^g * g!.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    n = 2 * g
    gens = []
    for k in range(g):
        perm = list(range(1, n + 1))
        perm[2 * k], perm[2 * k + 1] = perm[2 * k + 1], perm[2 * k]
        gens.append(SymplecticMatrix.of(permutation_matrix(perm)))
    for k in range(g - 1):
        perm = list(range(1, n + 1))
        perm[2 * k : 2 * k + 2], perm[2 * k + 2 : 2 * k + 4] = perm[2 * k + 2 : 2 * k + 4], perm[2 * k : 2 * k + 2]
        gens.append(SymplecticMatrix.of(permutation_matrix(perm)))
    return gens


def classical_order(g: int) -> int:
    """|Sp(Z2, 2g)| = 2^(g^2) * prod_{i=1..g} (2^(2i) - 1)."""
    return 2 ** (g * g) * math.prod(4**i - 1 for i in range(1, g + 1))


# --- vectorised closure -------------------------------------------------------


def _chunk_rows(n: int) -> int:
    return max(1, min(n, 12 // n))


def _right_table(gen: BitMatrix) -> np.ndarray:
    """Lookup table for X -> X @ gen on packed chunks of rows of X."""
    n = gen.rows
    k = _chunk_rows(n)
    rowprod = np.array([row_times(v, gen.data) for v in range(1 << n)], dtype=np.uint64)
    idx = np.arange(1 << (k * n), dtype=np.uint64)
    table = np.zeros_like(idx)
    rmask = np.uint64((1 << n) - 1)
    for r in range(k):
        shift = np.uint64(r * n)
        table |= rowprod[(idx >> shift) & rmask] << shift
    return table


def _right_multiply(keys: np.ndarray, table: np.ndarray, n: int) -> np.ndarray:
    k = _chunk_rows(n)
    width = k * n
    mask = np.uint64((1 << width) - 1)
    out = np.zeros_like(keys)
    for c in range(0, n, k):
        shift = np.uint64(c * n)
        out |= table[(keys >> shift) & mask] << shift
    return out


def _isin_sorted(x: np.ndarray, sorted_arr: np.ndarray) -> np.ndarray:
    if sorted_arr.size == 0:
        return np.zeros(x.shape, dtype=bool)
    pos = np.searchsorted(sorted_arr, x)
    pos[pos == sorted_arr.size] = 0
    return sorted_arr[pos] == x


class MatrixGroup:
    """A finite group of n x n GF(2) matrices held as packed integer keys.

    ``keys`` lists the elements in breadth-first discovery order (identity
    first); iteration follows that order.
    """

    def __init__(self, n: int, keys: np.ndarray):
        self.n = n
        self.keys = keys
        self.sorted_keys = np.sort(keys)
        self._elements: list[SymplecticMatrix] | None = None

    @property
    def order(self) -> int:
        return int(self.keys.size)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, m: BitMatrix) -> bool:
        if m.shape != (self.n, self.n):
            return False
        return bool(_isin_sorted(np.array([m.key], dtype=np.uint64), self.sorted_keys)[0])

    def contains_keys(self, keys: np.ndarray) -> np.ndarray:
        return _isin_sorted(keys, self.sorted_keys)

    def element(self, i: int) -> SymplecticMatrix:
        m = BitMatrix.from_key(int(self.keys[i]), self.n, self.n)
        return SymplecticMatrix(m.rows, m.cols, m.data)

    def elements(self) -> list[SymplecticMatrix]:
        if self._elements is None:
            self._elements = [self.element(i) for i in range(self.order)]
        return self._elements

    def __iter__(self) -> Iterator[SymplecticMatrix]:
        if self._elements is not None:
            return iter(self._elements)
        return (self.element(i) for i in range(self.order))

    def key_set(self) -> frozenset[int]:
        return frozenset(int(k) for k in self.keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGroup):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.sorted_keys, other.sorted_keys)

    __hash__ = None

    def __repr__(self) -> str:
        return f"MatrixGroup(n={self.n}, order={self.order})"


def group_closure(gens: Sequence[BitMatrix], n: int | None = None, parallel: bool = False) -> MatrixGroup:
    """The group generated by ``gens``, by breadth-first right multiplication.

    Layer by layer, new elements are recorded in (generator, frontier
    position) order, so the result does not depend on ``parallel``.
    """
    if n is None:
        if not gens:
            raise ValueError("need n when there are no generators")
        n = gens[0].rows
    for m in gens:
        if m.shape != (n, n):
            raise DimensionError(f"generator of shape {m.shape}, expected {n}x{n}")
    if n > 2 * MAX_ENUMERATION_GENUS:
        raise EnumerationLimitError(
            f"refusing to enumerate matrices of size {n} (g > {MAX_ENUMERATION_GENUS}); "
            f"|Sp(Z2, {n})| would be {classical_order(n // 2)}"
        )
    tables = [_right_table(m) for m in gens]
    ident = np.array([BitMatrix.identity(n).key], dtype=np.uint64)
    layers = [ident]
    visited = ident.copy()
    frontier = ident
    pool = ThreadPoolExecutor() if parallel and len(tables) > 1 else None
    try:
        while frontier.size:
            if pool is not None:
                products = list(pool.map(lambda t: _right_multiply(frontier, t, n), tables))
            else:
                products = [_right_multiply(frontier, t, n) for t in tables]
            cand = np.concatenate(products) if products else np.empty(0, dtype=np.uint64)
            uniq, first = np.unique(cand, return_index=True)
            new = cand[np.sort(first[~_isin_sorted(uniq, visited)])]
            if new.size:
                layers.append(new)
                visited = np.sort(np.concatenate([visited, new]))
            frontier = new
    finally:
        if pool is not None:
            pool.shutdown()
    return MatrixGroup(n, np.concatenate(layers))


def standard_generators(g: int) -> list[SymplecticMatrix]:
    """A small generating set of Sp(Z2, 2g): the symplectic permutations,
    T_{e1} and (for g >= 2) T_{e1+e3}."""
    n = 2 * g
    gens = symplectic_permutations(g) + [transvection(BitVector.unit(n, 1))]
    if g >= 2:
        gens.append(transvection(BitVector.unit(n, 1) + BitVector.unit(n, 3)))
    return gens


@lru_cache(maxsize=None)
def symplectic_group(g: int) -> MatrixGroup:
    """Sp(Z2, 2g), enumerated from :func:`standard_generators`."""
    return group_closure(standard_generators(g), n=2 * g)


# --- vectorised per-element helpers ---------------------------------------


def key_columns(keys: np.ndarray, n: int) -> list[np.ndarray]:
    """Packed column vectors (image of e_j) for each key, j = 1..n."""
    cols = []
    for j in range(n):
        col = np.zeros_like(keys)
        for i in range(n):
            col |= ((keys >> np.uint64(i * n + j)) & np.uint64(1)) << np.uint64(i)
        cols.append(col)
    return cols


def parity_u64(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    for s in (32, 16, 8, 4, 2, 1):
        x ^= x >> np.uint64(s)
    return x & np.uint64(1)
