"""The subgroups Sp_0, Sp_1 fixing w0 and w1, their generators, and the
covering of Sp(Z2, 2g) by conjugates of them."""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BitMatrix, BitVector
from .quadform import (
    QuadraticForm,
    all_forms,
    arf,
    compose,
    difference_vector,
    evaluate,
    reference_form,
)
from .symplectic import (
    MatrixGroup,
    SymplecticMatrix,
    group_closure,
    symplectic_permutations,
    transvection,
)

_A0 = ((1, 1), (0, 1))
_A1 = ((1, 0, 0, 0), (0, 1, 0, 1), (1, 0, 1, 0), (0, 0, 0, 1))
_A2 = ((1, 0, 0, 0), (0, 1, 0, 1), (1, 0, 1, 1), (0, 0, 0, 1))


def _pad(block, g: int) -> SymplecticMatrix:
    a = BitMatrix.from_lists(block)
    rest = 2 * g - a.rows
    m = BitMatrix.block_diag(a, BitMatrix.identity(rest)) if rest else a
    return SymplecticMatrix.of(m)


def b_matrix(index: int, g: int) -> SymplecticMatrix:
    """B_0 = diag(A_0, I), B_1 = diag(A_1, I) or B_2 = diag(A_2, I)."""
    if index == 0:
        if g < 1:
            raise ValueError("B_0 needs g >= 1")
        return _pad(_A0, g)
    if index in (1, 2):
        if g < 2:
            raise ValueError(f"B_{index} needs g >= 2, got g={g}")
        return _pad(_A1 if index == 1 else _A2, g)
    raise ValueError(f"no matrix B_{index}")


def _shift(m: BitMatrix, offset: int, g: int) -> SymplecticMatrix:
    """Embed ``m`` as a diagonal block starting after ``offset`` coordinates."""
    blocks = []
    if offset:
        blocks.append(BitMatrix.identity(offset))
    blocks.append(m)
    rest = 2 * g - offset - m.rows
    if rest:
        blocks.append(BitMatrix.identity(rest))
    return SymplecticMatrix.of(BitMatrix.block_diag(*blocks))


def sp_generators(which: int, g: int) -> list[SymplecticMatrix]:
    """Generators of Sp_0 (which=0) or Sp_1 (which=1).

    Sp_0: the symplectic permutations, plus B_1 when g >= 2.
    Sp_1: Sp(Z2, 2) x Sp_0(Z2, 2g-2) as block-diagonal matrices (the first
    factor generated by B_0 and the swap e1 <-> e2, the second by the Sp_0
    generators in genus g-1), plus B_2 when g >= 2.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    if which == 0:
        gens = symplectic_permutations(g)
        if g >= 2:
            gens.append(b_matrix(1, g))
        return gens
    if which == 1:
        swap = BitMatrix.from_lists(((0, 1), (1, 0)))
        gens = [_shift(BitMatrix.from_lists(_A0), 0, g), _shift(swap, 0, g)]
        if g >= 2:
            gens += [_shift(m, 2, g) for m in sp_generators(0, g - 1)]
            gens.append(b_matrix(2, g))
        return gens
    raise ValueError(f"which must be 0 or 1, got {which}")


def sp_subgroup(which: int, g: int, parallel: bool = False) -> MatrixGroup:
    return group_closure(sp_generators(which, g), n=2 * g, parallel=parallel)


def membership(a: BitMatrix, which: int) -> bool:
    w = reference_form(which, a.rows // 2)
    return compose(w, a) == w


def alpha_set(which: int, g: int) -> list[BitVector]:
    """{Y : w_which(Y) = 0}."""
    w = reference_form(which, g)
    n = 2 * g
    return [y for y in (BitVector(n, b) for b in range(1 << n)) if evaluate(w, y) == 0]


@dataclass(frozen=True)
class CoverWitness:
    which: int
    y: BitVector
    fixed_form: QuadraticForm
    conjugate: SymplecticMatrix  # T_y a T_y, an element of Sp_which


def cover_witness(a: BitMatrix) -> CoverWitness:
    """Certify that ``a`` lies in T_y Sp_which T_y for some y in alpha_which.

    Tries w0, then w1, then every other form in increasing order of its
    packed basis values, stopping at the first one fixed by ``a``.  With
    ``which`` its Arf invariant and y the difference vector from w_which,
    w_which o T_y is that form, so T_y a T_y fixes w_which.  Elements of
    Sp_0 or Sp_1 themselves get y = 0.
    """
    a = SymplecticMatrix.of(a)
    g = a.g
    refs = [reference_form(0, g), reference_form(1, g)]
    order = refs + [w for w in all_forms(g) if w not in refs]
    fixed = next((w for w in order if compose(w, a) == w), None)
    if fixed is None:
        raise AssertionError(f"no quadratic form fixed by\n{a}")
    which = arf(fixed)
    ref = reference_form(which, g)
    y = difference_vector(ref, fixed)
    if evaluate(ref, y) != 0:
        raise AssertionError("difference vector not in alpha_which")
    t = transvection(y)
    conj = t @ a @ t
    if not membership(conj, which):
        raise AssertionError(f"T_y a T_y does not fix w_{which}")
    return CoverWitness(which, y, fixed, conj)


def sp0_vector_orbits(g: int) -> tuple[list[BitVector], list[BitVector]]:
    """Orbits of e_1 and of e_1 + e_2 under Sp_0, sorted by packed value."""
    n = 2 * g
    gens = sp_generators(0, g)
    e1 = BitVector.unit(n, 1)
    return _vector_orbit(e1, gens), _vector_orbit(e1 + BitVector.unit(n, 2), gens)


def _vector_orbit(x: BitVector, gens: list[SymplecticMatrix]) -> list[BitVector]:
    seen = {x.bits: x}
    frontier = [x]
    while frontier:
        nxt = []
        for v in frontier:
            for m in gens:
                u = m.apply(v)
                if u.bits not in seen:
                    seen[u.bits] = u
                    nxt.append(u)
        frontier = nxt
    return [seen[k] for k in sorted(seen)]
