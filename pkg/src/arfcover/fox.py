"""Free differential calculus on the presentation of pi_1 P.

Generators are u_0 (the fibre) and u_1..u_2g; relators are
R_i = [u_i, u_0] for 1 <= i <= 2g and R_0 = prod_l [u_{2l-1}, u_{2l}] u_0^q,
with [a, b] = a b a^-1 b^-1.

Matrices follow the convention m_ji = phi(dR_i / du_j): row j is the
generator, column i the relator.  Both are ordered 1, ..., 2g, 0, so u_0 and
R_0 sit in the last row and column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .covering import SpecialCovering
from .gf2 import BitMatrix, BitVector
from .group_ring import (
    ONE_PLUS_T,
    GroupRingElement2,
    GroupRingElementZ,
    GroupRingMatrix2,
    inverse,
    is_invertible,
)
from .symplectic import pair_swap

Letter = tuple[int, int]
Word = tuple[Letter, ...]

ZERO_Z = GroupRingElementZ(0, 0)
ONE_Z = GroupRingElementZ(1, 0)
T_Z = GroupRingElementZ(0, 1)


# --- words -------------------------------------------------------------------


def word(*letters: Letter) -> Word:
    for gen, exp in letters:
        if exp not in (1, -1):
            raise ValueError(f"exponent must be +-1, got {exp}")
    return tuple(letters)


def invert(w: Word) -> Word:
    return tuple((gen, -exp) for gen, exp in reversed(w))


def power(gen: int, k: int) -> Word:
    return ((gen, 1 if k > 0 else -1),) * abs(k)


def commutator(a: Word, b: Word) -> Word:
    return a + b + invert(a) + invert(b)


def free_reduce(w: Word) -> Word:
    out: list[Letter] = []
    for letter in w:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def gen(i: int) -> Word:
    return ((i, 1),)


def generator_order(g: int) -> list[int]:
    return list(range(1, 2 * g + 1)) + [0]


def relators(g: int, q: int) -> list[Word]:
    """R_1, ..., R_2g, R_0."""
    rels = [commutator(gen(i), gen(0)) for i in range(1, 2 * g + 1)]
    r0: Word = ()
    for l in range(1, g + 1):
        r0 += commutator(gen(2 * l - 1), gen(2 * l))
    rels.append(r0 + power(0, q))
    return rels


# --- the engine --------------------------------------------------------------


def covering_images(phi: SpecialCovering) -> list[int]:
    """Exponent of t in phi(u_k), indexed by generator k = 0..2g."""
    return [1] + list(phi.n)


def fox_derivative_images(w: Word, j: int, images: Sequence[int]) -> GroupRingElementZ:
    """phi(dw/du_j) where phi(u_k) = t^images[k].

    Left to right: d(uv) = du + u dv, du_j/du_j = 1, du_j^-1/du_j = -u_j^-1.
    """
    if not 0 <= j < len(images):
        raise IndexError(f"generator index {j} out of range 0..{len(images) - 1}")
    acc = ZERO_Z
    prefix = 0  # phi(prefix) = t^prefix
    for k, exp in w:
        if not 0 <= k < len(images):
            raise IndexError(f"generator index {k} out of range 0..{len(images) - 1}")
        if exp == 1:
            if k == j:
                acc = acc + (T_Z if prefix else ONE_Z)
            prefix ^= images[k]
        else:
            prefix ^= images[k]
            if k == j:
                acc = acc - (T_Z if prefix else ONE_Z)
    return acc


def fox_derivative(w: Word, j: int, phi: SpecialCovering) -> GroupRingElementZ:
    return fox_derivative_images(w, j, covering_images(phi))


def evaluate_word(w: Word, images: Sequence[int]) -> GroupRingElementZ:
    e = 0
    for k, _ in w:
        e ^= images[k]
    return T_Z if e else ONE_Z


@dataclass(frozen=True)
class DerivedMatrixZ:
    """(2g+1) x (2g+1) matrix over Z[Z2]; rows u_1..u_2g, u_0, columns R_1..R_2g, R_0."""

    entries: tuple[tuple[GroupRingElementZ, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> GroupRingElementZ:
        return self.entries[i - 1][j - 1]

    def mod2(self) -> GroupRingMatrix2:
        return GroupRingMatrix2.from_entries([[e.mod2() for e in row] for row in self.entries])

    def __str__(self) -> str:
        rows = [[str(e) for e in row] for row in self.entries]
        width = max(len(s) for row in rows for s in row)
        return "\n".join(" ".join(s.rjust(width) for s in row) for row in rows)


def fox_matrix(rels: Sequence[Word], images: Sequence[int]) -> DerivedMatrixZ:
    g2 = len(images) - 1
    order = list(range(1, g2 + 1)) + [0]
    return DerivedMatrixZ(
        tuple(tuple(fox_derivative_images(r, j, images) for r in rels) for j in order)
    )


def derived_matrix(phi: SpecialCovering) -> DerivedMatrixZ:
    """phi(dR_i/du_j) for the standard presentation, from the Fox engine."""
    return fox_matrix(relators(phi.g, phi.q), covering_images(phi))


# --- closed forms ------------------------------------------------------------


def integral_n(phi: SpecialCovering) -> list[int]:
    """n_i = 0 if phi(u_i) = 1 and -1 if phi(u_i) = t."""
    return [-b for b in phi.n]


def epsilon(phi: SpecialCovering, i: int) -> int:
    """eps(2s) = n_{2s-1}, eps(2s-1) = -n_{2s}, with integral n."""
    n = integral_n(phi)
    return n[i - 2] if i % 2 == 0 else -n[i]


def closed_form_matrix(phi: SpecialCovering) -> DerivedMatrixZ:
    """The explicit derived matrix: (1-t) on the diagonal, eps(i)(1-t) in
    the last column, n_i(1-t) in the last row and c(1+t) in the corner."""
    g2 = 2 * phi.g
    one_minus_t = GroupRingElementZ(1, -1)
    n = integral_n(phi)
    rows = []
    for i in range(1, g2 + 1):
        row = [one_minus_t if j == i else ZERO_Z for j in range(1, g2 + 1)]
        row.append(one_minus_t * epsilon(phi, i))
        rows.append(tuple(row))
    rows.append(tuple(one_minus_t * n[i] for i in range(g2)) + (GroupRingElementZ(1, 1) * phi.c,))
    return DerivedMatrixZ(tuple(rows))


def _core_mod2(phi: SpecialCovering) -> BitMatrix:
    """The GF(2) matrix N with derived matrix (1+t) N."""
    g2 = 2 * phi.g
    swapped = pair_swap(phi.n.bits, g2)
    data = [(1 << i) | (((swapped >> i) & 1) << g2) for i in range(g2)]
    data.append(phi.n.bits | ((phi.c & 1) << g2))
    return BitMatrix(g2 + 1, g2 + 1, tuple(data))


def derived_matrix_mod2(phi: SpecialCovering) -> GroupRingMatrix2:
    """Matrix of d_phi (x) Z2 in the bases R, U."""
    return GroupRingMatrix2.scalar(ONE_PLUS_T, _core_mod2(phi))


def sum_n_epsilon(phi: SpecialCovering) -> int:
    n = integral_n(phi)
    return sum(n[i - 1] * epsilon(phi, i) for i in range(1, 2 * phi.g + 1))


def fundamental_identity_holds(phi: SpecialCovering) -> bool:
    """sum_j phi(dR/du_j)(phi(u_j) - 1) = phi(R) - 1 for every relator R."""
    images = covering_images(phi)
    for r in relators(phi.g, phi.q):
        total = ZERO_Z
        for j in range(len(images)):
            total = total + fox_derivative_images(r, j, images) * (evaluate_word(gen(j), images) - ONE_Z)
        if total != evaluate_word(r, images) - ONE_Z or total != ZERO_Z:
            return False
    return True


# --- the bases V, Q -----------------------------------------------------------


def vq_transforms(phi: SpecialCovering) -> tuple[GroupRingMatrix2, GroupRingMatrix2]:
    """(P, S): columns of P are v_i = u_i + n_i u_0 in the basis U, columns of
    S are R_1..R_2g and Q = R_0 - sum eps(i) R_i in the basis R."""
    g2 = 2 * phi.g
    p = BitMatrix(g2 + 1, g2 + 1, tuple(1 << i for i in range(g2)) + (phi.n.bits | (1 << g2),))
    eps = pair_swap(phi.n.bits, g2)
    s = BitMatrix(g2 + 1, g2 + 1, tuple((1 << i) | (((eps >> i) & 1) << g2) for i in range(g2)) + (1 << g2,))
    return GroupRingMatrix2.lift(p), GroupRingMatrix2.lift(s)


def vq_normal_form(phi: SpecialCovering) -> GroupRingMatrix2:
    """Matrix of d_phi (x) Z2 in the bases Q, V: (1+t) I for c odd and
    (1+t) diag(I_2g, 0) for c even."""
    p, s = vq_transforms(phi)
    if not (is_invertible(p) and is_invertible(s)):
        raise AssertionError("basis change is not invertible")
    return inverse(p) @ derived_matrix_mod2(phi) @ s


@dataclass(frozen=True)
class ModuleDescriptor:
    free_rank: int
    torsion: tuple[int, ...]
    z2_summands: int
    z2z2_summands: int

    def integral_str(self) -> str:
        parts = [f"Z^{self.free_rank}"] + [f"Z/{k}" for k in self.torsion]
        return " + ".join(parts)

    def mod2_str(self) -> str:
        sup = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
        parts = []
        if self.z2_summands:
            parts.append("Z₂" + (str(self.z2_summands).translate(sup) if self.z2_summands > 1 else ""))
        if self.z2z2_summands:
            parts.append("Z₂[Z₂]" + (str(self.z2z2_summands).translate(sup) if self.z2z2_summands > 1 else ""))
        return " ⊕ ".join(parts)


def module_structure(phi: SpecialCovering) -> ModuleDescriptor:
    """H_phi = Z^2g + Z[t]/(1-t^2, c(1+t)), and its reduction mod 2.

    Z[t]/(1-t^2, c(1+t)) is Z + Z/|c| (just Z^2 when c = 0).  Mod 2 the
    u_0 summand is Z2 for c odd and Z2[Z2] for c even.
    """
    g2 = 2 * phi.g
    c = abs(phi.c)
    if c == 0:
        free, torsion = g2 + 2, ()
    else:
        free, torsion = g2 + 1, ((c,) if c > 1 else ())
    if c % 2:
        return ModuleDescriptor(free, torsion, g2 + 1, 0)
    return ModuleDescriptor(free, torsion, g2, 1)


def module_from_normal_form(nf: GroupRingMatrix2) -> tuple[int, int]:
    """(Z2 summands, Z2[Z2] summands) read off a diagonal (1+t)-form:
    a (1+t) diagonal entry gives Z2[Z2]/(1+t) = Z2, a zero entry Z2[Z2]."""
    z2 = z2z2 = 0
    for i in range(1, nf.rows + 1):
        e = nf.entry(i, i)
        if e == ONE_PLUS_T:
            z2 += 1
        elif e == GroupRingElement2(0, 0):
            z2z2 += 1
        else:
            raise ValueError(f"unexpected diagonal entry {e}")
    return z2, z2z2


# --- change of generators ---------------------------------------------------


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """Replace each generator k by the word images[k]."""
    out: Word = ()
    for k, exp in w:
        out += images[k] if exp == 1 else invert(images[k])
    return out


def change_generators(phi: SpecialCovering, alpha: BitVector) -> tuple[SpecialCovering, GroupRingMatrix2]:
    """New generators u'_i = u_0^-alpha_i u_i.

    Returns phi in the new generators (n'_i = n_i + alpha_i) and phi(C) with
    C_ij = du_j/du'_i.  Before returning, checks M' = phi(C) M where M' is the
    Fox matrix of the rewritten relators with respect to the u'.
    """
    g2 = 2 * phi.g
    if alpha.length != g2:
        raise ValueError(f"alpha must have length {g2}")
    phi2 = SpecialCovering(phi.g, phi.q, phi.n + alpha)
    old_in_new: list[Word] = [gen(0)] + [power(0, alpha[k]) + gen(k) for k in range(1, g2 + 1)]
    new_images = covering_images(phi2)
    order = generator_order(phi.g)
    c = DerivedMatrixZ(
        tuple(tuple(fox_derivative_images(old_in_new[k], i, new_images) for k in order) for i in order)
    ).mod2()
    if rewritten_derived_matrix(phi, alpha) != c @ derived_matrix(phi).mod2():
        raise AssertionError("chain rule M' = phi(C) M failed")
    return phi2, c


def rewritten_derived_matrix(phi: SpecialCovering, alpha: BitVector) -> GroupRingMatrix2:
    """Fox matrix (mod 2) of the relators rewritten in u'_i = u_0^-alpha_i u_i."""
    g2 = 2 * phi.g
    old_in_new: list[Word] = [gen(0)] + [power(0, alpha[k]) + gen(k) for k in range(1, g2 + 1)]
    images = covering_images(SpecialCovering(phi.g, phi.q, phi.n + alpha))
    return fox_matrix([substitute(r, old_in_new) for r in relators(phi.g, phi.q)], images).mod2()
