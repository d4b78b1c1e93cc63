"""Special 2-fold coverings, quadratic sections and the symplectic action.

A special covering is a homomorphism phi: pi_1 P -> Z2 with phi(u_0) = 1.  It
is stored by the bits n_i = phi(u_i), i = 1..2g.  A quadratic section is
stored by the bits r_i with s(sigma_i) = nu_i + r_i nu_0.

For a symplectic A, the embedding J(A) = [[A, 0], [W, 1]] is the matrix of the
induced map on H_1(P; Z2) in the basis nu_1..nu_2g, nu_0.  ``act(A, phi2)``
returns the phi with phi~ = phi2~ o J(A), i.e. phi(u_j) = sum_i a_ij
phi2(u_i) + w_j.  On quadratic forms this is w -> w o A, so it is a *right*
action: ``act(a @ b, phi) == act(b, act(a, phi))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .gf2 import BitMatrix, BitVector, DimensionError, parity
from .quadform import QuadraticForm, arf, fixes_form_mask
from .symplectic import (
    MAX_ENUMERATION_GENUS,
    EnumerationLimitError,
    NotSymplecticError,
    SymplecticMatrix,
    is_symplectic,
    symplectic_group,
)


class OddChernClassError(ValueError):
    def __init__(self, q: int):
        super().__init__(f"Chern class must be even (got q={q}): E(q) is empty for odd q")
        self.q = q


def _check_q(q: int) -> None:
    if q % 2:
        raise OddChernClassError(q)


@dataclass(frozen=True)
class SpecialCovering:
    g: int
    q: int
    n: BitVector

    def __post_init__(self):
        _check_q(self.q)
        if self.n.length != 2 * self.g:
            raise DimensionError(f"need {2 * self.g} values phi(u_i), got {self.n.length}")

    @classmethod
    def from_bits(cls, bits: str, q: int) -> SpecialCovering:
        v = BitVector.from_str(bits)
        if v.length % 2:
            raise DimensionError(f"covering bit string must have even length, got {bits!r}")
        return cls(v.length // 2, q, v)

    @property
    def c(self) -> int:
        return self.q // 2

    def __str__(self) -> str:
        return str(self.n)


@dataclass(frozen=True)
class QuadraticSection:
    g: int
    r: BitVector

    def __post_init__(self):
        if self.r.length != 2 * self.g:
            raise DimensionError(f"need {2 * self.g} section bits, got {self.r.length}")

    @classmethod
    def zero(cls, g: int) -> QuadraticSection:
        return cls(g, BitVector.zeros(2 * g))

    @classmethod
    def johnson(cls, g: int) -> QuadraticSection:
        """All r_i = 1, the normalisation forced by the tangent bundle."""
        return cls(g, BitVector(2 * g, (1 << (2 * g)) - 1))

    @classmethod
    def from_bits(cls, bits: str) -> QuadraticSection:
        v = BitVector.from_str(bits)
        if v.length % 2:
            raise DimensionError(f"section bit string must have even length, got {bits!r}")
        return cls(v.length // 2, v)

    def image(self, a: BitVector) -> BitVector:
        """s(a) in H_1(P; Z2), coordinates nu_1..nu_2g then nu_0."""
        n = 2 * self.g
        nu0 = parity(a.bits & self.r.bits) ^ _pair_products(a.bits, n)
        return BitVector(n + 1, a.bits | (nu0 << n))

    def __str__(self) -> str:
        return str(self.r)


def _pair_products(bits: int, n: int) -> int:
    acc = 0
    for k in range(0, n, 2):
        acc ^= ((bits >> k) & 1) & ((bits >> (k + 1)) & 1)
    return acc


def all_coverings(g: int, q: int) -> list[SpecialCovering]:
    """E(q) in increasing order of the packed bits n."""
    _check_q(q)
    n = 2 * g
    return [SpecialCovering(g, q, BitVector(n, b)) for b in range(1 << n)]


def all_sections(g: int) -> list[QuadraticSection]:
    n = 2 * g
    return [QuadraticSection(g, BitVector(n, b)) for b in range(1 << n)]


def _check_genus(*objs) -> int:
    gs = {o.g for o in objs}
    if len(gs) != 1:
        raise DimensionError(f"mismatched genera {sorted(gs)}")
    return gs.pop()


def omega_of(phi: SpecialCovering, s: QuadraticSection) -> QuadraticForm:
    """The quadratic form phi~ o s; its basis values are n_i + r_i."""
    g = _check_genus(phi, s)
    return QuadraticForm(g, phi.n + s.r)


def covering_from_form(w: QuadraticForm, s: QuadraticSection, q: int) -> SpecialCovering:
    """Inverse of :func:`omega_of` for a fixed section."""
    return SpecialCovering(w.g, q, w.basis_values + s.r)


@dataclass(frozen=True, eq=False)
class EmbeddedMatrix(BitMatrix):
    """A (2g+1) x (2g+1) matrix [[A, 0], [W, 1]] with A symplectic."""

    def __post_init__(self):
        super().__post_init__()
        n = self.rows - 1
        if self.rows != self.cols or n % 2:
            raise DimensionError(f"bad shape {self.shape} for an embedded matrix")
        if any(r >> n for r in self.data[:n]) or self.data[n] >> n != 1:
            raise ValueError("last column must be (0, ..., 0, 1)")
        if not is_symplectic(self.block):
            raise NotSymplecticError("upper-left block is not symplectic")

    @property
    def block(self) -> BitMatrix:
        n = self.rows - 1
        return BitMatrix(n, n, self.data[:n])

    @property
    def w_row(self) -> BitVector:
        n = self.rows - 1
        return BitVector(n, self.data[n] & ((1 << n) - 1))


def w_row(a: BitMatrix, s: QuadraticSection) -> BitVector:
    """w_j = sum_i a_ij r_i + S_j + r_j with S_j = sum_i a_{2i,j} a_{2i-1,j}."""
    n = 2 * s.g
    if a.shape != (n, n):
        raise DimensionError(f"{a.shape} matrix for genus {s.g}")
    bits = 0
    for j in range(1, n + 1):
        col = a.column(j).bits
        w = parity(col & s.r.bits) ^ _pair_products(col, n) ^ s.r[j]
        bits |= w << (j - 1)
    return BitVector(n, bits)


def j_embed(a: BitMatrix, s: QuadraticSection) -> EmbeddedMatrix:
    if not is_symplectic(a):
        raise NotSymplecticError("J is only defined on symplectic matrices")
    n = 2 * s.g
    w = w_row(a, s)
    return EmbeddedMatrix(n + 1, n + 1, a.data + (w.bits | (1 << n),))


def act(a: BitMatrix, phi2: SpecialCovering, s: QuadraticSection) -> SpecialCovering:
    """The covering phi with phi(u_j) = sum_i a_ij phi2(u_i) + w_j."""
    _check_genus(phi2, s)
    n = 2 * s.g
    w = w_row(a, s)
    bits = 0
    for j in range(1, n + 1):
        bits |= (parity(a.column(j).bits & phi2.n.bits) ^ w[j]) << (j - 1)
    return SpecialCovering(phi2.g, phi2.q, BitVector(n, bits))


def s_related(phi: SpecialCovering, phi2: SpecialCovering, a: BitMatrix, s: QuadraticSection) -> bool:
    """Whether phi(u_j) = sum_i a_ij phi2(u_i) + w_j holds for every j."""
    g = _check_genus(phi, phi2, s)
    if phi.q != phi2.q:
        raise ValueError("coverings of different Chern classes")
    w = w_row(a, s)
    for j in range(1, 2 * g + 1):
        rhs = 0
        for i in range(1, 2 * g + 1):
            rhs ^= a.entry(i, j) & phi2.n[i]
        if phi.n[j] != rhs ^ w[j]:
            return False
    return True


def _require_enumerable(g: int) -> None:
    if g > MAX_ENUMERATION_GENUS:
        raise EnumerationLimitError(f"group enumeration is limited to g <= {MAX_ENUMERATION_GENUS}")


def orbit(phi: SpecialCovering, s: QuadraticSection) -> list[SpecialCovering]:
    """Orbit of phi under the action of every element of Sp(Z2, 2g)."""
    _require_enumerable(phi.g)
    seen: dict[int, SpecialCovering] = {}
    for a in symplectic_group(phi.g):
        psi = act(a, phi, s)
        seen.setdefault(psi.n.bits, psi)
    return [seen[k] for k in sorted(seen)]


@dataclass(frozen=True)
class OrbitPartition:
    """E(q) split into the Arf-0 and Arf-1 classes for a fixed section."""

    g: int
    q: int
    section: QuadraticSection
    arf0: tuple[SpecialCovering, ...]
    arf1: tuple[SpecialCovering, ...]

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.arf0), len(self.arf1)


def arf_partition(g: int, q: int, s: QuadraticSection) -> OrbitPartition:
    classes: tuple[list, list] = ([], [])
    for phi in all_coverings(g, q):
        classes[arf(omega_of(phi, s))].append(phi)
    return OrbitPartition(g, q, s, tuple(classes[0]), tuple(classes[1]))


def action_partition(g: int, q: int, s: QuadraticSection) -> list[list[SpecialCovering]]:
    """Orbits of E(q) computed from the group action alone (g <= 3)."""
    remaining = {phi.n.bits: phi for phi in all_coverings(g, q)}
    orbits = []
    while remaining:
        start = remaining[min(remaining)]
        orb = orbit(start, s)
        for psi in orb:
            remaining.pop(psi.n.bits, None)
        orbits.append(orb)
    return orbits


def orbits(g: int, q: int, s: QuadraticSection | None = None, cross_check: bool | None = None) -> OrbitPartition:
    """The two orbits of E(q), labelled by Arf invariant.

    For g <= 2 (or when ``cross_check`` is set) the partition is recomputed
    from the group action and must agree set for set.
    """
    _check_q(q)
    s = s or QuadraticSection.zero(g)
    if s.g != g:
        raise DimensionError("section of the wrong genus")
    part = arf_partition(g, q, s)
    if cross_check is None:
        cross_check = g <= 2
    if cross_check:
        by_action = {frozenset(p.n.bits for p in orb) for orb in action_partition(g, q, s)}
        by_arf = {frozenset(p.n.bits for p in cls) for cls in (part.arf0, part.arf1) if cls}
        if by_action != by_arf:
            raise AssertionError(f"action orbits {by_action} disagree with Arf classes {by_arf}")
    return part


def stabilizer(phi: SpecialCovering, s: QuadraticSection) -> list[SymplecticMatrix]:
    """{a in Sp(Z2, 2g) : act(a, phi) = phi}, in group enumeration order.

    act(a, phi) = phi iff a fixes the form omega_of(phi, s), which is checked
    for the whole group at once.
    """
    _check_genus(phi, s)
    _require_enumerable(phi.g)
    group = symplectic_group(phi.g)
    mask = fixes_form_mask(group.keys, 2 * phi.g, omega_of(phi, s))
    return [group.element(i) for i in np.flatnonzero(mask)]


def choose_section(phi: SpecialCovering, phi2: SpecialCovering) -> QuadraticSection:
    """A section making both omega_of(phi) and omega_of(phi2) Arf 0:
    r_i = phi(u_i) for odd i and phi2(u_i) for even i."""
    g = _check_genus(phi, phi2)
    if phi.q != phi2.q:
        raise ValueError("coverings of different Chern classes")
    n = 2 * g
    odd = int("01" * g, 2)
    return QuadraticSection(g, BitVector(n, (phi.n.bits & odd) | (phi2.n.bits & (odd << 1))))


def find_relating(phi: SpecialCovering, phi2: SpecialCovering, s: QuadraticSection,
                  group: Iterable[BitMatrix] | None = None) -> SymplecticMatrix | None:
    """First a (in enumeration order) with s_related(phi, phi2, a, s)."""
    _require_enumerable(phi.g)
    for a in group if group is not None else symplectic_group(phi.g):
        if s_related(phi, phi2, a, s):
            return a
    return None
