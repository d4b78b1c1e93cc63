"""Congruence of derived matrices and the *-product on H_phi (x) Z2.

Two derived matrices M, M' are congruent via (psi, theta) when
``J(A) @ M == M' @ theta`` over Z2[Z2], with psi = J(A) for a symplectic A and
theta invertible of shape [[B1, B2], [0, 1]].  All bits below are mod 2, so
eps(i) is simply the pair partner bit n_{i^1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .covering import (
    QuadraticSection,
    SpecialCovering,
    j_embed,
    omega_of,
    w_row,
)
from .fox import derived_matrix_mod2
from .gf2 import BitMatrix, BitVector, DimensionError, mat_inverse, parity
from .group_ring import (
    ONE,
    ZERO,
    GroupRingElement2,
    GroupRingMatrix2,
    is_invertible,
)
from .quadform import QuadraticForm, arf, compose_keys, difference_vector, evaluate
from .symplectic import (
    MAX_ENUMERATION_GENUS,
    SymplecticMatrix,
    intersection_product,
    is_symplectic,
    pair_swap,
    symplectic_group,
    transvection,
)


def _eps(phi: SpecialCovering) -> BitVector:
    return BitVector(phi.n.length, pair_swap(phi.n.bits, phi.n.length))


@dataclass(frozen=True)
class ThetaParams:
    """Blocks of theta mod (1+t): [[B1, B2], [B3, b]]."""

    b_matrix1: BitMatrix
    b_col: BitVector
    b_row: BitVector
    b: int

    @classmethod
    def identity(cls, g: int) -> ThetaParams:
        n = 2 * g
        return cls(BitMatrix.identity(n), BitVector.zeros(n), BitVector.zeros(n), 1)

    def matrix(self) -> GroupRingMatrix2:
        n = self.b_matrix1.rows
        data = tuple(r | (((self.b_col.bits >> i) & 1) << n) for i, r in enumerate(self.b_matrix1.data))
        data += (self.b_row.bits | (self.b << n),)
        return GroupRingMatrix2.lift(BitMatrix(n + 1, n + 1, data))

    def is_congruence_shape(self) -> bool:
        return self.b_row.is_zero() and self.b == 1


def check_dn(a: BitMatrix, theta: ThetaParams, phi: SpecialCovering, phi2: SpecialCovering,
             s: QuadraticSection) -> bool:
    """The four conditions (alpha)..(delta) on the parameters, mod (1+t).

    (delta) 1 + b + sum b_j eps(j) = 0 is imposed for both parities of c:
    for c odd it is forced by commutativity, for c even by invertibility
    of theta.
    """
    return dn_checker(a, phi, phi2, s)(theta)


def gamma_defect(a: BitMatrix, phi: SpecialCovering, phi2: SpecialCovering, s: QuadraticSection) -> BitVector:
    """Bits w_j + n_j + sum_i a_ij n'_i; zero exactly when phi, phi2 are s-related by a."""
    n = 2 * phi.g
    w = w_row(a, s)
    bits = 0
    for j in range(1, n + 1):
        bits |= (w[j] ^ phi.n[j] ^ parity(a.column(j).bits & phi2.n.bits)) << (j - 1)
    return BitVector(n, bits)


def dn_checker(a: BitMatrix, phi: SpecialCovering, phi2: SpecialCovering, s: QuadraticSection):
    """``check_dn`` with everything not depending on theta computed once."""
    if phi.q != phi2.q:
        raise ValueError("coverings of different Chern classes")
    odd_c = phi.c & 1
    eps, eps2 = _eps(phi).bits, _eps(phi2).bits
    rows = a.data
    a_eps = sum(parity(r & eps) << i for i, r in enumerate(rows))
    defect = gamma_defect(a, phi, phi2, s).bits

    def check(theta: ThetaParams) -> bool:
        bj = theta.b_row.bits
        if defect != (bj if odd_c else 0):
            return False
        if 1 ^ theta.b ^ parity(bj & eps):
            return False
        if theta.b_col.bits != a_eps ^ (eps2 if theta.b else 0):
            return False
        return all(t == r ^ (bj if (eps2 >> i) & 1 else 0)
                   for i, (t, r) in enumerate(zip(theta.b_matrix1.data, rows)))

    return check


def diagram_commutes(a: BitMatrix, theta: GroupRingMatrix2, phi: SpecialCovering,
                     phi2: SpecialCovering, s: QuadraticSection) -> bool:
    """J(A) M_phi == M_phi2 theta, by group-ring matrix multiplication."""
    psi = GroupRingMatrix2.lift(j_embed(a, s))
    return psi @ derived_matrix_mod2(phi) == derived_matrix_mod2(phi2) @ theta


def congruence_theta(a: BitMatrix, phi: SpecialCovering, phi2: SpecialCovering) -> ThetaParams:
    """The constrained theta: B1 = A, B2 = A eps + eps', bottom row (0, 1)."""
    n = 2 * phi.g
    col = BitVector(n, a.apply(_eps(phi)).bits ^ _eps(phi2).bits)
    return ThetaParams(BitMatrix(n, n, a.data), col, BitVector.zeros(n), 1)


def general_theta(a: BitMatrix, phi: SpecialCovering, phi2: SpecialCovering,
                  s: QuadraticSection) -> ThetaParams | None:
    """A theta of unconstrained shape making the diagram commute, or None.

    For c odd the b_j absorb (gamma), so one always exists; for c even
    (gamma) does not involve theta and must already hold.
    """
    n = 2 * phi.g
    eps, eps2 = _eps(phi), _eps(phi2)
    defect = gamma_defect(a, phi, phi2, s).bits
    if phi.c % 2 == 0:
        if defect:
            return None
        bj = BitVector.zeros(n)
    else:
        bj = BitVector(n, defect)
    b = 1 ^ parity(bj.bits & eps.bits)
    b1 = BitMatrix(n, n, tuple(r ^ (bj.bits if eps2[i + 1] else 0) for i, r in enumerate(a.data)))
    col = 0
    for i in range(1, n + 1):
        col |= (parity(a.row(i).bits & eps.bits) ^ (b & eps2[i])) << (i - 1)
    return ThetaParams(b1, BitVector(n, col), bj, b)


@dataclass(frozen=True)
class CongruenceWitness:
    a: SymplecticMatrix
    theta: ThetaParams
    psi_matrix: BitMatrix
    theta_matrix: GroupRingMatrix2


def _witness(a, theta: ThetaParams, phi, phi2, s) -> CongruenceWitness | None:
    tm = theta.matrix()
    if not is_invertible(tm) or not diagram_commutes(a, tm, phi, phi2, s):
        return None
    return CongruenceWitness(SymplecticMatrix.of(a), theta, j_embed(a, s), tm)


@lru_cache(maxsize=256)
def _form_images(g: int, bits: int) -> np.ndarray:
    group = symplectic_group(g)
    return compose_keys(group.keys, 2 * g, QuadraticForm(g, BitVector(2 * g, bits)))


def _relating_candidates(phi, phi2, s) -> Iterator[BitMatrix]:
    """Group elements, in enumeration order, with omega(phi2) o a == omega(phi).

    Under the constrained theta, (alpha), (beta) and (delta) hold by
    construction and (gamma) is exactly this test, so skipping the other
    elements does not change which one is found first.
    """
    g = phi.g
    group = symplectic_group(g)
    w2 = omega_of(phi2, s).basis_values.bits
    images = _form_images(g, w2) if g <= 2 else compose_keys(group.keys, 2 * g, omega_of(phi2, s))
    for i in np.flatnonzero(images == np.uint64(omega_of(phi, s).basis_values.bits)):
        yield group.element(int(i))


def congruent(phi: SpecialCovering, phi2: SpecialCovering, s: QuadraticSection | None = None,
              method: str | None = None) -> CongruenceWitness | None:
    """A witness that the derived matrices of phi and phi2 are congruent.

    ``method="search"`` scans Sp(Z2, 2g) in enumeration order and returns the
    first A admitting the constrained theta (g <= 3).  ``method="transvection"``
    works for any g: when the Arf invariants agree, A = T_V with V the
    difference of the two quadratic forms.  The default searches for g <= 2.
    Every returned witness has had its diagram checked by multiplication.
    """
    if phi.g != phi2.g or phi.q != phi2.q:
        raise ValueError("coverings must share genus and Chern class")
    s = s or QuadraticSection.zero(phi.g)
    if method is None:
        method = "search" if phi.g <= 2 else "transvection"
    if method == "search":
        if phi.g > MAX_ENUMERATION_GENUS:
            raise ValueError(f"search is limited to g <= {MAX_ENUMERATION_GENUS}")
        candidates: Iterable[BitMatrix] = _relating_candidates(phi, phi2, s)
    elif method == "transvection":
        w, w2 = omega_of(phi, s), omega_of(phi2, s)
        v = difference_vector(w2, w)
        if evaluate(w2, v):
            return None
        candidates = [transvection(v)]
    else:
        raise ValueError(f"unknown method {method!r}")
    for a in candidates:
        theta = congruence_theta(a, phi, phi2)
        if not check_dn(a, theta, phi, phi2, s):
            raise AssertionError("candidate a fails (alpha)-(delta)")
        found = _witness(a, theta, phi, phi2, s)
        if found is None:
            raise AssertionError("parameters satisfy (alpha)-(delta) but the diagram does not commute")
        return found
    return None


def general_congruent(phi: SpecialCovering, phi2: SpecialCovering,
                      s: QuadraticSection | None = None) -> CongruenceWitness | None:
    """Like :func:`congruent` but with theta of unconstrained shape."""
    s = s or QuadraticSection.zero(phi.g)
    for a in symplectic_group(phi.g):
        theta = general_theta(a, phi, phi2, s)
        if theta is None:
            continue
        found = _witness(a, theta, phi, phi2, s)
        if found is None:
            raise AssertionError("constructed theta does not make the diagram commute")
        return found
    return None


# --- the *-product ------------------------------------------------------------


@dataclass(frozen=True)
class HphiElement:
    """sum d_i v_i + y(t) u_0 in H_phi (x) Z2."""

    v_coeffs: BitVector
    u0_coeff: GroupRingElement2 = ZERO


def _check_element(x: HphiElement, phi: SpecialCovering) -> None:
    if x.v_coeffs.length != 2 * phi.g:
        raise DimensionError("element of the wrong genus")
    if phi.c % 2 and x.u0_coeff.b:
        raise ValueError("for c odd the u_0 coefficient lies in Z2 (no t part)")


def project(x: HphiElement) -> BitVector:
    """p_phi: v_i -> sigma_i, u_0 -> 0."""
    return x.v_coeffs


def star_product(x: HphiElement, y: HphiElement, phi: SpecialCovering) -> int:
    _check_element(x, phi)
    _check_element(y, phi)
    return intersection_product(project(x), project(y))


def hphi_basis(phi: SpecialCovering) -> list[HphiElement]:
    """v_1..v_2g, u_0, and t u_0 when c is even."""
    n = 2 * phi.g
    basis = [HphiElement(BitVector.unit(n, i)) for i in range(1, n + 1)]
    basis.append(HphiElement(BitVector.zeros(n), ONE))
    if phi.c % 2 == 0:
        basis.append(HphiElement(BitVector.zeros(n), GroupRingElement2(0, 1)))
    return basis


@dataclass(frozen=True)
class PsiMatrix:
    """[[A, B], [C, D]] on H_phi (x) Z2 in the bases V, V'."""

    a: BitMatrix
    b: BitVector
    c: BitVector
    d: GroupRingElement2

    @classmethod
    def identity(cls, g: int) -> PsiMatrix:
        n = 2 * g
        return cls(BitMatrix.identity(n), BitVector.zeros(n), BitVector.zeros(n), ONE)

    def apply(self, x: HphiElement, c_odd: bool) -> HphiElement:
        y = x.u0_coeff
        v = self.a.apply(x.v_coeffs)
        if y.augment():
            v = v + self.b
        u0 = self.d * y + (ONE if parity(self.c.bits & x.v_coeffs.bits) else ZERO)
        if c_odd:
            u0 = GroupRingElement2(u0.augment(), 0)
        return HphiElement(v, u0)


def psi_respects_product(psi: PsiMatrix) -> bool:
    """Psi(x) * Psi(y) = x * y for all x, y iff A is symplectic and B = 0."""
    return is_symplectic(psi.a) and psi.b.is_zero()


def product_violation(psi: PsiMatrix, phi: SpecialCovering) -> tuple[HphiElement, HphiElement] | None:
    """First pair of basis elements whose product Psi fails to preserve."""
    basis = hphi_basis(phi)
    c_odd = bool(phi.c % 2)
    images = [psi.apply(x, c_odd) for x in basis]
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if star_product(images[i], images[j], phi) != star_product(x, y, phi):
                return x, y
    return None


def quotient_matrix(a: BitMatrix, phi: SpecialCovering, phi2: SpecialCovering,
                    s: QuadraticSection) -> BitMatrix:
    """Matrix of psi_f = J(A) from the basis V (of phi) to V' (of phi2).

    Equals [[A, 0], [M, 1]] with M_j = w_j + n_j + sum_i a_ij n'_i.
    """
    n = 2 * phi.g
    p = BitMatrix(n + 1, n + 1, tuple(1 << i for i in range(n)) + (phi.n.bits | (1 << n),))
    p2 = BitMatrix(n + 1, n + 1, tuple(1 << i for i in range(n)) + (phi2.n.bits | (1 << n),))
    return mat_inverse(p2) @ j_embed(a, s) @ p


def is_quotient(a: BitMatrix, phi: SpecialCovering, phi2: SpecialCovering, s: QuadraticSection) -> bool:
    """Whether the induced map is the quotient Psi_f, i.e. the row M vanishes."""
    n = 2 * phi.g
    m = quotient_matrix(a, phi, phi2, s)
    return m.row(n + 1).bits == 1 << n


def quotient_psi(a: BitMatrix, phi: SpecialCovering, phi2: SpecialCovering,
                 s: QuadraticSection) -> PsiMatrix:
    """The induced map on H_phi (x) Z2 as blocks (A, 0, M, 1)."""
    n = 2 * phi.g
    m = quotient_matrix(a, phi, phi2, s)
    return PsiMatrix(BitMatrix(n, n, tuple(r & ((1 << n) - 1) for r in m.data[:n])),
                     BitVector.zeros(n), BitVector(n, m.data[n] & ((1 << n) - 1)), ONE)


def arf_values(phi: SpecialCovering, phi2: SpecialCovering, s: QuadraticSection) -> tuple[int, int]:
    return arf(omega_of(phi, s)), arf(omega_of(phi2, s))
