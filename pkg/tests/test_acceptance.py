"""One check per acceptance criterion; each prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import itertools
import time

import numpy as np
import pytest

from arfcover import congruence as cg
from arfcover import fox
from arfcover.covering import (
    QuadraticSection,
    SpecialCovering,
    action_partition,
    all_coverings,
    arf_partition,
    omega_of,
    orbits,
    s_related,
)
from arfcover.gf2 import BitMatrix, BitVector
from arfcover.group_ring import ELEMENTS2, ONE_PLUS_T, GroupRingMatrix2, is_invertible
from arfcover.quadform import all_forms, arf, difference_vector, evaluate, fixes_form_mask, reference_form
from arfcover.stabilizers import cover_witness, sp0_vector_orbits, membership, sp_subgroup
from arfcover.symplectic import classical_order, group_closure, standard_generators, symplectic_group, transvection


def criterion_1():
    """Orbit census and Arf/action partitions agree."""
    want = {(1, 2): (3, 1), (2, 2): (10, 6), (2, 4): (10, 6), (3, 2): (36, 28)}
    for (g, q), sizes in want.items():
        s = QuadraticSection.zero(g)
        part = orbits(g, q, s, cross_check=False)
        if part.sizes != sizes:
            return False, f"g={g} q={q} sizes {part.sizes}"
        if g <= 2:
            by_action = {frozenset(p.n.bits for p in o) for o in action_partition(g, q, s)}
            by_arf = {frozenset(p.n.bits for p in c) for c in (part.arf0, part.arf1)}
            if by_action != by_arf:
                return False, f"g={g} q={q} partitions differ"
    return True, "sizes (3,1) (10,6) (10,6) (36,28)"


def criterion_2():
    """s-related (scalar search over the whole group) iff equal Arf; Arf difference is w(V)."""
    for g in (1, 2):
        s = QuadraticSection.zero(g)
        grp = list(symplectic_group(g))
        covs = all_coverings(g, 2)
        for phi, phi2 in itertools.product(covs, repeat=2):
            related = any(s_related(phi, phi2, a, s) for a in grp)
            if related != (arf(omega_of(phi, s)) == arf(omega_of(phi2, s))):
                return False, f"{phi} vs {phi2}"
        for w, w2 in itertools.product(all_forms(g), repeat=2):
            if arf(w2) ^ arf(w) != evaluate(w, difference_vector(w, w2)):
                return False, f"forms {w} {w2}"
    return True, "256 pairs x 720 elements at g=2"


def criterion_3():
    """Generator closures equal the full fixing subgroups."""
    want = {(0, 1): 2, (1, 1): 6, (0, 2): 72, (1, 2): 120, (0, 3): 40320}
    for (which, g), order in want.items():
        sub = sp_subgroup(which, g)
        grp = symplectic_group(g)
        fixing = np.sort(grp.keys[fixes_form_mask(grp.keys, 2 * g, reference_form(which, g))])
        if len(sub) != order or not np.array_equal(sub.sorted_keys, fixing):
            return False, f"Sp_{which} g={g}: closure {len(sub)}, fixing {fixing.size}"
    return True, "orders 2, 6, 72, 120, 40320"


def criterion_4():
    """|Sp(Z2, 2g)| by closure equals the classical formula."""
    orders = []
    for g in (1, 2, 3):
        order = len(group_closure(standard_generators(g), n=2 * g))
        if order != classical_order(g):
            return False, f"g={g}: {order} vs {classical_order(g)}"
        orders.append(order)
    return orders == [6, 720, 1451520], f"orders {orders}"


def criterion_5():
    """Every element of Sp(Z2, 4) gets a certified conjugacy witness."""
    for a in symplectic_group(2):
        w = cover_witness(a)
        t = transvection(w.y)
        if evaluate(reference_form(w.which, 2), w.y) or not membership(t @ a @ t, w.which):
            return False, a.to_str()
    return True, "720 certificates"


def criterion_6():
    """Fox engine equals the closed form; sum n_i eps(i) = 0."""
    for g, c in itertools.product((1, 2), (1, 2, 3)):
        for phi in all_coverings(g, 2 * c):
            if fox.derived_matrix(phi) != fox.closed_form_matrix(phi) or fox.sum_n_epsilon(phi) != 0:
                return False, f"g={g} c={c} phi={phi}"
    return True, "all phi, g <= 2, c in 1..3"


def criterion_7():
    """(V, Q) normal form via invertible transforms."""
    for g, c in itertools.product((1, 2), range(5)):
        n = 2 * g
        want = GroupRingMatrix2.scalar(
            ONE_PLUS_T, BitMatrix(n + 1, n + 1, tuple(1 << i for i in range(n)) + ((c % 2) << n,)))
        for phi in all_coverings(g, 2 * c):
            p, s = fox.vq_transforms(phi)
            if not (is_invertible(p) and is_invertible(s)) or fox.vq_normal_form(phi) != want:
                return False, f"g={g} c={c} phi={phi}"
    return True, "g <= 2, c <= 4"


def criterion_8():
    """Congruence witness exists iff equal Arf; diagrams checked by multiplication."""
    for g, q in ((1, 2), (1, 4), (2, 2)):
        s = QuadraticSection.zero(g)
        for phi, phi2 in itertools.product(all_coverings(g, q), repeat=2):
            w = cg.congruent(phi, phi2, s, method="search")
            if (w is not None) != (arf(omega_of(phi, s)) == arf(omega_of(phi2, s))):
                return False, f"g={g} q={q} {phi} vs {phi2}"
            if w is not None:
                psi = GroupRingMatrix2.lift(w.psi_matrix)
                if not is_invertible(w.theta_matrix) or \
                        psi @ fox.derived_matrix_mod2(phi) != fox.derived_matrix_mod2(phi2) @ w.theta_matrix:
                    return False, f"diagram fails for {phi} vs {phi2}"
    return True, "g=1 q in {2,4}, g=2 q=2"


def criterion_9():
    """Product-preservation criterion vs brute force; quotient iff s-related."""
    for q in (2, 4):
        phi = SpecialCovering(1, q, BitVector.zeros(2))
        ds = ELEMENTS2 if q % 4 == 0 else ELEMENTS2[:2]
        for key, b, c, d in itertools.product(range(16), range(4), range(4), ds):
            psi = cg.PsiMatrix(BitMatrix.from_key(key, 2, 2), BitVector(2, b), BitVector(2, c), d)
            if (cg.product_violation(psi, phi) is None) != cg.psi_respects_product(psi):
                return False, f"block choice A={key} B={b} C={c} D={d}"
    for s in (QuadraticSection(1, BitVector(2, r)) for r in range(4)):
        for a in symplectic_group(1):
            for phi, phi2 in itertools.product(all_coverings(1, 2), repeat=2):
                if cg.is_quotient(a, phi, phi2, s) != s_related(phi, phi2, a, s):
                    return False, f"quotient mismatch {phi} {phi2}"
    return True, "all block choices at g=1"


def criterion_10():
    """M' = phi(C) M for every alpha (asserted inside change_generators)."""
    for g, c in itertools.product((1, 2), (1, 2)):
        n = 2 * g
        for phi in all_coverings(g, 2 * c):
            for bits in range(1 << n):
                alpha = BitVector(n, bits)
                _, cm = fox.change_generators(phi, alpha)
                if fox.rewritten_derived_matrix(phi, alpha) != cm @ fox.derived_matrix(phi).mod2():
                    return False, f"g={g} c={c} phi={phi} alpha={alpha}"
    return True, "all phi and alpha, g <= 2, c in {1,2}"


def criterion_11():
    """Sp_0-orbits of e1 and e1+e2 are H_0 minus 0 and H_1."""
    for g, sizes in ((1, (2, 1)), (2, (9, 6)), (3, (35, 28))):
        n = 2 * g
        w0 = reference_form(0, g)
        h0 = [b for b in range(1, 1 << n) if evaluate(w0, BitVector(n, b)) == 0]
        h1 = [b for b in range(1 << n) if evaluate(w0, BitVector(n, b)) == 1]
        o0, o1 = sp0_vector_orbits(g)
        if [v.bits for v in o0] != h0 or [v.bits for v in o1] != h1 or (len(o0), len(o1)) != sizes:
            return False, f"g={g}: sizes {len(o0)}, {len(o1)}"
    return True, "sizes (2,1) (9,6) (35,28)"


CRITERIA = [
    (1, "orbit census", criterion_1, 5),
    (2, "Arf classification", criterion_2, 30),
    (3, "generator theorems", criterion_3, 60),
    (4, "group orders", criterion_4, 120),
    (5, "conjugacy covering", criterion_5, None),
    (6, "Fox engine vs closed form", criterion_6, None),
    (7, "normal form and module structure", criterion_7, None),
    (8, "main theorem", criterion_8, 600),
    (9, "star product", criterion_9, None),
    (10, "change of generators", criterion_10, None),
    (11, "orbits of e1 and e1+e2", criterion_11, None),
]


def evaluate_criterion(fn, limit):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except AssertionError as exc:
        ok, detail = False, f"assertion: {exc}"
    elapsed = time.perf_counter() - start
    if ok and limit is not None and elapsed > limit:
        ok, detail = False, f"{detail}; took {elapsed:.1f}s, limit {limit}s"
    return ok, detail, elapsed


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, limit, capsys):
    ok, detail, elapsed = evaluate_criterion(fn, limit)
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail}; {elapsed:.2f}s)")
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for number, title, fn, limit in CRITERIA:
        ok, detail, elapsed = evaluate_criterion(fn, limit)
        failures += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail}; {elapsed:.2f}s)")
    raise SystemExit(1 if failures else 0)
