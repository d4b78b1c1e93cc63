"""Named invariant suites driven by ``arfcover verify``.

Each suite takes a genus and returns a list of verdicts; a failing verdict
carries the first counterexample met.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable

import numpy as np

from . import congruence as cg
from . import fox
from .covering import (
    QuadraticSection,
    SpecialCovering,
    act,
    all_coverings,
    omega_of,
    orbits,
    s_related,
)
from .gf2 import BitMatrix, BitVector
from .group_ring import ELEMENTS2, ONE_PLUS_T, GroupRingElement2, GroupRingMatrix2, is_invertible
from .quadform import (
    all_forms,
    arf,
    compose_keys,
    difference_vector,
    evaluate,
    fixed_forms_bitmask,
    fixes_form_mask,
    reference_form,
    zero_set,
)
from .report import Verdict
from .stabilizers import alpha_set, cover_witness, sp0_vector_orbits, sp_subgroup
from .symplectic import (
    MAX_ENUMERATION_GENUS,
    classical_order,
    group_closure,
    standard_generators,
    symplectic_group,
    symplectic_permutations,
    transvection,
    transvections,
)


def _sections(g: int) -> list[QuadraticSection]:
    return [QuadraticSection.zero(g), QuadraticSection.johnson(g)]


def _first(items):
    return next(iter(items), None)


# --- arf ----------------------------------------------------------------------


def suite_arf(g: int) -> list[Verdict]:
    n = 2 * g
    vectors = [BitVector(n, b) for b in range(1 << n)]
    forms = list(all_forms(g)) if g <= 2 else [reference_form(0, g), reference_form(1, g)]
    bad = _first(
        {"form": str(w), "x": str(x), "y": str(y)}
        for w in forms for x in vectors for y in vectors
        if evaluate(w, x + y) != evaluate(w, x) ^ evaluate(w, y) ^ cg.intersection_product(x, y)
    )
    out = [Verdict.of("polarization identity", bad, forms=len(forms))]

    bad = _first(
        {"w": str(w), "w2": str(w2)}
        for w in all_forms(g) for w2 in all_forms(g)
        if arf(w2) ^ arf(w) != evaluate(w, difference_vector(w, w2))
    )
    out.append(Verdict.of("Arf difference equals w(V)", bad, pairs=1 << (2 * n)))

    s = QuadraticSection.zero(g)
    covs = all_coverings(g, 2)
    if g <= 2:
        # phi ~ phi2 iff some a in the group has compose(omega(phi2), a) == omega(phi)
        group = symplectic_group(g)
        bad = None
        for phi2 in covs:
            images = compose_keys(group.keys, n, omega_of(phi2, s))
            for phi in covs:
                hits = np.flatnonzero(images == np.uint64(omega_of(phi, s).basis_values.bits))
                related = hits.size > 0
                if related and not s_related(phi, phi2, group.element(int(hits[0])), s):
                    bad = {"phi": str(phi), "phi2": str(phi2), "reason": "witness fails s_related"}
                elif related != (arf(omega_of(phi, s)) == arf(omega_of(phi2, s))):
                    bad = {"phi": str(phi), "phi2": str(phi2), "related": related}
                if bad:
                    break
            if bad:
                break
        out.append(Verdict.of("s-related iff equal Arf (full group search)", bad,
                              group_order=len(group), pairs=len(covs) ** 2))
    else:
        gens = standard_generators(g)
        bad = _first(
            {"phi": str(phi), "generator": m.to_str()}
            for phi in covs for m in gens
            if arf(omega_of(act(m, phi, s), s)) != arf(omega_of(phi, s))
        )
        if bad is None:
            for phi, phi2 in itertools.product(covs, repeat=2):
                w, w2 = omega_of(phi, s), omega_of(phi2, s)
                if arf(w) == arf(w2):
                    v = difference_vector(w2, w)
                    if not s_related(phi, phi2, transvection(v), s):
                        bad = {"phi": str(phi), "phi2": str(phi2), "V": str(v)}
                        break
        out.append(Verdict.of("s-related iff equal Arf (generator invariance and transvection witnesses)", bad))

    a1 = len(alpha_set(1, g))
    expected = 2 ** (g - 1) * (2**g - 1)
    out.append(Verdict.of("|alpha_1| = 2^(g-1)(2^g-1)", None if a1 == expected else {"count": a1, "expected": expected},
                          count=a1))
    return out


# --- orbits -------------------------------------------------------------------


def suite_orbits(g: int) -> list[Verdict]:
    expected = (2 ** (g - 1) * (2**g + 1), 2 ** (g - 1) * (2**g - 1))
    out = []
    for q in (2, 4):
        for s in _sections(g):
            try:
                sizes = orbits(g, q, s).sizes
                bad = None if sizes == expected else {"sizes": list(sizes), "expected": list(expected)}
            except AssertionError as exc:
                sizes, bad = None, {"error": str(exc)}
            out.append(Verdict.of(f"orbit sizes q={q} section={s}", bad,
                                  sizes=list(sizes) if sizes else None, cross_checked=g <= 2))
    return out


# --- generators ---------------------------------------------------------------


def suite_generators(g: int) -> list[Verdict]:
    n = 2 * g
    group = symplectic_group(g)
    classical = classical_order(g)
    out = [Verdict.of("Sp closure order", None if len(group) == classical else
                      {"closure": len(group), "classical": classical}, order=len(group), classical=classical)]
    if g <= 2:
        other = group_closure(transvections(g) + symplectic_permutations(g), n=n)
        out.append(Verdict.of("standard generators generate the same group as transvections and permutations",
                              None if other == group else {"orders": [len(group), len(other)]}))
    for which in (0, 1):
        sub = sp_subgroup(which, g)
        fixing = np.sort(group.keys[fixes_form_mask(group.keys, n, reference_form(which, g))])
        same = np.array_equal(sub.sorted_keys, fixing)
        out.append(Verdict.of(f"Sp_{which} generators", None if same else
                              {"closure": len(sub), "fixing_subgroup": int(fixing.size)},
                              order=len(sub), fixing_subgroup=int(fixing.size)))
    o0, o1 = sp0_vector_orbits(g)
    h0 = [y for y in zero_set(reference_form(0, g)) if not y.is_zero()]
    h1 = [y for y in map(lambda b: BitVector(n, b), range(1 << n)) if evaluate(reference_form(0, g), y)]
    ok = [v.bits for v in o0] == [v.bits for v in h0] and [v.bits for v in o1] == [v.bits for v in h1]
    out.append(Verdict.of("Sp_0 orbits of e1 and e1+e2", None if ok else
                          {"orbit_sizes": [len(o0), len(o1)], "expected": [len(h0), len(h1)]},
                          sizes=[len(o0), len(o1)]))
    return out


# --- cover --------------------------------------------------------------------


def suite_cover(g: int) -> list[Verdict]:
    group = symplectic_group(g)
    n = 2 * g
    if g <= 2:
        bad = None
        for a in group:
            try:
                cover_witness(a)
            except AssertionError as exc:
                bad = {"matrix": a.to_str(), "error": str(exc)}
                break
        return [Verdict.of("every element lies in a conjugate T_y Sp_which T_y", bad, certified=len(group))]
    covered = fixed_forms_bitmask(group.keys, n) != 0
    bad = None
    if not covered.all():
        bad = {"matrix": group.element(int(np.flatnonzero(~covered)[0])).to_str()}
    else:
        for i in range(0, len(group), 9973):
            try:
                cover_witness(group.element(i))
            except AssertionError as exc:
                bad = {"matrix": group.element(i).to_str(), "error": str(exc)}
                break
    return [Verdict.of("every element fixes some form (full certificates on a stride sample)", bad,
                       elements=len(group))]


# --- fox ----------------------------------------------------------------------


def suite_fox(g: int) -> list[Verdict]:
    n = 2 * g
    out = []
    bad_engine = bad_ident = bad_eps = bad_vq = bad_mod = None
    for c in (1, 2, 3):
        for phi in all_coverings(g, 2 * c):
            tag = {"phi": str(phi), "c": c}
            if bad_engine is None and fox.derived_matrix(phi) != fox.closed_form_matrix(phi):
                bad_engine = tag
            if bad_engine is None and fox.derived_matrix(phi).mod2() != fox.derived_matrix_mod2(phi):
                bad_engine = dict(tag, reason="mod 2 reduction")
            if bad_ident is None and not fox.fundamental_identity_holds(phi):
                bad_ident = tag
            if bad_eps is None and fox.sum_n_epsilon(phi) != 0:
                bad_eps = tag
    out.append(Verdict.of("Fox engine equals closed form", bad_engine))
    out.append(Verdict.of("fundamental identity of free calculus", bad_ident))
    out.append(Verdict.of("sum n_i eps(i) = 0", bad_eps))
    for c in (0, 1, 2, 3, 4):
        for phi in all_coverings(g, 2 * c):
            diag = BitMatrix(n + 1, n + 1, tuple(1 << i for i in range(n)) + ((c % 2) << n,))
            expect = GroupRingMatrix2.scalar(ONE_PLUS_T, diag)
            try:
                nf = fox.vq_normal_form(phi)
            except AssertionError as exc:
                nf, bad_vq = None, {"phi": str(phi), "c": c, "error": str(exc)}
            if bad_vq is None and nf != expect:
                bad_vq = {"phi": str(phi), "c": c, "got": str(nf)}
            ms = fox.module_structure(phi)
            if bad_mod is None and nf is not None and fox.module_from_normal_form(nf) != (ms.z2_summands, ms.z2z2_summands):
                bad_mod = {"phi": str(phi), "c": c}
            if bad_vq or bad_mod:
                break
    out.append(Verdict.of("V, Q normal form", bad_vq))
    out.append(Verdict.of("mod 2 module read off the normal form", bad_mod))
    bad = None
    for c in (1, 2):
        for phi in all_coverings(g, 2 * c):
            for ab in range(1 << n):
                alpha = BitVector(n, ab)
                try:
                    phi2, _ = fox.change_generators(phi, alpha)
                except AssertionError:
                    bad = {"phi": str(phi), "alpha": str(alpha), "c": c}
                    break
                if fox.change_generators(phi2, alpha)[0] != phi:
                    bad = {"phi": str(phi), "alpha": str(alpha), "c": c, "reason": "round trip"}
                    break
            if bad:
                break
        if bad:
            break
    out.append(Verdict.of("change of generators M' = phi(C) M", bad))
    return out


# --- congruence ---------------------------------------------------------------


def _witness_problem(w: cg.CongruenceWitness, phi, phi2, s) -> str | None:
    if not is_invertible(w.theta_matrix):
        return "theta not invertible"
    psi = GroupRingMatrix2.lift(w.psi_matrix)
    if psi @ fox.derived_matrix_mod2(phi) != fox.derived_matrix_mod2(phi2) @ w.theta_matrix:
        return "diagram does not commute"
    if not w.theta.is_congruence_shape():
        return "theta bottom row is not (0, 1)"
    return None


def suite_congruence(g: int) -> list[Verdict]:
    out = []
    method = "search" if g <= 2 else "transvection"
    cases = [(q, s) for q in (2, 4) for s in _sections(g)] if g <= 2 else [(2, QuadraticSection.zero(g))]
    for q, s in cases:
        bad = None
        divergent = 0
        for phi, phi2 in itertools.product(all_coverings(g, q), repeat=2):
            same = arf(omega_of(phi, s)) == arf(omega_of(phi2, s))
            w = cg.congruent(phi, phi2, s, method=method)
            if (w is not None) != same:
                bad = {"phi": str(phi), "phi2": str(phi2), "congruent": w is not None, "equal_arf": same}
            elif w is not None and (problem := _witness_problem(w, phi, phi2, s)):
                bad = {"phi": str(phi), "phi2": str(phi2), "problem": problem}
            if bad:
                break
            if g == 1:
                divergent += (cg.general_congruent(phi, phi2, s) is not None) != same
        detail = {"method": method}
        if g == 1:
            detail["general_theta_divergent_pairs"] = divergent
        out.append(Verdict.of(f"congruent iff equal Arf q={q} section={s}", bad, **detail))
    if g == 1:
        out.append(_dn_exhaustive())
        out.append(_theta_construction_odd_c())
    return out


def _theta_params_g1(bits: int) -> cg.ThetaParams:
    return cg.ThetaParams(BitMatrix(2, 2, (bits & 3, (bits >> 2) & 3)), BitVector(2, (bits >> 4) & 3),
                          BitVector(2, (bits >> 6) & 3), (bits >> 8) & 1)


def _dn_exhaustive() -> Verdict:
    """check_dn against multiplication and invertibility, every parameter at g=1."""
    s = QuadraticSection.zero(1)
    group = list(symplectic_group(1))
    thetas = [(p, p.matrix()) for p in map(_theta_params_g1, range(1 << 9))]
    thetas = [(p, m, is_invertible(m)) for p, m in thetas]
    products = {}
    for q in (2, 4):
        for phi2 in all_coverings(1, q):
            rhs = fox.derived_matrix_mod2(phi2)
            products[q, phi2.n.bits] = [(rhs @ m) if inv else None for _, m, inv in thetas]
        for phi, phi2 in itertools.product(all_coverings(1, q), repeat=2):
            rhs_products = products[q, phi2.n.bits]
            for a in group:
                lhs = GroupRingMatrix2.lift(cg.j_embed(a, s)) @ fox.derived_matrix_mod2(phi)
                check = cg.dn_checker(a, phi, phi2, s)
                for (p, _, _), prod in zip(thetas, rhs_products):
                    if check(p) != (prod is not None and lhs == prod):
                        return Verdict.of("conditions (alpha)-(delta) match the diagram", {
                            "phi": str(phi), "phi2": str(phi2), "a": a.to_str(), "q": q})
    return Verdict.of("conditions (alpha)-(delta) match the diagram", None, cases=2 * 16 * 6 * 512)


def _theta_construction_odd_c() -> Verdict:
    """For c odd a theta can be built for every (phi, phi2, a)."""
    s = QuadraticSection.zero(1)
    for phi, phi2 in itertools.product(all_coverings(1, 2), repeat=2):
        for a in symplectic_group(1):
            p = cg.general_theta(a, phi, phi2, s)
            if p is None or not cg.check_dn(a, p, phi, phi2, s) or not cg.diagram_commutes(a, p.matrix(), phi, phi2, s):
                return Verdict.of("theta constructible for c odd", {"phi": str(phi), "phi2": str(phi2), "a": a.to_str()})
    return Verdict.of("theta constructible for c odd", None)


# --- star ---------------------------------------------------------------------


def suite_star(g: int) -> list[Verdict]:
    out = []
    if g == 1:
        bad = None
        checked = 0
        for q in (2, 4):
            phi = SpecialCovering(1, q, BitVector.zeros(2))
            ds = ELEMENTS2 if q % 4 == 0 else ELEMENTS2[:2]
            for ak, b, c, d in itertools.product(range(16), range(4), range(4), ds):
                psi = cg.PsiMatrix(BitMatrix.from_key(ak, 2, 2), BitVector(2, b), BitVector(2, c), d)
                preserves = cg.product_violation(psi, phi) is None
                checked += 1
                if preserves != cg.psi_respects_product(psi):
                    bad = {"A": psi.a.to_str(), "B": str(psi.b), "C": str(psi.c), "D": str(d), "q": q}
                    break
            if bad:
                break
        out.append(Verdict.of("product preserved iff A symplectic and B = 0", bad, block_choices=checked))
    else:
        rng = random.Random(g)
        bad = None
        phi = SpecialCovering(g, 2, BitVector.zeros(2 * g))
        for _ in range(200):
            n = 2 * g
            psi = cg.PsiMatrix(BitMatrix(n, n, tuple(rng.getrandbits(n) for _ in range(n))),
                               BitVector(n, rng.getrandbits(n) if rng.random() < 0.5 else 0),
                               BitVector(n, rng.getrandbits(n)), GroupRingElement2(1, 0))
            if (cg.product_violation(psi, phi) is None) != cg.psi_respects_product(psi):
                bad = {"A": psi.a.to_str(), "B": str(psi.b)}
                break
        out.append(Verdict.of("product preserved iff A symplectic and B = 0 (random blocks)", bad))

    bad = None
    if g == 1:
        triples = ((a, phi, phi2, s) for s in (QuadraticSection.zero(1), QuadraticSection.johnson(1))
                   for a in symplectic_group(1) for phi in all_coverings(1, 2) for phi2 in all_coverings(1, 2))
    else:
        rng = random.Random(100 + g)
        group = symplectic_group(g)
        n = 2 * g

        def rand_cov():
            return SpecialCovering(g, 2, BitVector(n, rng.getrandbits(n)))

        triples = ((group.element(rng.randrange(len(group))), rand_cov(), rand_cov(),
                    QuadraticSection(g, BitVector(n, rng.getrandbits(n)))) for _ in range(500))
    count = 0
    for a, phi, phi2, s in triples:
        count += 1
        if cg.is_quotient(a, phi, phi2, s) != s_related(phi, phi2, a, s):
            bad = {"a": a.to_str(), "phi": str(phi), "phi2": str(phi2), "section": str(s)}
            break
    out.append(Verdict.of("is_quotient iff s-related", bad, checked=count, exhaustive=g == 1))
    return out


SUITES: dict[str, Callable[[int], list[Verdict]]] = {
    "arf": suite_arf,
    "orbits": suite_orbits,
    "generators": suite_generators,
    "cover": suite_cover,
    "fox": suite_fox,
    "congruence": suite_congruence,
    "star": suite_star,
}


def run_suite(name: str, genera: list[int]) -> list[Verdict]:
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise KeyError(name)
    out = []
    for nm in names:
        for g in genera:
            if not 1 <= g <= MAX_ENUMERATION_GENUS:
                raise ValueError(f"genus {g} outside 1..{MAX_ENUMERATION_GENUS}")
            for v in SUITES[nm](g):
                v.name = f"{nm} g={g}: {v.name}"
                out.append(v)
    return out
