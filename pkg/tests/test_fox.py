import itertools

import pytest

from arfcover import fox
from arfcover.covering import SpecialCovering, all_coverings
from arfcover.gf2 import BitMatrix, BitVector
from arfcover.group_ring import ONE_PLUS_T, GroupRingElementZ, GroupRingMatrix2, is_invertible

Z = GroupRingElementZ


def cov(bits, q=2):
    return SpecialCovering.from_bits(bits, q)


def naive_derivative(w, j, images):
    """Sum over occurrences of u_j: prefix value, negated and shifted for inverses."""
    total = Z(0, 0)
    for k, (gen, exp) in enumerate(w):
        if gen != j:
            continue
        prefix = sum(e * images[g] for g, e in w[:k])
        if exp == -1:
            prefix -= images[gen]
        term = Z(1, 0) if prefix % 2 == 0 else Z(0, 1)
        total = total + (term if exp == 1 else -term)
    return total


def test_word_helpers():
    a, b = fox.gen(1), fox.gen(2)
    assert fox.commutator(a, b) == ((1, 1), (2, 1), (1, -1), (2, -1))
    assert fox.free_reduce(a + fox.invert(a)) == ()
    assert fox.power(0, -2) == ((0, -1), (0, -1))
    with pytest.raises(ValueError):
        fox.word((1, 2))


def test_derivative_examples():
    phi = cov("00")
    assert fox.fox_derivative(fox.gen(0), 0, phi) == Z(1, 0)
    for bits in ("00", "10", "01", "11"):
        assert fox.fox_derivative(fox.commutator(fox.gen(1), fox.gen(0)), 1, cov(bits)) == Z(1, -1)
    for c in (1, 2, 3):
        r0 = fox.relators(1, 2 * c)[-1]
        assert fox.fox_derivative(r0, 0, cov("00", 2 * c)) == Z(c, c)


def test_engine_matches_naive_sum_on_random_words():
    import random

    rng = random.Random(3)
    for _ in range(300):
        w = tuple((rng.randrange(4), rng.choice((1, -1))) for _ in range(rng.randrange(1, 12)))
        images = [1] + [rng.randrange(2) for _ in range(3)]
        for j in range(4):
            assert fox.fox_derivative_images(w, j, images) == naive_derivative(w, j, images)


def test_derived_matrix_examples():
    m = fox.derived_matrix(cov("00"))
    assert [[str(m.entry(i, j)) for j in (1, 2, 3)] for i in (1, 2, 3)] == [
        ["1-1t", "0+0t", "0+0t"], ["0+0t", "1-1t", "0+0t"], ["0+0t", "0+0t", "1+1t"]]
    m = fox.derived_matrix(cov("10"))
    assert [m.entry(3, j) for j in (1, 2, 3)] == [Z(-1, 1), Z(0, 0), Z(1, 1)]
    assert [m.entry(i, 3) for i in (1, 2)] == [Z(0, 0), Z(-1, 1)]


def test_mod2_examples():
    assert fox.derived_matrix_mod2(cov("00")) == GroupRingMatrix2.scalar(ONE_PLUS_T, BitMatrix.identity(3))
    n = BitMatrix.from_lists([[1, 0, 0], [0, 1, 1], [1, 0, 1]])
    assert fox.derived_matrix_mod2(cov("10")) == GroupRingMatrix2.scalar(ONE_PLUS_T, n)


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("c", [1, 2, 3])
def test_engine_equals_closed_form(g, c):
    for phi in all_coverings(g, 2 * c):
        m = fox.derived_matrix(phi)
        assert m == fox.closed_form_matrix(phi)
        assert m.mod2() == fox.derived_matrix_mod2(phi)
        assert fox.sum_n_epsilon(phi) == 0
        assert fox.fundamental_identity_holds(phi)


def test_sum_n_epsilon_g3():
    assert all(fox.sum_n_epsilon(phi) == 0 for phi in all_coverings(3, 2))


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("c", [0, 1, 2, 3, 4])
def test_vq_normal_form(g, c):
    n = 2 * g
    diag = BitMatrix(n + 1, n + 1, tuple(1 << i for i in range(n)) + ((c % 2) << n,))
    for phi in all_coverings(g, 2 * c):
        p, s = fox.vq_transforms(phi)
        assert is_invertible(p) and is_invertible(s)
        assert fox.vq_normal_form(phi) == GroupRingMatrix2.scalar(ONE_PLUS_T, diag)


def test_module_structure_examples():
    ms = fox.module_structure(cov("00", 2))
    assert (ms.free_rank, ms.torsion, ms.mod2_str()) == (3, (), "Z₂³")
    ms = fox.module_structure(cov("00", 6))
    assert (ms.free_rank, ms.torsion, ms.mod2_str()) == (3, (3,), "Z₂³")
    ms = fox.module_structure(cov("0000", 4))
    assert (ms.free_rank, ms.torsion, ms.mod2_str()) == (5, (2,), "Z₂⁴ ⊕ Z₂[Z₂]")
    assert fox.module_structure(cov("00", 4)).mod2_str() == "Z₂² ⊕ Z₂[Z₂]"
    assert fox.module_structure(cov("00", 0)).free_rank == 4


def test_module_read_off_normal_form():
    for c in (1, 2, 3, 4):
        for phi in all_coverings(2, 2 * c):
            ms = fox.module_structure(phi)
            assert fox.module_from_normal_form(fox.vq_normal_form(phi)) == (ms.z2_summands, ms.z2z2_summands)


def test_change_generators_examples():
    phi = cov("00")
    phi2, c = fox.change_generators(phi, BitVector.zeros(2))
    assert phi2 == phi and c.is_identity()
    phi2, c = fox.change_generators(phi, BitVector.from_str("10"))
    assert phi2 == cov("10")
    assert fox.rewritten_derived_matrix(phi, BitVector.from_str("10")) == c @ fox.derived_matrix(phi).mod2()


@pytest.mark.parametrize("g", [1, 2])
@pytest.mark.parametrize("c", [1, 2])
def test_change_generators_all_alpha(g, c):
    n = 2 * g
    for phi in all_coverings(g, 2 * c):
        for bits in range(1 << n):
            alpha = BitVector(n, bits)
            phi2, _ = fox.change_generators(phi, alpha)
            assert phi2.n == phi.n + alpha
            assert fox.change_generators(phi2, alpha)[0] == phi


def test_rewritten_matrix_is_not_always_the_standard_one():
    """The Fox matrix in the new generators differs from the standard
    derived matrix of phi' in general."""
    phi, alpha = cov("10"), BitVector.from_str("01")
    phi2, _ = fox.change_generators(phi, alpha)
    assert fox.rewritten_derived_matrix(phi, alpha) != fox.derived_matrix_mod2(phi2)
    same = sum(
        fox.rewritten_derived_matrix(p, BitVector(2, a)) == fox.derived_matrix_mod2(fox.change_generators(p, BitVector(2, a))[0])
        for p, a in itertools.product(all_coverings(1, 2), range(4))
    )
    assert 0 < same < 16
