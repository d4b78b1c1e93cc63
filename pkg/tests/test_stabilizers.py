import pytest

from arfcover.gf2 import BitMatrix, BitVector
from arfcover.quadform import compose, evaluate, omega0, omega1, reference_form
from arfcover.stabilizers import (
    alpha_set,
    b_matrix,
    cover_witness,
    sp0_vector_orbits,
    membership,
    sp_generators,
    sp_subgroup,
)
from arfcover.symplectic import is_symplectic, symplectic_group, transvection

A1 = [[1, 0, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 0, 0, 1]]
A2 = [[1, 0, 0, 0], [0, 1, 0, 1], [1, 0, 1, 1], [0, 0, 0, 1]]


def test_b_matrices_verbatim():
    assert b_matrix(0, 1).to_lists() == [[1, 1], [0, 1]]
    assert b_matrix(1, 2).to_lists() == A1
    assert b_matrix(2, 2).to_lists() == A2
    b1 = b_matrix(1, 3)
    assert b1.to_lists()[4:] == [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]
    with pytest.raises(ValueError):
        b_matrix(1, 1)
    with pytest.raises(ValueError):
        b_matrix(3, 2)


def test_b_matrices_fix_reference_forms():
    assert is_symplectic(b_matrix(1, 2)) and compose(omega0(2), b_matrix(1, 2)) == omega0(2)
    assert compose(omega1(2), b_matrix(2, 2)) == omega1(2)
    assert compose(omega1(1), b_matrix(0, 1)) == omega1(1)


def test_membership_examples():
    assert membership(BitMatrix.identity(4), 0) and membership(BitMatrix.identity(4), 1)
    assert membership(b_matrix(1, 2), 0)
    assert not membership(b_matrix(0, 1), 0)
    assert membership(b_matrix(0, 1), 1)


def test_generator_sets_fix_their_forms():
    for g in (1, 2, 3):
        for which in (0, 1):
            assert all(membership(m, which) for m in sp_generators(which, g))


@pytest.mark.parametrize("which,g,order", [(0, 1, 2), (1, 1, 6), (0, 2, 72), (1, 2, 120), (0, 3, 40320), (1, 3, 51840)])
def test_generated_subgroup_orders(which, g, order):
    assert len(sp_subgroup(which, g)) == order


@pytest.mark.parametrize("g", [1, 2])
def test_generated_subgroup_is_whole_stabilizer(g):
    for which in (0, 1):
        sub = sp_subgroup(which, g)
        fixing = {a.key for a in symplectic_group(g) if membership(a, which)}
        assert sub.key_set() == fixing


def test_alpha_set_counts():
    for g in (1, 2, 3):
        assert len(alpha_set(1, g)) == 2 ** (g - 1) * (2**g - 1)
        assert len(alpha_set(0, g)) == 2 ** (g - 1) * (2**g + 1)


def test_cover_witness_examples():
    w = cover_witness(BitMatrix.identity(2))
    assert w.which == 0 and w.y.is_zero()
    w = cover_witness(b_matrix(0, 1))
    assert w.which == 1 and w.y.is_zero()
    assert w.fixed_form == omega1(1)


def test_cover_witness_for_all_of_sp4():
    for a in symplectic_group(2):
        w = cover_witness(a)
        t = transvection(w.y)
        assert evaluate(reference_form(w.which, 2), w.y) == 0
        assert t @ a @ t == w.conjugate
        assert membership(w.conjugate, w.which)


def test_sp0_vector_orbits():
    o0, o1 = sp0_vector_orbits(1)
    assert [str(v) for v in o0] == ["10", "01"]
    assert [str(v) for v in o1] == ["11"]
    for g, sizes in [(2, (9, 6)), (3, (35, 28))]:
        o0, o1 = sp0_vector_orbits(g)
        assert (len(o0), len(o1)) == sizes
        assert all(evaluate(omega0(g), v) == 0 and not v.is_zero() for v in o0)
        assert all(evaluate(omega0(g), v) == 1 for v in o1)
