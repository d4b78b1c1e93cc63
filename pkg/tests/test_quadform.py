import itertools

import pytest
from hypothesis import given, strategies as st

from arfcover.gf2 import BitMatrix, BitVector
from arfcover.quadform import (
    QuadraticForm,
    all_forms,
    arf,
    compose,
    compose_keys,
    difference_vector,
    evaluate,
    fixed_forms_bitmask,
    fixes_form_mask,
    omega0,
    omega1,
    zero_set,
)
from arfcover.symplectic import NotSymplecticError, intersection_product, symplectic_group, transvection

SWAP = BitMatrix.from_lists([[0, 1], [1, 0]])


def vec(s):
    return BitVector.from_str(s)


def arf_by_majority(w: QuadraticForm) -> int:
    """Arf is the value w takes most often."""
    n = 2 * w.g
    ones = sum(evaluate(w, BitVector(n, b)) for b in range(1 << n))
    return int(ones > (1 << n) // 2)


def test_evaluate_examples():
    assert evaluate(omega0(1), vec("11")) == 1
    assert evaluate(omega1(1), vec("11")) == 1
    assert evaluate(omega1(1), vec("10")) == 1
    for w in all_forms(2):
        assert evaluate(w, BitVector.zeros(4)) == 0


def test_arf_examples():
    assert arf(omega0(1)) == 0 and arf(omega0(3)) == 0
    assert arf(omega1(1)) == 1
    assert arf(QuadraticForm.from_str("1111")) == 0


@pytest.mark.parametrize("g", [1, 2])
def test_polarization_exhaustive(g):
    n = 2 * g
    vs = [BitVector(n, b) for b in range(1 << n)]
    for w in all_forms(g):
        for x, y in itertools.product(vs, repeat=2):
            assert evaluate(w, x + y) == evaluate(w, x) ^ evaluate(w, y) ^ intersection_product(x, y)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_arf_is_majority_value(g):
    for w in all_forms(g):
        assert arf(w) == arf_by_majority(w)


def test_zero_counts():
    for g in (1, 2, 3):
        assert len(zero_set(omega0(g))) == 2 ** (g - 1) * (2**g + 1)
        assert len(zero_set(omega1(g))) == 2 ** (g - 1) * (2**g - 1)


def test_compose_examples():
    assert compose(omega0(2), BitMatrix.identity(4)) == omega0(2)
    assert compose(omega0(1), SWAP) == omega0(1)
    # T_{e1+e2} is the swap at g=1, so it fixes w0 as well
    assert transvection(vec("11")) == SWAP
    assert compose(omega0(1), transvection(vec("11"))) == omega0(1)
    assert compose(omega0(1), transvection(vec("10"))) == QuadraticForm.from_str("01")
    with pytest.raises(NotSymplecticError):
        compose(omega0(1), BitMatrix.from_lists([[1, 0], [0, 0]]))


def test_compose_is_pointwise():
    for a in list(symplectic_group(2))[::7]:
        for w in all_forms(2):
            wa = compose(w, a)
            for b in range(16):
                x = BitVector(4, b)
                assert evaluate(wa, x) == evaluate(w, a.apply(x))


def test_arf_invariant_under_group():
    for a in symplectic_group(2):
        for w in all_forms(2):
            assert arf(compose(w, a)) == arf(w)


def test_difference_vector_examples():
    assert difference_vector(omega1(2), omega1(2)).is_zero()
    assert difference_vector(omega0(1), omega1(1)) == vec("11")


def test_difference_vector_exhaustive_g2():
    for w, w2 in itertools.product(all_forms(2), repeat=2):
        v = difference_vector(w, w2)
        for b in range(16):
            x = BitVector(4, b)
            assert evaluate(w2, x) ^ evaluate(w, x) == intersection_product(v, x)
        # the Arf difference is w evaluated at V, and w o T_V = w2 when that vanishes
        assert arf(w2) ^ arf(w) == evaluate(w, v)
        if evaluate(w, v) == 0:
            assert compose(w, transvection(v)) == w2


def test_vectorised_helpers_agree():
    grp = symplectic_group(2)
    masks = fixed_forms_bitmask(grp.keys, 4)
    for w in all_forms(2):
        images = compose_keys(grp.keys, 4, w)
        fixes = fixes_form_mask(grp.keys, 4, w)
        for i in range(0, len(grp), 11):
            a = grp.element(i)
            assert int(images[i]) == compose(w, a).basis_values.bits
            assert bool(fixes[i]) == (compose(w, a) == w)
            assert bool((int(masks[i]) >> w.basis_values.bits) & 1) == bool(fixes[i])


@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
def test_polarization_g3_property(wb, x, y):
    w = QuadraticForm(3, BitVector(6, wb))
    vx, vy = BitVector(6, x), BitVector(6, y)
    assert evaluate(w, vx + vy) == evaluate(w, vx) ^ evaluate(w, vy) ^ intersection_product(vx, vy)
