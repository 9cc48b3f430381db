import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import A2, A2_AFFINE, A1_AFFINE, H3
from kmjm import (
    HeightOutOfRange,
    coroot_pairing,
    is_root,
    norm,
    peterson_multiplicities,
    rootvec,
    simple_root,
    validate_gcm,
)


def test_a2_positive_roots(oracle):
    tab = oracle(A2, 8)
    assert sorted(r.coeffs for r in tab.roots()) == [(0, 1), (1, 0), (1, 1)]
    assert all(tab.multiplicity(r) == 1 for r in tab.roots())


def test_affine_a1_imaginary_multiplicities(oracle):
    tab = oracle(A1_AFFINE, 8)
    for k in range(1, 5):
        assert tab.multiplicity(rootvec((k, k))) == 1
    assert tab.multiplicity(rootvec((2, 1))) == 1
    assert tab.multiplicity(rootvec((3, 1))) == 0


def test_h3_small_multiplicities(oracle):
    tab = oracle(H3, 6)
    assert tab.multiplicity(rootvec((1, 1))) == 1
    assert tab.multiplicity(rootvec((2, 2))) == 1
    assert norm(validate_gcm(H3), rootvec((2, 2))) == -8


def test_affine_a2_degenerate_denominator_regression(oracle):
    # (0,2,2) and (0,2,3) sit on the null cone of the recurrence; the
    # oracle must run clean through them and report zero multiplicity.
    tab = oracle(A2_AFFINE, 12)
    for k in range(1, 5):
        assert tab.multiplicity(rootvec((k, k, k))) == 2
    assert tab.multiplicity(rootvec((0, 2, 2))) == 0
    assert tab.multiplicity(rootvec((0, 2, 3))) == 0
    assert tab.multiplicity(rootvec((2, 1, 1))) == 1
    assert tab.multiplicity(rootvec((1, 1, 0))) == 1


def test_twisted_affine_delta():
    g = validate_gcm([[2, -1], [-4, 2]])
    tab = peterson_multiplicities(g, 8)
    for k in (1, 2):
        assert tab.multiplicity(rootvec((k, 2 * k))) == 1


def test_negative_roots_mirror(oracle):
    tab = oracle(A2, 8)
    assert tab.multiplicity(rootvec((-1, -1))) == 1
    assert is_root(tab, rootvec((-1, 0)))
    assert not is_root(tab, rootvec((-1, 1)))


def test_height_guard(oracle):
    tab = oracle(A2, 8)
    with pytest.raises(HeightOutOfRange):
        is_root(tab, rootvec((9, 9)))


def test_coroot_pairing_recovers_cartan_entries():
    g = validate_gcm(A2_AFFINE)
    for i in range(1, 4):
        for j in range(1, 4):
            assert (
                coroot_pairing(g, simple_root(3, i), simple_root(3, j))
                == g.entries[i - 1][j - 1]
            )


@given(
    st.integers(1, 3),
    st.integers(1, 3),
)
def test_rank2_tables_are_sane(a, b):
    g = validate_gcm([[2, -b], [-a, 2]])
    tab = peterson_multiplicities(g, 8)
    for r in tab.roots():
        m = tab.multiplicity(r)
        assert isinstance(m, int) and m >= 1
        if norm(g, r) > 0:
            assert m == 1
