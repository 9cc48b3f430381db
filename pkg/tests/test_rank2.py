from fractions import Fraction

import pytest

from conftest import A2, H3, H15, H32, H51
from kmjm import (
    Coweight,
    NotHyperbolic,
    Rank2Label,
    WeylWord,
    ZeroElement,
    apply_word,
    b_seq,
    build_exceptional_triple,
    check_interleavings,
    classify_intersection,
    defining_word,
    family_root,
    gamma_eta,
    norm,
    rootvec,
    simple_root,
    validate_gcm,
)
from kmjm.rank2 import ab_of
from kmjm.sl2 import verify_triple_elements

H23 = [[2, -3], [-2, 2]]
H16 = [[2, -6], [-1, 2]]


def test_b_seq_anchors():
    assert [b_seq(3, n) for n in range(6)] == [0, 1, 3, 8, 21, 55]
    assert [b_seq(4, n) for n in range(5)] == [0, 1, 4, 15, 56]
    with pytest.raises(ValueError):
        b_seq(2, 3)
    with pytest.raises(ValueError):
        b_seq(3, -1)


def test_gamma_eta_anchors():
    assert [gamma_eta(3, 3, j) for j in range(6)] == [
        (0, 1), (1, 8), (7, 55), (48, 377), (329, 2584), (2255, 17711),
    ]
    assert [gamma_eta(3, 2, j) for j in range(4)] == [
        (0, 1), (1, 5), (4, 19), (15, 71),
    ]
    with pytest.raises(ValueError):
        gamma_eta(2, 2, 3)
    with pytest.raises(ValueError):
        gamma_eta(3, 2, -1)


def test_one_step_recurrence_property():
    # both sequences satisfy X_j = (ab-2) X_{j-1} - X_{j-2}; this closed form
    # is a consequence of the coupled definition, so test it, don't use it
    for a, b in ((3, 2), (5, 1), (3, 3), (7, 1), (4, 4)):
        vals = [gamma_eta(a, b, j) for j in range(10)]
        for j in range(2, 10):
            for part in (0, 1):
                assert vals[j][part] == (a * b - 2) * vals[j - 1][part] - vals[j - 2][part]


def test_symmetric_pairs_sit_on_the_unit_hyperbola():
    for a in (3, 4, 5, 6):
        for n in range(8):
            x, y = b_seq(a, n), b_seq(a, n + 1)
            assert x * x - a * x * y + y * y == 1


def test_b_seq_matches_gamma_eta_in_the_symmetric_case():
    # with a = b the two coupled sequences interleave into the single one:
    # a*gamma_j = b_{2j} and eta_j = b_{2j+1}
    for a in (3, 4, 5):
        for j in range(6):
            gam, eta = gamma_eta(a, a, j)
            assert a * gam == b_seq(a, 2 * j)
            assert eta == b_seq(a, 2 * j + 1)


def test_family_roots_are_real_and_word_generated():
    for matrix in (H32, H51, H23, H16, H3):
        g = validate_gcm(matrix)
        seen = set()
        for fam in ("LL", "LU", "SU", "SL"):
            for j in range(9):
                label = Rank2Label(fam, j)
                root = family_root(g, label)
                word, base = defining_word(g, label)
                assert apply_word(g, word, simple_root(2, base)) == root
                assert norm(g, root) == norm(g, simple_root(2, base))
                seen.add((fam, root.coeffs))
        assert len(seen) == 4 * 9  # distinct within each family


def test_family_base_cases():
    g = validate_gcm(H51)
    assert ab_of(g) == (5, 1)
    assert family_root(g, Rank2Label("LL", 0)).coeffs == (1, 0)
    assert family_root(g, Rank2Label("SU", 0)).coeffs == (0, 1)
    assert family_root(g, Rank2Label("LU", 0)).coeffs == (1, 5)
    assert family_root(g, Rank2Label("SL", 0)).coeffs == (1, 1)
    # swapped orientation mirrors the coefficients
    gs = validate_gcm(H15)
    assert family_root(gs, Rank2Label("LL", 0)).coeffs == (0, 1)
    assert family_root(gs, Rank2Label("LU", 0)).coeffs == (5, 1)


def test_label_validation():
    with pytest.raises(ValueError):
        Rank2Label("XX", 0)
    with pytest.raises(ValueError):
        Rank2Label("LL", -1)
    with pytest.raises(NotHyperbolic):
        ab_of(validate_gcm(A2))
    with pytest.raises(NotHyperbolic):
        ab_of(validate_gcm([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]))


def test_check_interleavings():
    rep = check_interleavings(3, 2, 25)
    assert rep.ok and rep.case == "a" and rep.first_violation is None
    rep = check_interleavings(5, 1, 25)
    assert rep.ok and rep.case == "b"
    assert "gamma_eta_shifted" in rep.chains
    with pytest.raises(ValueError):
        check_interleavings(2, 2, 10)  # affine, not hyperbolic
    with pytest.raises(ValueError):
        check_interleavings(3, 2, 1)
    with pytest.raises(ValueError):
        check_interleavings(2, 3, 10)  # wrong orientation


def test_classify_single_and_empty():
    g = validate_gcm(H51)
    w = WeylWord((2, 1, 2))
    v = classify_intersection(g, w, Coweight((1, 1)), 5)
    assert v.kind == "Single" and v.root.coeffs == (1, 4)
    assert not v.exceptional
    v = classify_intersection(g, w, Coweight((1, 1)), 2)
    assert v.kind == "Empty" and v.roots == ()
    with pytest.raises(ValueError):
        v.root  # no single root on an empty verdict


def test_classify_exceptional_cases():
    g = validate_gcm(H51)
    v = classify_intersection(g, WeylWord((1, 2)), Coweight((1, 0)), 1)
    assert v.kind == "ExceptionalI" and not v.swapped
    assert [r.coeffs for r in v.roots] == [(1, 0), (1, 1)]
    v = classify_intersection(g, WeylWord((2, 1, 2)), Coweight((1, 0)), 1)
    assert v.kind == "ExceptionalII" and not v.swapped
    assert [r.coeffs for r in v.roots] == [(1, 4), (1, 5)]


def test_classify_swapped_orientation():
    g = validate_gcm(H15)
    v = classify_intersection(g, WeylWord((2, 1)), Coweight((0, 1)), 1)
    assert v.kind == "ExceptionalI" and v.swapped
    assert [r.coeffs for r in v.roots] == [(0, 1), (1, 1)]


def test_classify_input_guards():
    g = validate_gcm(H51)
    with pytest.raises(NotHyperbolic):
        classify_intersection(validate_gcm(A2), WeylWord((1, 2)), Coweight((1, 1)), 1)
    with pytest.raises(ValueError):
        classify_intersection(g, WeylWord((1, 2)), Coweight((1, 1)), 0)
    with pytest.raises(ValueError):
        classify_intersection(g, WeylWord((1, 2)), Coweight((0, 0)), 1)


def test_exceptional_triple_case_two(algebra):
    g = validate_gcm(H51)
    alg = algebra(H51, 12)
    v = classify_intersection(g, WeylWord((2, 1, 2)), Coweight((1, 0)), 1)
    assert v.kind == "ExceptionalII"
    from kmjm import real_root_vector

    vec, _ = real_root_vector(alg, rootvec((1, 4)))
    for x, y in ((1, 1), (2, 3), (1, -1)):
        t = build_exceptional_triple(g, v, x, y, alg)
        assert t.e == Fraction(x) * vec + Fraction(y) * alg.bracket(alg.e(2), vec)
        assert verify_triple_elements(alg, t)


def test_exceptional_triple_case_one(algebra):
    g = validate_gcm(H51)
    alg = algebra(H51, 12)
    v = classify_intersection(g, WeylWord((1, 2)), Coweight((1, 0)), 1)
    assert v.kind == "ExceptionalI"
    for x, y in ((1, 1), (2, 3), (1, -1)):
        t = build_exceptional_triple(g, v, x, y, alg)
        assert t.e == Fraction(x) * alg.e(1) + Fraction(y) * alg.bracket(
            alg.e(2), alg.e(1)
        )
        assert verify_triple_elements(alg, t)


def test_exceptional_triple_collapses(algebra):
    g = validate_gcm(H51)
    alg = algebra(H51, 12)
    v = classify_intersection(g, WeylWord((1, 2)), Coweight((1, 0)), 1)
    t = build_exceptional_triple(g, v, 3, 0, alg)
    assert t.e == 3 * alg.e(1)
    assert verify_triple_elements(alg, t)
    t = build_exceptional_triple(g, v, 0, 2, alg)
    assert verify_triple_elements(alg, t)
    with pytest.raises(ZeroElement):
        build_exceptional_triple(g, v, 0, 0, alg)


def test_exceptional_triple_swapped(algebra):
    g = validate_gcm(H15)
    alg = algebra(H15, 12)
    v = classify_intersection(g, WeylWord((2, 1)), Coweight((0, 1)), 1)
    t = build_exceptional_triple(g, v, 1, 1, alg)
    assert verify_triple_elements(alg, t)


def test_exceptional_triple_argument_guards(algebra):
    g = validate_gcm(H51)
    alg = algebra(H51, 12)
    single = classify_intersection(g, WeylWord((2, 1, 2)), Coweight((1, 1)), 5)
    with pytest.raises(ValueError):
        build_exceptional_triple(g, single, 1, 1, alg)
    v = classify_intersection(g, WeylWord((1, 2)), Coweight((1, 0)), 1)
    other = algebra(H32, 6)
    with pytest.raises(ValueError):
        build_exceptional_triple(g, v, 1, 1, other)


def test_exceptional_triple_at_minimum_height():
    # a + 3 is the least window that fits every intermediate degree
    g = validate_gcm(H51)
    from kmjm import build_truncated

    alg = build_truncated(g, 8, mode="fast")
    v = classify_intersection(g, WeylWord((2, 1, 2)), Coweight((1, 0)), 1)
    t = build_exceptional_triple(g, v, 1, 1, alg)
    assert verify_triple_elements(alg, t)
