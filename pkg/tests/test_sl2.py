from fractions import Fraction

import pytest

from conftest import A2, A1_AFFINE, H51
from kmjm import (
    SingularB,
    ZeroElement,
    build_triple,
    make_pi_system,
    realize_triple,
    rootvec,
    solve_mu,
    validate_gcm,
    verify_realized,
    verify_symbolic,
    verify_triple_elements,
)


def test_solve_mu_basics():
    assert solve_mu(((2,),)) == (Fraction(1),)
    assert solve_mu(((2, -1), (-1, 2))) == (Fraction(2), Fraction(2))


def test_solve_mu_singular():
    with pytest.raises(SingularB):
        solve_mu(((2, -2), (-2, 2)))


def test_build_triple_simple_roots(oracle):
    g = validate_gcm(A2)
    ps = make_pi_system(g, [rootvec((1, 0)), rootvec((0, 1))], oracle(A2, 8))
    triple = build_triple(ps)
    assert triple.coeffs == (Fraction(1), Fraction(1))
    assert triple.mu == (Fraction(2), Fraction(2))
    assert triple.f_coeffs == (Fraction(2), Fraction(2))
    assert verify_symbolic(triple)


def test_build_triple_rejects_zero_or_miscounted_coeffs(oracle):
    g = validate_gcm(A2)
    ps = make_pi_system(g, [rootvec((1, 0)), rootvec((0, 1))], oracle(A2, 8))
    with pytest.raises(ZeroElement):
        build_triple(ps, coeffs=(1, 0))
    with pytest.raises(ValueError):
        build_triple(ps, coeffs=(1,))


def test_realize_principal_a2(algebra, oracle):
    g = validate_gcm(A2)
    ps = make_pi_system(g, [rootvec((1, 0)), rootvec((0, 1))], oracle(A2, 8))
    triple = build_triple(ps, coeffs=(2, 3))
    alg = algebra(A2, 4)
    for policy in ("transport", "basis"):
        assert verify_realized(triple, alg, policy=policy)
        rt = realize_triple(triple, alg, policy=policy)
        assert verify_triple_elements(alg, rt)


def test_realize_tall_singleton(algebra, oracle):
    g = validate_gcm(H51)
    ps = make_pi_system(g, [rootvec((1, 4))], oracle(H51, 12))
    triple = build_triple(ps)
    # h is pinned by the grading: beta(h) = 2
    assert triple.h_coords == (Fraction(5), Fraction(4))
    alg = algebra(H51, 10)
    a = realize_triple(triple, alg, policy="transport")
    b = realize_triple(triple, alg, policy="basis")
    for rt in (a, b):
        assert verify_triple_elements(alg, rt)
    assert a.h.to_serial() == b.h.to_serial()


def test_affine_simples_have_singular_b(oracle):
    g = validate_gcm(A1_AFFINE)
    ps = make_pi_system(g, [rootvec((1, 0)), rootvec((0, 1))], oracle(A1_AFFINE, 8))
    with pytest.raises(SingularB):
        build_triple(ps)


def test_heisenberg_center(algebra):
    alg = algebra(A1_AFFINE, 6)
    e = alg.e(1) + alg.e(2)
    f = alg.f(1) + alg.f(2)
    z = alg.bracket(e, f)
    assert not z.is_zero()
    for i in (1, 2):
        assert alg.bracket(z, alg.e(i)).is_zero()
        assert alg.bracket(z, alg.f(i)).is_zero()
