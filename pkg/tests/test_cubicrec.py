import random

import pytest
from hypothesis import given, strategies as st

from logbundle.arrangement import conic_matrix, random_smooth_conic
from logbundle.cubicrec import (
    build_system_H,
    diagonal_kernel_vector,
    fermat_closed_form,
    hermite_verify,
    kernel_basis,
    net_generators,
    reconstruct_all,
    reconstruct_cubic,
    schwarz_system,
)
from logbundle.errors import InconsistentSystem, SingularConic, ZeroKernelVector
from logbundle.exactalg import QQ, PrimeField, plane_ring
from logbundle.modres.linalg import matvec, rank

from strategies import smooth_conics


def test_rank_at_most_eight_on_random_conics():
    rng = random.Random(8)
    R = plane_ring(QQ)
    for _ in range(100):
        f4 = random_smooth_conic(R, rng)
        H = build_system_H(f4)
        assert rank(QQ, H) <= 8
        for rec in reconstruct_all(f4):
            assert all(r.is_zero() for r in rec.residuals())


def test_h_matches_mixed_partials():
    rng = random.Random(9)
    for field in (QQ, PrimeField(101)):
        R = plane_ring(field)
        for _ in range(20):
            f4 = random_smooth_conic(R, rng)
            H = build_system_H(f4)
            S = schwarz_system(f4)
            r = rank(field, H)
            assert r == rank(field, S) == rank(field, H + S)


def test_h_of_diagonal_conic(R):
    f4 = R.parse("2*x0^2 - x1^2 + 5*x2^2")
    H = build_system_H(f4)
    zero_cols = [j for j in range(9) if all(not H[i][j] for i in range(9))]
    assert len(zero_cols) >= 3
    e = diagonal_kernel_vector(QQ)
    assert not any(matvec(QQ, H, list(e)))


def test_fermat(R):
    f4 = R.parse("x0^2 + x1^2 + x2^2")
    rec = reconstruct_cubic(f4, diagonal_kernel_vector(QQ))
    third = QQ.convert("2/3")
    assert rec.g == R.parse("x0^3 + x1^3 + x2^3").scale(third)
    assert all(r.is_zero() for r in rec.residuals())
    assert hermite_verify(rec.g, f4)
    assert hermite_verify(rec.g, f4).smooth


@pytest.mark.parametrize("text", ["x0^2 + x1^2 + x2^2", "3*x0^2 - 2*x1^2 + 7*x2^2", "-x0^2 + 4*x1^2 + x2^2"])
def test_diagonal_closed_form(R, text):
    f4 = R.parse(text)
    rec = reconstruct_cubic(f4, diagonal_kernel_vector(QQ))
    assert rec.g == fermat_closed_form(f4)
    # partials are x_i d_i f4 on the nose
    x = R.gens()
    for i in range(3):
        assert rec.g.derivative(i) == x[i] * f4.derivative(i)


def test_closed_form_rejects_non_diagonal(R):
    with pytest.raises(ValueError):
        fermat_closed_form(R.parse("x0^2 + x0*x1 + x1^2 + x2^2"))


def test_zero_kernel_vector(R):
    with pytest.raises(ZeroKernelVector):
        reconstruct_cubic(R.parse("x0^2 + x1^2 + x2^2"), [0] * 9)


def test_singular_input(R):
    with pytest.raises(SingularConic):
        build_system_H(R.parse("x0^2 + x1^2"))


def test_vector_outside_kernel_is_infeasible(R):
    f4 = R.parse("x0^2 + x0*x1 + 2*x1^2 - x1*x2 + 3*x2^2")
    H = build_system_H(f4)
    e = [1, 0, 0, 0, 0, 0, 0, 0, 0]
    assert any(matvec(QQ, H, [QQ.convert(v) for v in e]))
    with pytest.raises(InconsistentSystem):
        reconstruct_cubic(f4, e)


@given(smooth_conics(), st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_solvable_iff_in_kernel(f4, e):
    if not any(e):
        return
    in_kernel = not any(matvec(QQ, build_system_H(f4), [QQ.convert(v) for v in e]))
    try:
        rec = reconstruct_cubic(f4, e)
    except InconsistentSystem:
        assert not in_kernel
    except ZeroKernelVector:
        assert in_kernel
    else:
        assert in_kernel
        assert all(r.is_zero() for r in rec.residuals())


@given(smooth_conics())
def test_reconstruction_soundness(f4):
    assert rank(QQ, build_system_H(f4)) <= 8
    for rec in reconstruct_all(f4):
        assert all(r.is_zero() for r in rec.residuals())
        assert hermite_verify(rec.g, f4)


def test_kernel_basis_is_deterministic(R):
    f4 = R.parse("x0^2 + x0*x2 + 2*x1^2 - x1*x2 + 3*x2^2")
    assert kernel_basis(f4) == kernel_basis(f4)
    assert len(kernel_basis(f4)) == 9 - rank(QQ, build_system_H(f4))


def test_hermite_negative(R):
    assert not hermite_verify(R.parse("x0^3"), R.parse("x1^2 + x2^2 + x0*x1"))


def test_dependent_net_skips_zero_cubics(R):
    # x0 d0 f4 = x1 d1 f4 here, so part of ker H integrates to zero
    f4 = R.parse("x0*x1 + x2^2")
    recs = reconstruct_all(f4)
    assert recs and all(not r.g.is_zero() for r in recs)
    assert len(recs) < len(kernel_basis(f4))


def test_hermite_net_span(R):
    f4 = R.parse("x0^2 + x1^2 + x2^2")
    net = net_generators(f4)
    assert [str(p) for p in net] == ["2*x0^2", "2*x1^2", "2*x2^2"]
    assert hermite_verify(R.parse("x0^3 - 4*x2^3"), f4)
    assert not hermite_verify(R.parse("x0^2*x1"), f4)


def test_target_identity_over_finite_field():
    F = PrimeField(101)
    R = plane_ring(F)
    rng = random.Random(2)
    for _ in range(10):
        f4 = random_smooth_conic(R, rng)
        for rec in reconstruct_all(f4):
            assert all(r.is_zero() for r in rec.residuals())


def test_conic_matrix_scalar(R):
    # the closed form uses d_jj, the diagonal of the symmetric matrix
    f4 = R.parse("3*x0^2 - 2*x1^2 + 7*x2^2")
    d = conic_matrix(f4)
    assert fermat_closed_form(f4) == R.parse("3*x0^3 - 2*x1^3 + 7*x2^3").scale(QQ.convert("2/3"))
    assert [d[i][i] for i in range(3)] == [3, -2, 7]
