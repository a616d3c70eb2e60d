"""Tridiagonal S3 representations: coefficients, matrices, ladder, classification."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadalg.opcalc import GQ, I, Matrix, parse_gq
from quadalg.s3rep import (
    F_difference_rhs,
    F_quartic,
    S3Params,
    SplittingError,
    build_rep,
    classify,
    energy_lowest_weight,
    kappa_general,
    ladder_check,
    norms_positive,
    rep_coefficients,
    verify_matrix_structure,
)

q = parse_gq
small = st.fractions(min_value=-6, max_value=6, max_denominator=9).map(lambda f: GQ(f))


@pytest.mark.parametrize(
    "mu, H, alpha, want",
    [(2, -2, 0, GQ(0)), (1, 0, 0, GQ(0)), (0, 0, 1, GQ(3) / 16)],
)
def test_kappa_examples(mu, H, alpha, want):
    assert kappa_general(mu, H, alpha) == want


@given(small, small, small, st.integers(-5, 8))
def test_quartic_solves_difference_equation(mu, H, alpha, n):
    k = kappa_general(mu, H, alpha)
    lhs = F_quartic(mu, H, alpha, k, n + 1) - F_quartic(mu, H, alpha, k, n)
    assert lhs == F_difference_rhs(mu, H, alpha, n)


@given(small, small, st.integers(0, 8))
def test_factorized_F_matches_quartic_on_lowest_weight(mu, a, n):
    p = S3Params.bounded_below(mu, a) if not mu.is_nonpositive_integer() else S3Params.finite(-int(mu.re), a)
    c = rep_coefficients(p, n)
    assert c.F == F_quartic(p.mu, p.H, p.alpha, 0, n)


def test_rep_coefficient_examples():
    p = S3Params.finite(2, GQ(1) / 3)
    assert rep_coefficients(p, 0).C_up == -GQ(4) / 3
    assert rep_coefficients(p, 0).C_diag == -GQ(3) / 2
    assert all(rep_coefficients(p, n).D_diag == 0 for n in range(3))
    assert rep_coefficients(S3Params.bounded_below(2, GQ(1) / 2), 1).F == GQ(5) / 2


def test_lowest_weight_energy():
    # H = -(mu - 1 + a)^2 + 1/4
    assert energy_lowest_weight(2, GQ(1) / 2) == -GQ(9) / 4 + GQ(1) / 4


def test_build_rep_examples():
    rep = build_rep(S3Params.finite(2, GQ(1) / 3))
    assert rep.dim == 3
    assert rep.X == Matrix.diag([-2 * I, 0, 2 * I])
    assert rep.L1[0, 0] == -GQ(3) / 2
    big = build_rep(S3Params.bounded_below(2, GQ(1) / 2), N=10)
    assert all(big.L2[k, k] == 0 for k in range(10))


def test_build_rep_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        build_rep(S3Params.finite(2, GQ(1) / 3), N=5)


def test_structure_finite_passes():
    report = verify_matrix_structure(build_rep(S3Params.finite(2, GQ(1) / 3)))
    assert report.passed and len(report.checks) == 5
    assert all(c.residual_norm == "0" for c in report.checks)


def test_structure_truncated_interior_passes():
    report = verify_matrix_structure(build_rep(S3Params.bounded_below(2, GQ(1) / 2), N=10))
    assert report.passed
    assert report.extra["window"] == [0, 8]


def test_structure_perturbed_names_failure():
    rep = build_rep(S3Params.finite(2, GQ(1) / 3))
    rows = [list(r) for r in rep.L1.rows]
    rows[0][0] = rows[0][0] + 1
    rep.L1 = Matrix(rows)
    report = verify_matrix_structure(rep)
    assert not report.passed
    assert "[L1,X]=2L2" not in report.failing()  # diagonal shift commutes with diagonal X
    assert "casimir" in report.failing()


def test_generic_rep_with_square_discriminant():
    # 1 - 4(H + alpha) + 16 H alpha = 9/4
    p = S3Params.generic(q("1/3"), q("-2"), q("3/16"))
    rep = build_rep(p, N=8)
    assert verify_matrix_structure(rep).passed


def test_generic_rep_non_square_discriminant_raises():
    p = S3Params.generic(q("1/3"), q("-1"), q("1/3"))  # discriminant -5/3
    with pytest.raises(SplittingError):
        rep_coefficients(p, 0)
    assert rep_coefficients(p, 0, split=False).C_up is None


def test_ladder_annihilation_and_companion_factor():
    p = S3Params.bounded_below(2, GQ(1) / 2)
    rep = build_rep(p, N=10)
    four = ladder_check(rep, factor=4)
    assert four.passed
    assert four["A f_0 = 0"].passed
    two = ladder_check(rep, factor=2)
    assert not two.passed  # the diagonal equals 4(F_{n+1}-F_n); 10 at n=0 where 2(F1-F0) = 5


def test_ladder_commutator_value_at_origin():
    from quadalg.s3rep import ladder_operators

    rep = build_rep(S3Params.bounded_below(2, GQ(1) / 2), N=6)
    A, A_dag = ladder_operators(rep)
    c = A @ A_dag - A_dag @ A
    assert c[0, 0] == 10
    assert A.column(0) == [0] * 6


def test_ladder_finite_top():
    rep = build_rep(S3Params.finite(3, GQ(1) / 3))
    report = ladder_check(rep, factor=4)
    assert report["A^dag f_m = 0"].passed and report.passed


def test_classify_examples():
    c = classify(-3, GQ(1) / 3)
    assert c.kind == "finite" and c.dim == 4 and c.spectrum == (3, 1, -1, -3)
    c = classify(GQ(3) / 2, GQ(1) / 2)
    assert c.kind == "bounded_below" and c.models == ("differential", "difference")
    c = classify(-GQ(1) / 2, GQ(5) / 4)
    assert c.kind == "bounded_below" and c.models == ("differential",) and "n0=1" in c.detail


def test_classify_boundary_reported():
    c = classify(GQ(3) / 2, 1)
    assert c.kind == "none" and c.boundary


@given(small, small)
def test_norms_positive_agrees_with_scan(mu, a):
    from fractions import Fraction

    mu_f, a_f = mu.real_fraction(), a.real_fraction()
    if mu_f <= 0 and mu_f.denominator == 1:
        return
    # direct scan far past every root
    ok = True
    for n in range(1, 40):
        den = n * (n - 1 + mu_f + a_f)
        num = (n - 1 + mu_f) * (n - a_f)
        if den == 0 or num * den <= 0:
            ok = False
            break
    assert norms_positive(mu, a) == ok
