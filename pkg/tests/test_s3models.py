"""Function-space models of the S3 representations and their orthogonal bases."""

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadalg.opcalc import GQ, I, Poly, matrix_on_monomials, op_apply, parse_gq, pochhammer
from quadalg.s3models import (
    ConvergenceError,
    basis_consistency,
    cdh_basis,
    cdh_orthogonality_numeric,
    chi,
    dual_hahn_norm,
    dual_hahn_orthogonality,
    dual_hahn_poly,
    dual_hahn_weight,
    gauss_norm_identity,
    grid_consistency,
    homomorphism_check,
    kernel_poly,
    l1_eigenfunction,
    l1_spectrum_check,
    model_difference_finite,
    model_difference_infinite,
    model_differential,
    norms_and_kernel,
    reproducing_check,
    tabulate_basis,
    verify_model,
    weight_series_check,
    weight_spec,
)
from quadalg.s3rep import S3Params, build_rep

q = parse_gq
t = Poly([0, 1])
THIRD = GQ(1) / 3


def F(x):
    return Fraction(x)


# -- differential model ----------------------------------------------------------------


def test_differential_l1_on_constant():
    L1 = model_differential(S3Params.finite(2, THIRD)).ops["L1"]
    assert op_apply(L1, Poly([1])) == Poly([-GQ(3) / 2, -GQ(4) / 3])


def test_differential_model_verifies():
    assert verify_model(model_differential(S3Params.finite(2, THIRD))).passed
    assert verify_model(model_differential(S3Params.bounded_below(q("3/2"), q("1/4")))).passed


def test_monomial_matrices_equal_rep():
    p = S3Params.finite(2, THIRD)
    assert matrix_on_monomials(model_differential(p).ops["L1"], 3) == build_rep(p).L1
    assert homomorphism_check(p).passed


# -- spectrum ------------------------------------------------------------------------


def test_chi_examples():
    a = q("2/9")
    assert chi(0, a) == a - GQ(1) / 2
    p = S3Params.finite(2, THIRD)
    assert l1_spectrum_check(p, 1)[0] == -GQ(3) / 2
    values = [l1_spectrum_check(p, n)[0] for n in range(3)]
    assert sum(values, GQ(0)) == -GQ(13) / 2 == build_rep(p).L1.trace()


def test_printed_eigenfunction_fails_below_top():
    p = S3Params.finite(3, THIRD)
    L1 = model_differential(p).ops["L1"]
    v = l1_eigenfunction(p, 1, printed=True)
    assert op_apply(L1, v) != v * chi(1, p.a)
    # the two forms agree at n = m
    top = l1_eigenfunction(p, 3, printed=True)
    assert op_apply(L1, top) == top * chi(3, p.a)


@given(st.integers(0, 6), st.fractions(min_value=-3, max_value=3, max_denominator=7))
def test_eigenfunctions_property(m, a):
    a = GQ(a)
    if (a - m).is_nonpositive_integer() or a.is_integer():
        return
    p = S3Params.finite(m, a)
    for n in range(m + 1):
        value, _ = l1_spectrum_check(p, n)
        assert value == chi(n, a)


# -- norms and kernel --------------------------------------------------------------


def test_norm_examples():
    p = S3Params.finite(2, THIRD)
    norms, kernel = norms_and_kernel(p)
    # (mu)_1 (1-a)_1 / (1! (a+mu)_1) = (-2)(2/3)/(-5/3)
    assert norms.kn2[1] == GQ(4) / 5
    assert all(norms.kn2[n] == norms.kn2[2 - n] for n in range(3))
    assert kernel(0)(0) == 1


def test_reproducing_kernel():
    assert reproducing_check(S3Params.finite(3, q("2/7")), q("1/2+i"))


# -- weight ---------------------------------------------------------------------------


def test_weight_exponents():
    p = S3Params.bounded_below(2, GQ(1) / 2)
    assert weight_spec(p, branch="rho2").exponent == p.mu + p.a
    assert weight_spec(p, branch="rho1").exponent == 1 - 2 * p.a


@pytest.mark.parametrize("mu, a", [(2, "1/2"), (1, "1/4")])
@pytest.mark.parametrize("branch", ["rho1", "rho2"])
def test_weight_series_exact(mu, a, branch):
    report = weight_series_check(S3Params.bounded_below(mu, q(a)), branch, K=30)
    assert report.passed


def test_printed_rho2_parameters_fail():
    assert not weight_series_check(S3Params.bounded_below(2, GQ(1) / 2), "rho2", K=10, printed=True).passed


@pytest.mark.parametrize("mu, a", [(2, "1/4"), (1, "1/2")])
def test_gauss_norm_identity(mu, a):
    for branch in ("rho1", "rho2"):
        assert gauss_norm_identity(mu, q(a), branch, tol=1e-9).passed


def test_gauss_norm_value_against_mpmath():
    # independent: mpmath Gamma on the closed form at mu=2, a=1/4
    mu, a = 2.0, 0.25
    Q = math.sqrt(a * a + (2 * mu - 8) * a + mu * mu + 4 * mu - 8)
    want = mpmath.gamma(2 - 2 * a) * mpmath.gamma(a + mu + 1)
    want /= mpmath.gamma(2 - (a - mu + Q) / 2) * mpmath.gamma(2 - (a - mu - Q) / 2)
    report = gauss_norm_identity(2, q("1/4"), "rho1")
    assert abs(float(report.extra["closed_form"]) - float(want)) < 1e-12


def test_gauss_norm_rejects_boundary():
    with pytest.raises(ConvergenceError):
        gauss_norm_identity(2, 1)


# -- finite difference model --------------------------------------------------------


def test_finite_difference_model_verifies():
    model = model_difference_finite(2, THIRD)
    assert verify_model(model).passed
    assert grid_consistency(2, THIRD).passed


def test_finite_difference_printed_fails():
    assert not verify_model(model_difference_finite(2, THIRD, printed=True)).passed


def test_finite_difference_diagonal_is_chi_on_grid():
    m, a = 4, q("2/7")
    L1 = model_difference_finite(m, a).ops["L1"]
    for n in range(m + 1):
        assert L1[0](GQ(n)) == chi(n, a)


def test_dual_hahn_p1_vanishes_at_grid_one():
    # p_1(lambda(1)) = 1 + (-1)(-1)(1-2/3+1)/((-2)(2/3)) = 1 - 1 = 0
    assert dual_hahn_poly(2, THIRD, 1)(GQ(1)) == 0


def _dual_hahn_reference(m, a, n, n2):
    """Independent evaluation with Fractions: weight, 3F2 and closed-form norm."""

    def poch(x, k):
        out = Fraction(1)
        for j in range(k):
            out *= x + j
        return out

    def p(n, x):
        return sum(
            poch(-n, k) * poch(-x, k) * poch(x - 2 * a + 1, k) / (poch(-m, k) * poch(1 - a, k) * math.factorial(k))
            for k in range(n + 1)
        )

    def w(x):
        return (
            poch(1 - 2 * a, x) * poch(Fraction(3, 2) - a, x) * poch(-m, x) * (-1) ** x
            / (poch(Fraction(1, 2) - a, x) * poch(2 + m - 2 * a, x) * math.factorial(x))
        )

    total = sum(w(x) * p(n, x) * p(n2, x) for x in range(m + 1))
    closed = (
        poch(2 - 2 * a, m) * poch(a - m, n) * math.factorial(n) / (poch(1 - a, m) * poch(1 - a, n) * poch(-m, n))
        if n == n2
        else 0
    )
    return total, closed


def test_dual_hahn_examples():
    assert dual_hahn_orthogonality(2, THIRD, 0, 1) == (0, 0)
    assert dual_hahn_orthogonality(2, THIRD, 0, 0) == (GQ(14) / 5, GQ(14) / 5)
    assert dual_hahn_orthogonality(2, THIRD, 1, 1) == (GQ(7) / 2, GQ(7) / 2)
    ref = _dual_hahn_reference(2, F("1/3"), 1, 1)
    assert ref == (F("7/2"), F("7/2"))


@given(st.integers(0, 5), st.sampled_from([F("1/3"), F("-2/5"), F("5/7")]), st.data())
def test_dual_hahn_against_reference(m, a, data):
    n = data.draw(st.integers(0, m))
    n2 = data.draw(st.integers(0, m))
    got = dual_hahn_orthogonality(m, GQ(a), n, n2)
    want = _dual_hahn_reference(m, a, n, n2)
    assert got == (GQ(want[0]), GQ(want[1]))


def test_dual_hahn_weight_at_zero():
    assert dual_hahn_weight(3, THIRD, 0) == 1
    assert dual_hahn_norm(3, THIRD, 0) == dual_hahn_orthogonality(3, THIRD, 0, 0)[1]


# -- infinite difference model -----------------------------------------------------------


def test_infinite_difference_model_verifies():
    model = model_difference_infinite(2, GQ(1) / 2)
    assert verify_model(model).passed
    assert basis_consistency(model, 6).passed


def test_infinite_difference_printed_fails():
    assert not verify_model(model_difference_infinite(2, GQ(1) / 2, printed=True)).passed


def test_infinite_l1_is_multiplication():
    a = q("1/4")
    L1 = model_difference_infinite(q("3/2"), a).ops["L1"]
    assert L1.shifts() == [0]
    assert L1[0] == t * t + (a * a - GQ(1) / 4)


def test_cdh_basis_zero_is_one():
    assert cdh_basis(q("3/2"), q("1/4"), 0) == Poly([1])


def test_cdh_orthogonality():
    off = cdh_orthogonality_numeric(q("3/2"), q("1/4"), 0, 1)
    assert off.passed
    diag = cdh_orthogonality_numeric(q("3/2"), q("1/4"), 0, 0)
    assert diag.passed
    want = float(mpmath.gamma(1.5) * mpmath.gamma(0.75) * mpmath.gamma(1.75))
    assert abs(float(diag.extra["closed_form"]) - want) < 1e-12 * want
    assert abs(float(diag.extra["integral"]) - want) < 1e-6 * want


def test_cdh_weight_positive():
    from quadalg.s3models import _cdh_logweight

    assert all(math.isfinite(_cdh_logweight(x, 1.5, 0.25)) for x in (0.01, 0.5, 3.0, 20.0))


def test_tabulate_basis_columns():
    csv_text = tabulate_basis(model_difference_finite(2, THIRD), range(2), range(3))
    lines = csv_text.strip().splitlines()
    assert lines[0] == "t,n,value_re,value_im"
    assert len(lines) == 1 + 2 * 3
