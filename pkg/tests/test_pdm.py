"""Position-dependent-mass layer system via the finite S3 representations."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadalg.opcalc import GQ, Matrix, parse_gq
from quadalg.pdm import (
    NonPositiveNorm,
    PdmParams,
    eigen_correspondence,
    parity_basis,
    parity_operator,
    sphere_coords,
)

q = parse_gq


def test_sphere_origin():
    assert sphere_coords(0, 0, 1) == (0.0, 1.0, 0.0)


def test_sphere_unit_norm():
    rng = random.Random(11)
    for _ in range(50):
        x, y, qq = rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0.1, 3)
        s = sphere_coords(x, y, qq)
        assert abs(sum(v * v for v in s) - 1) < 1e-12


def test_sphere_saturates():
    assert abs(sphere_coords(40, 0.3, 1)[2] - 1) < 1e-15


def test_eigen_example_n1():
    lam_s, lam_q, check = eigen_correspondence(PdmParams(1, q("3/2"), 1))
    # mu = -2, a = -1: lambda_S = -(-2 - 1 - 1)^2 + 1/4
    assert lam_s == -GQ(63) / 4
    assert lam_q == 15 == (1 + 2) * (1 + 3 + 1)
    assert check.passed


def test_eigen_example_n0():
    _, lam_q, check = eigen_correspondence(PdmParams(1, q("3/2"), 0))
    assert lam_q == 8 and check.passed


@given(st.fractions(min_value=1, max_value=5, max_denominator=6), st.sampled_from([q("1/2"), q("3/2"), q("5/2"), q("7/3")]), st.integers(0, 8))
def test_eigen_scaling_in_q(qq, k, N):
    qq = GQ(qq)
    _, base, _ = eigen_correspondence(PdmParams(1, k, N))
    _, scaled, check = eigen_correspondence(PdmParams(qq, k, N))
    assert scaled == qq * qq * base
    assert check.passed


def test_params_validate():
    with pytest.raises(ValueError):
        PdmParams(-1, 1, 0)
    with pytest.raises(ValueError):
        PdmParams(1, 1, -1)
    assert PdmParams(1, q("3/2"), 3).a == -1


def test_splits():
    assert PdmParams(1, 1, 4).splits() == [(0, 4), (1, 2), (2, 0)]


def test_parity_dimensions_m2():
    basis = parity_basis(2, -1)
    assert basis.dims == (2, 1)
    assert basis.report.passed


def test_parity_orthogonal_pair():
    basis = parity_basis(3, -1)
    gram = basis.gram()
    n_plus = len(basis.plus)
    assert gram[0, n_plus] == 0


@pytest.mark.parametrize("m", range(11))
@pytest.mark.parametrize("a", [q("-1"), q("-7/3")])
def test_parity_basis_exact(m, a):
    basis = parity_basis(m, a)
    assert basis.report.passed, basis.report.failing()
    assert basis.gram() == Matrix.identity(m + 1)
    plus, minus = basis.dims
    assert plus + minus == m + 1
    assert plus - minus == (1 if m % 2 == 0 else 0)


def test_parity_operator_is_isometric():
    for m in range(7):
        kn2 = parity_basis(m, -1).kn2
        P = parity_operator(kn2)
        assert P @ P == Matrix.identity(m + 1)


def test_non_positive_norms_rejected():
    # 1 < a < m flips the sign of some k_n^2
    with pytest.raises(NonPositiveNorm):
        parity_basis(4, q("5/2"))
