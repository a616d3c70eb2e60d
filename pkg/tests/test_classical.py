"""Classical phase-space models, calibration of lower-order terms and quantization."""


import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from quadalg.classical import (
    SYSTEMS,
    IncompatiblePrescription,
    InconsistentSystem,
    NoAdmissiblePoints,
    QuantumModel,
    Skeleton,
    calibrate_corrections,
    canonical_shift,
    classical_model,
    model3q_printed,
    model3q_skeleton,
    principal_symbol_checks,
    quantize,
    sample_points,
    shift_model,
    shift_product,
    shift_product_factored,
    shift_split,
    trig_matches_rep,
    trig_realization,
    verify_poisson_numeric,
    verify_quantum,
)
from quadalg.classical.phase import BETA, C, PhaseExpr, const, cos, param, pderiv, poisson_bracket, sin, sqrt, var
from quadalg.classical.quantize import _from_horospherical
from quadalg.opcalc import GQ, I, DiffOp, as_gq, Poly, RatFunc, parse_gq, verify_quadratic_algebra
from quadalg.s3models import model_difference_infinite
from quadalg.s3rep import energy_lowest_weight, s3_algebra

q = parse_gq
c, beta = var("c"), var("beta")


# -- phase-space expressions --------------------------------------------------------


def test_pderiv_examples():
    assert sp.simplify(pderiv(sin(2 * beta), "beta").expr - 2 * sp.cos(2 * BETA)) == 0
    g = c**3 + 1
    assert sp.simplify(pderiv(sqrt(g), "c").expr - 3 * C**2 / (2 * sp.sqrt(C**3 + 1))) == 0
    assert pderiv(c, "beta").is_zero()
    with pytest.raises(ValueError):
        pderiv(c, "x")


def test_bracket_convention():
    assert poisson_bracket(c, beta).expr == -1
    assert poisson_bracket(beta, c).expr == 1


_pts = st.tuples(st.floats(-2, 2), st.floats(-2, 2))


@given(_pts)
def test_bracket_antisymmetry_and_leibniz(pt):
    f = c * c * sin(beta)
    g = cos(2 * beta) + c
    h = c * beta + 3
    x, y = pt
    assert abs(poisson_bracket(f, f)(x, y)) < 1e-12
    lhs = poisson_bracket(f, g * h)(x, y)
    rhs = (poisson_bracket(f, g) * h + g * poisson_bracket(f, h))(x, y)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


# -- classical models -------------------------------------------------------------------


def test_model_generators_as_stated():
    params = {"E": 3, "alpha": GQ(1) / 4}
    assert classical_model("S3-I", params)["X"].expr == C
    assert classical_model("S3-II", params)["L1"].expr == C
    X3 = classical_model("S3-III", params)["X"]
    alpha = sp.Symbol("alpha")
    assert sp.simplify(X3.expr - (-2 * sp.I * (C + alpha) * BETA)) == 0


def test_model_one_first_relation_is_symbolic():
    m = classical_model("S3-I", {"E": 3, "alpha": GQ(1) / 4})
    rel = m.relations[0]
    assert sp.simplify(rel.lhs.expr - rel.rhs.expr) == 0


@pytest.mark.parametrize("system", SYSTEMS)
def test_every_model_satisfies_relations(system):
    params = {"a1": GQ(3) / 16, "a2": GQ(3) / 16, "a3": GQ(7) / 16, "E": 2} if system == "S9" else {"E": 3, "alpha": GQ(1) / 4}
    report = verify_poisson_numeric(classical_model(system, params), n_samples=100, tol=1e-9, seed=0)
    assert report.passed, report.failing()
    assert report.extra["points_used"] == 100


def test_sampling_is_seeded():
    m = classical_model("S3-II", {"E": 3, "alpha": GQ(1) / 4})
    assert sample_points(m, 10, seed=5) == sample_points(m, 10, seed=5)
    assert sample_points(m, 10, seed=5) != sample_points(m, 10, seed=6)


def test_no_admissible_points():
    # c + alpha > 0 needs c > 10, outside the sampling box
    m = classical_model("S3-II", {"E": 0, "alpha": -10})
    with pytest.raises(NoAdmissiblePoints):
        sample_points(m, 10, seed=0, max_tries=200)


def test_unknown_system():
    with pytest.raises(ValueError):
        classical_model("S4", {})


def test_canonical_shift_zero_is_identity():
    m = classical_model("S3-I", {"E": 3, "alpha": GQ(1) / 4})
    m2 = canonical_shift(m, const(0))
    assert all(sp.simplify(m.exprs[k].expr - m2.exprs[k].expr) == 0 for k in m.exprs)


def test_canonical_shift_preserves_bracket():
    g = PhaseExpr(sp.atan(C))
    assert sp.simplify(poisson_bracket(c, beta + g).expr) == -1


def test_phase_rescaling_keeps_relations():
    # beta -> beta + g(c) with exp(2ig) = sqrt(P) absorbs the square root
    m = classical_model("S3-I", {"E": 3, "alpha": GQ(1) / 4})
    E, al = param("E"), param("alpha")
    P = c**4 - 2 * c * c * (E + al) + (E - al) ** 2
    shifted = canonical_shift(m, PhaseExpr(-sp.I * sp.log(P.expr) / 4))
    assert verify_poisson_numeric(shifted, 100, 1e-9, 0).passed


def test_shift_must_not_depend_on_beta():
    m = classical_model("S3-I", {"E": 3, "alpha": GQ(1) / 4})
    with pytest.raises(ValueError):
        canonical_shift(m, beta)


# -- calibration --------------------------------------------------------------------


def test_printed_fourth_order_model_verifies():
    for E, al in ((3, GQ(1) / 4), (q("2/7"), q("-3/5"))):
        ops = _from_horospherical(*model3q_printed(E, al), as_gq(E))
        assert verify_quadratic_algebra(ops, s3_algebra(E, al)).passed


def test_calibration_recovers_printed_model():
    E, al = GQ(3), GQ(1) / 4
    cal = calibrate_corrections(model3q_skeleton(E, al), s3_algebra(E, al))
    assert verify_quadratic_algebra(cal.ops, s3_algebra(E, al)).passed
    printed = _from_horospherical(*model3q_printed(E, al), E)
    assert all(cal.ops[k] == printed[k] for k in ("X", "L1", "L2"))


def test_calibration_of_exact_input_is_zero():
    E, al = GQ(3), GQ(1) / 4
    S, X, K = model3q_printed(E, al)
    sk = model3q_skeleton(E, al)
    exact = Skeleton({"X": X, "K": K}, sk.unknowns, sk.assemble)
    cal = calibrate_corrections(exact, s3_algebra(E, al))
    assert all(v == 0 for v in cal.values.values())


def test_calibration_wrong_leading_symbol_inconsistent():
    E, al = GQ(3), GQ(1) / 4
    with pytest.raises(InconsistentSystem):
        calibrate_corrections(model3q_skeleton(E, al, leading_scale=2), s3_algebra(E, al))


# -- quantization: model III ------------------------------------------------------------


def test_direct_quantization_of_model_three():
    m = classical_model("S3-III", {"E": 3, "alpha": GQ(1) / 4})
    qm = quantize(m, "direct")
    report = verify_quantum(qm)
    assert report.passed
    assert qm.extra["printed_coefficients_verified"]
    names = [ch.name for ch in report.checks]
    assert {"principal symbol of S", "principal symbol of X", "principal symbol of K"} <= set(names)


def test_principal_symbols_of_calibrated_triple():
    E, al = q("2/7"), q("-3/5")
    m = classical_model("S3-III", {"E": E, "alpha": al})
    cal = calibrate_corrections(model3q_skeleton(E, al), s3_algebra(E, al))
    qm = QuantumModel("S3-III", "direct", "calibrated", cal.ops, E, al)
    assert all(ch.passed for ch in principal_symbol_checks(qm, m))


def test_principal_symbol_detects_wrong_order():
    E, al = GQ(3), GQ(1) / 4
    m = classical_model("S3-III", {"E": E, "alpha": al})
    ops = _from_horospherical(*model3q_printed(E, al), E)
    ops["L2"] = ops["L2"] + DiffOp([0, 0, 0, 0, 0, 1])
    qm = QuantumModel("S3-III", "direct", "broken", ops, E, al)
    assert not all(ch.passed for ch in principal_symbol_checks(qm, m))


def test_incompatible_prescriptions():
    m2 = classical_model("S3-II", {"E": 3, "alpha": GQ(1) / 4})
    with pytest.raises(IncompatiblePrescription):
        quantize(m2, "direct")
    s9 = classical_model("S9", {"a1": GQ(3) / 16, "a2": GQ(3) / 16, "a3": GQ(7) / 16, "E": 2})
    with pytest.raises(IncompatiblePrescription):
        quantize(s9, "direct")


# -- quantization: model I -----------------------------------------------------------


def test_hodograph_sqrt_gauge():
    m = classical_model("S3-I", {"E": 3, "alpha": GQ(1) / 4})
    qm = quantize(m, "hodograph", "sqrt")
    assert verify_quantum(qm).passed
    assert qm.extra["order"] == 4


@pytest.mark.parametrize("gamma", [0, "2+i", "-1/3"])
def test_hodograph_phase_gauge_family(gamma):
    a = q("4/3")
    m = classical_model("S3-I", {"E": q("5/2"), "alpha": GQ(1) / 4 - a * a})
    qm = quantize(m, "hodograph", "phase", a=a, gamma=q(str(gamma)))
    assert verify_quantum(qm).passed


def test_phase_gauge_rejects_inconsistent_a():
    m = classical_model("S3-I", {"E": q("5/2"), "alpha": q("-7/9")})
    with pytest.raises(IncompatiblePrescription):
        quantize(m, "hodograph", "phase", a=q("4/3"))


def test_phase_gauge_needs_rational_a():
    m = classical_model("S3-I", {"E": 3, "alpha": GQ(1) / 8})
    with pytest.raises(IncompatiblePrescription):
        quantize(m, "hodograph", "phase")


def test_printed_trig_family_fails():
    E, a = q("5/2"), q("4/3")
    al = GQ(1) / 4 - a * a
    for xi in (0, q("1/5")):
        ops = trig_realization(E, al, a, printed=True, xi=xi)
        assert not verify_quadratic_algebra(ops, s3_algebra(E, al)).passed


@pytest.mark.parametrize("m", range(5))
def test_trig_realization_matches_finite_rep(m):
    report = trig_matches_rep(m, q("2/7"))
    assert report.passed
    assert report.extra["gauge"] == [str(GQ((-1) ** n)) for n in range(m + 1)]


# -- quantization: model II --------------------------------------------------------


def _mu_a_params(mu, a):
    return energy_lowest_weight(mu, a), GQ(1) / 4 - a * a


@given(st.sampled_from([(q("3/2"), q("1/4")), (2, q("1/2")), (q("7/3"), q("-2/5"))]))
def test_factored_product_matches(pair):
    mu, a = pair
    E, al = _mu_a_params(mu, a)
    assert shift_product_factored(mu, a) == shift_product(E, al)
    assert shift_product_factored(mu, a, printed=True) != shift_product(E, al)


def test_standard_split_reproduces_difference_model():
    mu, a = q("3/2"), q("1/4")
    E, al = _mu_a_params(mu, a)
    qm = quantize(classical_model("S3-II", {"E": E, "alpha": al}), "shift", "standard", mu=mu, a=a)
    assert verify_quantum(qm).passed
    assert qm.extra["product_constraint_holds"] and qm.extra["matches_difference_model"]
    ref = model_difference_infinite(mu, a).ops
    assert all(qm.ops[k] == ref[k] for k in ("X", "L1", "L2"))


def test_printed_split_fails():
    mu, a = q("3/2"), q("1/4")
    E, al = _mu_a_params(mu, a)
    h, m = shift_split(mu, a, "printed")
    prod = h * m.shift(I)
    assert prod == -shift_product(E, al)
    qm = quantize(classical_model("S3-II", {"E": E, "alpha": al}), "shift", "printed", mu=mu, a=a)
    assert not verify_quantum(qm).passed
    assert not qm.extra["matches_difference_model"]
    printed = model_difference_infinite(mu, a, printed=True).ops
    assert qm.ops["X"] == printed["X"]
    # the typeset split reproduces the typeset X; its L2 differs only in the sign of the T^i term
    assert qm.ops["L2"][-1] == printed["L2"][-1]
    assert qm.ops["L2"][1] == -printed["L2"][1]


def test_any_gauge_with_correct_product_works():
    E, al = GQ(3), GQ(1) / 4
    qm = quantize(classical_model("S3-II", {"E": E, "alpha": al}), "shift", "unit")
    assert verify_quantum(qm).passed
    t = Poly([0, 1])
    ops = shift_model(E, al, RatFunc(t + 2, t - I))
    assert verify_quadratic_algebra(ops, s3_algebra(E, al)).passed


def test_shift_gauge_needs_rational_roots():
    m = classical_model("S3-II", {"E": 3, "alpha": GQ(1) / 8})
    with pytest.raises(IncompatiblePrescription):
        quantize(m, "shift", "standard")
