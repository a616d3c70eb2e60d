"""From classical models to exact quantum operator realizations of S3.

Prescriptions:

* ``direct`` (model III): ``c -> t``, ``beta -> d/dt``; the fourth-order
  ``L1 + i L2`` is checked as typeset and recalibrated if it fails.
* ``hodograph`` (model I): ``beta -> t``, ``c -> -d/dt`` after a canonical
  shift. Gauge ``sqrt`` rescales ``e^{2i beta}`` by the square root of the
  discriminant (fourth-order operators, corrections calibrated exactly);
  gauge ``phase`` gives the second-order trigonometric realization.
  Trigonometric coefficients are written in ``tau = e^{2it}``.
* ``shift`` (model II): step-``i`` difference operators constrained by the
  product ``h(t) m(t+i)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy as sp

from ..opcalc import (
    GQ,
    I,
    DiffOp,
    LeakError,
    Poly,
    RatFunc,
    ShiftOp,
    as_gq,
    gq_sqrt,
    matrix_on_monomials,
    verify_quadratic_algebra,
)
from ..opcalc.transforms import TrigPoly, conjugate_and_substitute, gauge_conjugate
from ..report import Check, Report
from ..s3models import model_difference_infinite
from ..s3rep import S3Params, build_rep, energy_lowest_weight, s3_algebra
from .calibrate import Calibration, Skeleton, Unknown, calibrate_corrections
from .models import ClassicalModel
from .phase import BETA, C, PARAMS, to_sympy

__all__ = [
    "IncompatiblePrescription",
    "QuantumModel",
    "quantize",
    "verify_quantum",
    "model3q_printed",
    "model3q_skeleton",
    "hodograph_skeleton",
    "trig_realization",
    "trig_matches_rep",
    "shift_product",
    "shift_product_factored",
    "shift_split",
    "shift_model",
    "principal_symbol_checks",
]

HALF = GQ(1) / 2


class IncompatiblePrescription(ValueError):
    pass


@dataclass
class QuantumModel:
    system: str
    prescription: str
    gauge: str
    ops: dict  # X, L1, L2
    E: GQ
    alpha: GQ
    extra: dict = field(default_factory=dict)
    calibration: Calibration | None = None
    symbol_checks: list = field(default_factory=list)

    @property
    def kind(self) -> str:
        return "difference" if isinstance(self.ops["X"], ShiftOp) else "differential"


def verify_quantum(qm: QuantumModel) -> Report:
    res = verify_quadratic_algebra(qm.ops, s3_algebra(qm.E, qm.alpha))
    report = Report(qm.system, f"quantized-{qm.prescription}", {"E": qm.E, "alpha": qm.alpha, "gauge": qm.gauge})
    for r in res.results:
        report.add(Check.of(r.name, r.passed, r.residual_norm()))
    for c in qm.symbol_checks:
        report.add(c)
    for k, v in qm.extra.items():
        report.extra[k] = v
    if qm.calibration is not None:
        report.extra["corrections"] = qm.calibration.corrections()
        report.extra["gauge_family"] = qm.calibration.free
    return report


def _d(k: int, coef) -> DiffOp:
    return DiffOp([0] * k + [coef])


def _from_horospherical(S, X, K, E):
    """``L1, L2`` from ``S = 2(L1 - i L2) - H + X^2`` and ``K = L1 + i L2``."""
    M = (X * X * (-1) + S + E) * HALF  # L1 - i L2
    return {"X": X, "L1": (K + M) * HALF, "L2": (K - M) * (-I / 2)}


def _poly_to_sympy(p: Poly, x):
    return sum((to_sympy(c) * x**k for k, c in enumerate(p.coeffs)), sp.Integer(0))


def principal_symbol_checks(qm: QuantumModel, model: ClassicalModel) -> list[Check]:
    """Top-order coefficient of each quantum generator against the classical expression.

    The direct prescription reads ``c -> t`` and ``beta -> d/dt`` (so
    ``[t, d/dt] = -1`` mirrors ``{c, beta} = -1``); an operator of order
    ``k`` must have the coefficient of ``beta^k`` of its classical
    counterpart as its ``(d/dt)^k`` coefficient. Model III is compared in
    its horospherical generators ``S, X, K``.
    """
    ops = qm.ops
    if model.system == "S3-III":
        K = ops["L1"] + ops["L2"] * I
        S = (ops["L1"] - ops["L2"] * I) * 2 - qm.E + ops["X"] * ops["X"]
        ops = {"S": S, "X": ops["X"], "K": K}
    values = {sym: to_sympy(model.params[name]) for name, sym in PARAMS.items() if name in model.params}
    out = []
    for name, op in ops.items():
        if not isinstance(op, DiffOp):
            raise IncompatiblePrescription("principal symbols compare differential operators only")
        classical = sp.expand(model[name].expr.subs(values))
        try:
            poly = sp.Poly(classical, BETA)
        except sp.PolynomialError:
            out.append(Check.of(f"principal symbol of {name}", False, detail="classical expression not polynomial in beta"))
            continue
        k = op.order
        top = op.coeffs[k]
        want = poly.coeff_monomial(BETA**k) if k <= poly.degree() else sp.Integer(0)
        got = _poly_to_sympy(top.num, C) / _poly_to_sympy(top.den, C)
        ok = k == poly.degree() and sp.simplify(got - want) == 0
        out.append(Check.of(f"principal symbol of {name}", ok, detail=f"order {k}: {sp.factor(got)} vs {sp.factor(want)}"))
    return out


# -- model III: direct ---------------------------------------------------------


def model3q_printed(E, alpha):
    """``(S, X, K)`` of the fourth-order realization as typeset."""
    E, al = as_gq(E), as_gq(alpha)
    t, ta = Poly([0, 1]), Poly([al, 1])
    S = DiffOp([t])
    X = DiffOp([Poly([2 * I]), ta * (-2 * I)])
    pole = RatFunc(Poly([E * E + 2 * E * (9 - al) + (al + 12) * (al + 6)]), ta * 2)
    K = (
        _d(4, ta**3 * 8)
        + _d(2, ta * Poly([3 * al + 2 * E + 9, 1]) * 2)
        + _d(1, Poly([-2 * (5 * al + 4 * E + 18), -2]))
        + DiffOp([RatFunc(Poly([2 + E / 2 - al / 2])) + pole])
    )
    return S, X, K


def model3q_skeleton(E, alpha, leading_scale=1) -> Skeleton:
    """Classical leading symbols of model III with unknown lower-order terms.

    Corrections: polynomials of degree at most 1 in every lower slot, plus a
    pole ``1/(t+alpha)`` in the multiplicative part. ``leading_scale`` lets
    tests feed a wrong leading symbol.
    """
    E, al = as_gq(E), as_gq(alpha)
    t, ta = Poly([0, 1]), Poly([al, 1])
    S = DiffOp([t])
    X0 = DiffOp([0, ta * (-2 * I)])
    K0 = _d(4, ta**3 * 8 * as_gq(leading_scale)) + _d(2, ta * Poly([3 * al + 2 * E, 1]) * 2)
    one = DiffOp([1])
    unknowns = [Unknown("x0", "X", one), Unknown("x1", "X", DiffOp([t]))]
    for k in (3, 2, 1):
        unknowns += [Unknown(f"k{k}_0", "K", _d(k, 1)), Unknown(f"k{k}_1", "K", _d(k, t))]
    unknowns += [
        Unknown("k0_0", "K", one),
        Unknown("k0_1", "K", DiffOp([t])),
        Unknown("k0_pole", "K", DiffOp([RatFunc(Poly([1]), ta)])),
    ]
    return Skeleton({"X": X0, "K": K0}, unknowns, lambda e: _from_horospherical(S, e["X"], e["K"], E))


def _quantize_direct(E, al) -> QuantumModel:
    S, X, K = model3q_printed(E, al)
    ops = _from_horospherical(S, X, K, E)
    qm = QuantumModel("S3-III", "direct", "printed", ops, E, al)
    if verify_quadratic_algebra(ops, s3_algebra(E, al)).passed:
        qm.extra["printed_coefficients_verified"] = True
        return qm
    cal = calibrate_corrections(model3q_skeleton(E, al), s3_algebra(E, al))
    qm.ops, qm.calibration, qm.gauge = cal.ops, cal, "calibrated"
    qm.extra["printed_coefficients_verified"] = False
    return qm


# -- model I: hodograph ----------------------------------------------------------


def _tau_ops():
    tau = Poly([0, 1])
    dt = DiffOp([0, Poly([0, 2 * I])], "tau")  # d/dt in tau = e^{2it}
    T = DiffOp.mul(RatFunc(tau), "tau")
    Tinv = DiffOp.mul(RatFunc(Poly([1]), tau), "tau")
    return dt, T, Tinv


def hodograph_skeleton(E, alpha) -> Skeleton:
    """Quantized square-root-rescaled model I with unknown lower-order terms.

    Classically ``L1 = (E - c^2 - alpha)/2 - (i/4)(P(c) e^{2i beta} - e^{-2i beta})``
    and ``L2 = (P(c) e^{2i beta} + e^{-2i beta})/4`` with ``P`` the
    discriminant; ``c -> -d/dt`` with ``P(c)`` ordered to the right of
    ``e^{2it}`` and unknown corrections to ``P`` and to the constants.
    """
    E, al = as_gq(E), as_gq(alpha)
    dt, T, Tinv = _tau_ops()
    one = dt.one()
    c = dt * (-1)
    P = c * c * c * c + c * c * (-2 * (E + al)) + one * ((E - al) ** 2)
    powers = [one, c, c * c, c * c * c]
    unknowns = [Unknown(f"p{k}", "A", T * powers[k]) for k in range(4)]
    unknowns += [Unknown("z1", "Z1", one), Unknown("z2", "Z2", one)]

    def assemble(e):
        X = e["X"]
        L1 = (X * X * (-1) + (E - al)) * HALF + (e["A"] - Tinv) * (-I / 4) + e["Z1"]
        L2 = (e["A"] + Tinv) * (GQ(1) / 4) + e["Z2"]
        return {"X": X, "L1": L1, "L2": L2}

    zero = one * 0
    return Skeleton({"X": c, "A": T * P, "Z1": zero, "Z2": zero}, unknowns, assemble)


def trig_realization(E, alpha, a, gamma=0, printed: bool = False, xi=None):
    """Second-order realization from the phase-shifted model I, in ``tau = e^{2it}``.

    At ``gamma = 0``: ``X = d/dt``,

    * ``L1 = (cos2t - 1)/2 D^2 + (a-1) sin2t D - (P/2) cos2t + (E-alpha)/2``
    * ``L2 = [L1, X]/2 = sin2t/2 D^2 + (1-a) cos2t D - (P/2) sin2t``

    with ``P = E - 1/4 + (1-a)^2``. Nonzero ``gamma`` conjugates all three
    by ``(sin t)^gamma``, so ``X`` picks up ``gamma cot t``; with ``X = d/dt``
    held fixed there is no family. ``printed=True`` uses the typeset
    ``xi``-family, which has a constant in ``L2`` and ``cos 2t`` where
    ``sin 2t`` belongs.
    """
    E, al, a = as_gq(E), as_gq(alpha), as_gq(a)
    if printed:
        xi = as_gq(xi if xi is not None else 0)
        k = -E / 2 + 64 * xi * xi + 8 * I * xi - GQ(1) / 4 - al / 2
        L1 = [TrigPoly.cos2(k) + TrigPoly.const((E - al) / 2), TrigPoly.sin2(-8 * I * xi), TrigPoly.cos2(HALF) + TrigPoly.const(-HALF)]
        L2 = [TrigPoly.cos2(k) + TrigPoly.const((E - al) / 2), TrigPoly.cos2(8 * I * xi), TrigPoly.sin2(HALF)]
    else:
        P = E - GQ(1) / 4 + (1 - a) ** 2
        L1 = [TrigPoly.cos2(-P / 2) + TrigPoly.const((E - al) / 2), TrigPoly.sin2(a - 1), TrigPoly.cos2(HALF) + TrigPoly.const(-HALF)]
        L2 = [TrigPoly.sin2(-P / 2), TrigPoly.cos2(1 - a), TrigPoly.sin2(HALF)]
    X = [0, TrigPoly.const(1)]
    ops = {name: conjugate_and_substitute(cf) for name, cf in (("X", X), ("L1", L1), ("L2", L2))}
    g = as_gq(gamma)
    if g and not printed:
        # sin t = (tau - 1) / (2i tau^(1/2))
        tau = Poly([0, 1])
        logderiv = RatFunc(Poly([-g / 2]), tau) + RatFunc(Poly([g]), Poly([-1, 1]))
        ops = {k: gauge_conjugate(v, logderiv) for k, v in ops.items()}
    return ops


def _diagonal_gauge(mats, reps):
    """``d`` with ``M[i,j] d_j / d_i = R[i,j]`` for every pair, or ``None``."""
    n = reps[0].shape[0]
    d = [GQ(1)] + [None] * (n - 1)
    for j in range(1, n):
        for M, R in zip(mats, reps):
            if M[j - 1, j] and R[j - 1, j]:
                d[j] = d[j - 1] * R[j - 1, j] / M[j - 1, j]
                break
            if M[j, j - 1] and R[j, j - 1]:
                d[j] = d[j - 1] * M[j, j - 1] / R[j, j - 1]
                break
        else:
            return None
    for M, R in zip(mats, reps):
        for i in range(n):
            for j in range(n):
                if M[i, j] * d[j] / d[i] != R[i, j]:
                    return None
    return d


def trig_matches_rep(m: int, a) -> Report:
    """Second-order trigonometric realization against the abstract finite representation.

    In ``tau`` with the gauge ``tau^(-m/2)`` the monomials ``1..tau^m`` are
    invariant; their matrices must equal ``build_rep`` up to a diagonal gauge.
    """
    params = S3Params.finite(m, a)
    ops = trig_realization(params.H, params.alpha, params.a)
    logderiv = RatFunc(Poly([-GQ(m) / 2]), Poly([0, 1]))
    ops = {k: gauge_conjugate(v, logderiv) for k, v in ops.items()}
    rep = build_rep(params)
    names = ("X", "L1", "L2")
    report = Report("S3-I", "trig-vs-abstract", params.as_dict())
    try:
        mats = [matrix_on_monomials(ops[k], m + 1) for k in names]
    except LeakError as exc:
        report.add(Check.of("monomials up to tau^m invariant", False, detail=str(exc)))
        return report
    report.add(Check.of("monomials up to tau^m invariant", True))
    d = _diagonal_gauge(mats, [getattr(rep, k) for k in names])
    report.add(Check.of("matrices equal up to diagonal gauge", d is not None))
    if d is not None:
        report.extra["gauge"] = [str(x) for x in d]
    return report


def _quantize_hodograph(E, al, gauge, a=None, gamma=0) -> QuantumModel:
    if gauge in (None, "sqrt"):
        cal = calibrate_corrections(hodograph_skeleton(E, al), s3_algebra(E, al))
        qm = QuantumModel("S3-I", "hodograph", "sqrt", cal.ops, E, al, calibration=cal)
        qm.extra["order"] = 4
        return qm
    if gauge == "phase":
        if a is None:
            a = gq_sqrt(GQ(1) / 4 - al)
            if a is None:
                raise IncompatiblePrescription("phase gauge needs a with alpha = 1/4 - a^2 rational; pass a explicitly")
        elif GQ(1) / 4 - as_gq(a) ** 2 != al:
            raise IncompatiblePrescription(f"a = {a} is inconsistent with alpha = {al} (need alpha = 1/4 - a^2)")
        qm = QuantumModel("S3-I", "hodograph", "phase", trig_realization(E, al, a, gamma), E, al)
        qm.extra.update({"order": 2, "a": str(as_gq(a)), "gamma": str(as_gq(gamma))})
        return qm
    raise IncompatiblePrescription(f"unknown hodograph gauge {gauge!r}; expected 'sqrt' or 'phase'")


# -- model II: shift ---------------------------------------------------------------


def shift_product(E, alpha) -> RatFunc:
    """``h(t) m(t+i) = (alpha - t^2 - it)(t^2 + it - E) / (4 t (t+i))``."""
    E, al = as_gq(E), as_gq(alpha)
    t = Poly([0, 1])
    return RatFunc(Poly([al, -I, -1]) * Poly([-E, I, 1]), t * Poly([I, 1]) * 4)


def shift_product_factored(mu, a, printed: bool = False) -> RatFunc:
    """Linear-factor form of :func:`shift_product` for bounded-below parameters.

    The third factor is ``t - i/2 + i mu + i a``; ``printed=True`` uses
    ``t + i/2 + i mu + i a`` as typeset, which does not match.
    """
    mu, a = as_gq(mu), as_gq(a)
    t = Poly([0, 1])
    third = Poly([(1 if printed else -1) * I / 2 + I * mu + I * a, 1])
    num = Poly([I / 2 + I * a, 1]) * Poly([I / 2 - I * a, 1]) * third * Poly([3 * I / 2 - I * mu - I * a, 1])
    return RatFunc(-num, t * Poly([I, 1]) * 4)


def shift_split(mu, a, gauge: str = "standard"):
    """``(h, m)`` for a named gauge.

    ``standard``: ``h = -(1/2-a-it)(mu+a-1/2-it)/(2t)``, ``m = (1/2-a+it)(mu+a-1/2+it)/(2t)``;
    ``printed``: the typeset split (``i`` and ``-i`` prefactors), whose product
    has the wrong sign.
    """
    mu, a = as_gq(mu), as_gq(a)
    t = Poly([0, 1])
    p_plus = Poly([HALF - a, -I]) * Poly([mu + a - HALF, -I])
    p_minus = Poly([HALF - a, I]) * Poly([mu + a - HALF, I])
    if gauge == "standard":
        return RatFunc(-p_plus, 2 * t), RatFunc(p_minus, 2 * t)
    if gauge == "printed":
        return RatFunc(p_plus * I, 2 * t), RatFunc(p_minus * (-I), 2 * t)
    raise ValueError(f"unknown split {gauge!r}")


def shift_model(E, alpha, h: RatFunc, m: RatFunc | None = None) -> dict:
    """Step-``i`` triple ``L1 = t^2 - alpha``, ``X = h T^i + m T^-i`` and the matching ``L2``.

    If ``m`` is omitted it is solved from the product constraint.
    """
    E, al = as_gq(E), as_gq(alpha)
    t = Poly([0, 1])
    h = h if isinstance(h, RatFunc) else RatFunc(Poly.const(as_gq(h)))
    if m is None:
        # m(t) = product(t - i) / h(t - i)
        m = shift_product(E, al).shift(-I) / h.shift(-I)
    L1 = ShiftOp({0: t * t - al}, step=I)
    X = ShiftOp({1: h, -1: m}, step=I)
    L2 = ShiftOp({1: h * RatFunc(Poly([I, 2])) * (-I / 2), -1: m * RatFunc(Poly([-I, 2])) * (I / 2)}, step=I)
    return {"X": X, "L1": L1, "L2": L2}


def _quantize_shift(E, al, gauge, mu=None, a=None) -> QuantumModel:
    gauge = gauge or "standard"
    if gauge == "unit":
        ops = shift_model(E, al, RatFunc(Poly([1])))
    else:
        if a is None:
            a = gq_sqrt(GQ(1) / 4 - al)
        if mu is None and a is not None:
            root = gq_sqrt(GQ(1) / 4 - E)
            mu = None if root is None else 1 - a + root
        if a is None or mu is None:
            raise IncompatiblePrescription("shift gauge needs rational a, mu; pass them explicitly")
        if GQ(1) / 4 - as_gq(a) ** 2 != al or energy_lowest_weight(mu, a) != E:
            raise IncompatiblePrescription(f"(mu, a) = ({mu}, {a}) inconsistent with (E, alpha) = ({E}, {al})")
        h, m = shift_split(mu, a, gauge)
        ops = shift_model(E, al, h, m)
    qm = QuantumModel("S3-II", "shift", gauge, ops, as_gq(E), as_gq(al))
    prod = ops["X"][1] * ops["X"][-1].shift(I)
    qm.extra["product_constraint_holds"] = prod == shift_product(E, al)
    if mu is not None and gauge != "unit":
        qm.extra.update({"mu": str(as_gq(mu)), "a": str(as_gq(a))})
        ref = model_difference_infinite(mu, a, printed=gauge == "printed").ops
        qm.extra["matches_difference_model"] = all(ops[k] == ref[k] for k in ("X", "L1", "L2"))
    return qm


def quantize(model: ClassicalModel, prescription: str, gauge: str | None = None, **options) -> QuantumModel:
    """Quantum S3 realization from a classical model.

    Options: ``a``, ``gamma`` (hodograph/phase), ``mu``, ``a`` (shift).
    """
    E, al = model.params.get("E"), model.params.get("alpha")
    if model.system == "S9":
        raise IncompatiblePrescription("S9 quantization lives in the s9 module")
    pairs = {("S3-III", "direct"), ("S3-I", "hodograph"), ("S3-II", "shift")}
    if (model.system, prescription) not in pairs:
        hint = {"S3-II": "shift (trig/sqrt entanglement rules out finite-order differential operators)",
                "S3-I": "hodograph", "S3-III": "direct"}[model.system]
        raise IncompatiblePrescription(f"{prescription!r} does not apply to {model.system}; use {hint}")
    if prescription == "direct":
        qm = _quantize_direct(E, al)
        qm.symbol_checks = principal_symbol_checks(qm, model)
        return qm
    if prescription == "hodograph":
        return _quantize_hodograph(E, al, gauge, options.get("a"), options.get("gamma", 0))
    return _quantize_shift(E, al, gauge, options.get("mu"), options.get("a"))
