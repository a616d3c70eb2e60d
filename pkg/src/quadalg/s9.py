"""The S9 quantum quadratic algebra: difference model, exact relations, Wilson form.

Parameters ``alpha, beta, gamma, E`` enter through ``a1 = 1/4 - alpha^2``
(likewise ``a2``, ``a3``) and ``H = 1/4 - E^2``. The model lives on
rational functions of ``t`` with shifts by ``i``:

* ``L1 = 4t^2 - 1/2 + beta^2 + gamma^2``
* ``L2 = h(t) T^i + m(t) T^-i + l(t)``, only ``h(t) m(t+i)`` and ``l`` fixed
* ``L3 = H - L1 - L2 - a1 - a2 - a3``, ``R = [L1, L2]``

Under ``t = i tau`` and a gauge, ``L2`` becomes ``4`` times the Wilson
operator plus a multiple of ``L1`` and a constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .opcalc import (
    GQ,
    I,
    AlgebraSpec,
    Poly,
    RatFunc,
    Relation,
    ShiftOp,
    Word,
    anti,
    as_gq,
    comm,
    gauge_shift,
    gens,
    op_apply,
    pochhammer,
    substitute_scale,
    sym3,
    verify_quadratic_algebra,
)
from .report import Check, Report

__all__ = [
    "S9Params",
    "s9_algebra",
    "s9_product",
    "s9_ell",
    "s9_model",
    "s9_verify",
    "classical_product_check",
    "WilsonForm",
    "wilson_form",
    "wilson_poly",
    "GaugeReconstructionError",
]

HALF = GQ(1) / 2
QUARTER = GQ(1) / 4


class GaugeReconstructionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class S9Params:
    alpha: GQ
    beta: GQ
    gamma: GQ
    E: GQ

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "E"):
            object.__setattr__(self, name, as_gq(getattr(self, name)))

    @property
    def a1(self) -> GQ:
        return QUARTER - self.alpha**2

    @property
    def a2(self) -> GQ:
        return QUARTER - self.beta**2

    @property
    def a3(self) -> GQ:
        return QUARTER - self.gamma**2

    @property
    def H(self) -> GQ:
        return QUARTER - self.E**2

    def wilson(self, printed: bool = False) -> tuple:
        """``(A, B, C, D)``; the typeset ``D = (beta - gamma + 1)/2`` is replaced by its reflection ``1 - D``."""
        A = (self.E + self.alpha + 1) / 2
        B = (self.E - self.alpha + 1) / 2
        C = (self.beta + self.gamma + 1) / 2
        D = (self.beta - self.gamma + 1) / 2
        return (A, B, C, D) if printed else (A, B, C, 1 - D)

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "E": self.E}


def s9_algebra(p: S9Params, printed: bool = False) -> AlgebraSpec:
    """``R = [L1, L2]``, the three ``[Li, R]`` relations and the ``R^2`` relation.

    The symmetrized triple product ``{L1, L2, L3}`` (6 orderings) carries
    weight ``8/3``; ``printed=True`` uses the typeset ``8/6``.
    """
    L1, L2, L3, R = gens("L1", "L2", "L3", "R")
    L, a = (L1, L2, L3), (p.a1, p.a2, p.a3)
    rels = [Relation("R=[L1,L2]", R, comm(L1, L2))]
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        rhs = (
            anti(L[i], L[k]) * 4
            - anti(L[i], L[j]) * 4
            - L[j] * (8 + 16 * a[j])
            + L[k] * (8 + 16 * a[k])
            + Word.const(8 * (a[j] - a[k]))
        )
        rels.append(Relation(f"[L{i + 1},R]", comm(L[i], R), rhs))
    weight = GQ(8) / 6 if printed else GQ(8) / 3
    rhs = sym3(L1, L2, L3) * weight
    for Lk, ak in zip(L, a):
        rhs = rhs - Lk * Lk * (16 * ak + 12) + Lk * ((16 + 176 * ak) / 3)
    rhs = rhs + (anti(L1, L2) + anti(L2, L3) + anti(L3, L1)) * (GQ(52) / 3)
    s1, s2, s3 = a[0] + a[1] + a[2], a[0] * a[1] + a[1] * a[2] + a[2] * a[0], a[0] * a[1] * a[2]
    rhs = rhs + Word.const(GQ(32) / 3 * s1 + 48 * s2 + 64 * s3)
    rels.append(Relation("R^2", R * R, rhs))
    return AlgebraSpec("S9", ("L1", "L2", "L3", "R"), rels, {"H": p.H})


def s9_product(p: S9Params) -> RatFunc:
    """``h(t) m(t+i)`` as a ratio of degree-8 and degree-4 polynomials."""
    al, be, ga, E = p.alpha, p.beta, p.gamma, p.E
    q1 = Poly([-4 * al**2 - 8 * al - 4 + 4 * E**2, 16 * I * (al + 1), 16])
    q2 = Poly([-4 * al**2 - 4 + 8 * al + 4 * E**2, 16 * I * (1 - al), 16])
    lin = (
        Poly([be + 1 + ga, -2 * I])
        * Poly([be - 1 - ga, 2 * I])
        * Poly([be + 1 - ga, -2 * I])
        * Poly([be - 1 + ga, 2 * I])
    )
    t = Poly([0, 1])
    return RatFunc(q1 * q2 * lin, t * Poly([I, 1]) * Poly([I, 2]) ** 2 * 1024)


def s9_ell(p: S9Params) -> RatFunc:
    al, be, ga, E = p.alpha, p.beta, p.gamma, p.E
    poly = Poly([(-(E**2) - be**2 + al**2 + ga**2) / 2, 0, -2])
    pole = RatFunc(Poly([(ga**2 - be**2) * (4 * E**2 - 4 * al**2)]), Poly([8, 0, 32]))
    return RatFunc(poly) + pole


def s9_model(p: S9Params, h: RatFunc | None = None, ell: RatFunc | None = None) -> dict:
    """Operators ``L1, L2, L3, R`` (``ShiftOp`` with step ``i``).

    Default gauge as typeset: ``m = 1`` and ``h`` the full product. Any
    other ``h`` determines ``m(t) = product(t - i) / h(t - i)``.
    """
    prod = s9_product(p)
    if h is None:
        h, m = prod, RatFunc(Poly([1]))
    else:
        m = prod.shift(-I) / h.shift(-I)
    ell = s9_ell(p) if ell is None else ell
    L1 = ShiftOp({0: Poly([-HALF + p.beta**2 + p.gamma**2, 0, 4])}, step=I)
    L2 = ShiftOp({1: h, -1: m, 0: ell}, step=I)
    L3 = L1.scalar(p.H - p.a1 - p.a2 - p.a3) - L1 - L2
    return {"L1": L1, "L2": L2, "L3": L3, "R": L1 * L2 - L2 * L1}


def s9_verify(p: S9Params, ops: dict | None = None, printed: bool = False) -> Report:
    ops = s9_model(p) if ops is None else ops
    res = verify_quadratic_algebra(ops, s9_algebra(p, printed))
    report = Report("S9", "difference-model", p.as_dict())
    for r in res.results:
        report.add(Check.of(r.name, r.passed, r.residual_norm()))
    shifts = ops["R"].shifts()
    report.add(Check.of("R shifts within -2..2", all(-2 <= k <= 2 for k in shifts), detail=str(shifts)))
    return report


def classical_product_check(p: S9Params) -> Check:
    """Leading symbol of ``h(t) m(t+i)`` against the classical oscillation amplitude.

    Classically the ``cos`` amplitude is ``sqrt(F G)/(2 (c + a2 + a3))``; its
    square over 4 at ``c = 4t^2`` must have the same degree and leading
    coefficient as the quantum product.
    """
    a1, a2, a3, E = p.a1, p.a2, p.a3, p.H
    s = E + a1 + a2 + a3
    F = Poly([4 * a1 * a2 + 4 * a1 * a3 - s * s, 2 * s + 4 * a1, -1])
    G = Poly([4 * a2 * a3, 0, -1])
    den = Poly([a2 + a3, 1])
    c = Poly([0, 0, 4])
    amp2 = RatFunc((F * G).compose(c), (den * den * 16).compose(c))
    q = s9_product(p)

    def lead(f: RatFunc):
        return f.num.degree - f.den.degree, f.num.lc() / f.den.lc()

    ok = lead(q) == lead(amp2)
    return Check.of("quantum product leading symbol = classical amplitude^2/4", ok, detail=f"{lead(q)} vs {lead(amp2)}")


def wilson_poly(n: int, A, B, C, D) -> Poly:
    """Terminating ``4F3(-n, n+A+B+C+D-1, A+tau, A-tau; A+B, A+C, A+D; 1)`` as a polynomial in ``tau``."""
    A, B, C, D = (as_gq(x) for x in (A, B, C, D))
    top = n + A + B + C + D - 1
    out = Poly([0])
    rising = Poly([1])  # (A+tau)_k (A-tau)_k
    for k in range(n + 1):
        den = pochhammer(A + B, k) * pochhammer(A + C, k) * pochhammer(A + D, k) * factorial(k)
        out = out + rising * (pochhammer(-n, k) * pochhammer(top, k) / den)
        rising = rising * Poly([(A + k) ** 2, 0, -1])
    return out


@dataclass
class WilsonForm:
    h: RatFunc  # coefficient of E^+1 in tau
    m: RatFunc
    ell: RatFunc
    gauge_ratio: RatFunc  # rho(tau + 1) / rho(tau)
    report: Report
    eigenvalues: list = field(default_factory=list)


def wilson_form(p: S9Params, printed: bool = False, max_degree: int = 4) -> WilsonForm:
    """``L2`` after ``t = i tau`` and the gauge making the shift coefficients Wilson-symmetric.

    Target ``h(tau) = (A+tau)(B+tau)(C+tau)(D+tau)/(tau(tau+1/2))``, ``m(tau) = h(-tau)``:
    four times the typeset pair, whose product is off by ``16``. With the
    typeset ``A..D`` the leftover multiplication part keeps a pole at
    ``tau^2 = 1/4``; reflecting ``D`` removes it. Checks: gauge
    reconstruction, leftover in span of ``L1`` and ``1``, degree
    preservation on ``tau^(2k)`` and Wilson eigenfunctions.
    """
    A, B, C, D = p.wilson(printed)
    tau = Poly([0, 1])
    num_p = Poly([A, 1]) * Poly([B, 1]) * Poly([C, 1]) * Poly([D, 1])
    num_m = Poly([A, -1]) * Poly([B, -1]) * Poly([C, -1]) * Poly([D, -1])
    scale = GQ(1) if printed else GQ(4)
    ht = RatFunc(num_p * scale, tau * Poly([HALF, 1]) * 4)
    mt = RatFunc(num_m * scale, tau * Poly([-HALF, 1]) * 4)
    ops = s9_model(p)
    L2 = substitute_scale(ops["L2"], I, "tau")  # step 1 in tau
    L1 = substitute_scale(ops["L1"], I, "tau")
    report = Report("S9", "wilson-form", {**p.as_dict(), "A": A, "B": B, "C": C, "D": D})
    ratio = ht / L2[1]
    W = gauge_shift(L2, ratio)
    report.add(Check.of("product h(tau) m(tau+1) preserved", L2[1] * L2[-1].shift(1) == ht * mt.shift(1)))
    report.add(Check.of("gauge gives h~", W[1] == ht))
    report.add(Check.of("gauge gives m~", W[-1] == mt))
    rest = W[0] + ht + mt  # L2 = h~(E+ - 1) + m~(E- - 1) + rest
    lin = L1[0]
    in_span = rest.is_poly and rest.num.degree <= 2 and not rest.num.coeff(1)
    report.add(Check.of("L2 - Wilson operator in span(L1, 1)", in_span, detail=str(rest)))
    wil = ShiftOp({1: ht, -1: mt, 0: -(ht + mt)}, step=1, var="tau")
    ok_deg = True
    for k in range(max_degree + 1):
        img = op_apply(wil, Poly.monomial(2 * k))
        ok_deg &= isinstance(img, Poly) and img.degree <= 2 * k and not any(img.coeff(j) for j in range(1, 2 * k, 2))
    report.add(Check.of(f"Wilson operator preserves even degree <= {2 * max_degree}", ok_deg))
    eig = []
    ok_eig = True
    for n in range(max_degree + 1):
        pn = wilson_poly(n, A, B, C, D)
        img = op_apply(wil, pn)
        if not isinstance(img, Poly):
            ok_eig = False
            eig.append(None)
            continue
        lam = img.coeff(pn.degree) / pn.lc()
        ok_eig &= img == pn * lam
        eig.append(lam)
    report.add(Check.of("Wilson polynomials are eigenfunctions", ok_eig))
    formula = [scale * n * (n + A + B + C + D - 1) for n in range(max_degree + 1)]
    label = "eigenvalue = n(n+A+B+C+D-1)" if printed else "eigenvalue = 4n(n+A+B+C+D-1)"
    report.add(Check.of(label, eig == formula, detail=str([str(x) for x in eig])))
    if in_span:
        report.extra["L2_minus_wilson"] = {"L1_coeff": str(rest.num.coeff(2) / lin.num.coeff(2)), "const": str(rest.num.coeff(0) - rest.num.coeff(2) / lin.num.coeff(2) * lin.num.coeff(0))}
    return WilsonForm(ht, mt, W[0], ratio, report, eig)
