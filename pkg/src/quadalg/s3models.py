"""One-variable models of the S3 algebra and their spectral machinery.

Three realizations are provided: second-order differential operators on
polynomials in ``t`` (basis ``t**n``), step-1 difference operators whose
eigenbasis is a dual Hahn family, and step-``i`` difference operators whose
eigenbasis is a continuous dual Hahn family.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .opcalc import (
    GQ,
    I,
    DiffOp,
    Poly,
    RatFunc,
    ShiftOp,
    as_gq,
    hyp_terms,
    loggamma_numeric,
    matrix_on_monomials,
    op_apply,
    pochhammer,
    verify_quadratic_algebra,
)
from .opcalc.special import HypergeometricError
from .report import Check, Report, rows_to_csv
from .s3rep import S3Params, build_rep, rep_coefficients, s3_algebra

__all__ = [
    "ModelOps",
    "model_differential",
    "verify_model",
    "chi",
    "l1_eigenfunction",
    "l1_spectrum_check",
    "NormSequence",
    "norms_and_kernel",
    "kernel_poly",
    "reproducing_check",
    "WeightSpec",
    "weight_spec",
    "weight_series_check",
    "ConvergenceError",
    "gauss_norm_identity",
    "weight_closed_form",
    "model_difference_finite",
    "dual_hahn_poly",
    "dual_hahn_weight",
    "dual_hahn_norm",
    "dual_hahn_orthogonality",
    "grid_consistency",
    "model_difference_infinite",
    "cdh_basis",
    "basis_consistency",
    "homomorphism_check",
    "tabulate_basis",
    "cdh_orthogonality_numeric",
]

HALF = GQ(1) / 2
QUARTER = GQ(1) / 4


@dataclass
class ModelOps:
    kind: str  # "differential" | "difference"
    ops: dict
    params: S3Params
    basis: object = field(default=None, repr=False)

    def __getitem__(self, name):
        return self.ops[name]


def verify_model(model: ModelOps) -> Report:
    """Exact S3 relations on the model operators."""
    spec = s3_algebra(model.params.H, model.params.alpha)
    res = verify_quadratic_algebra(model.ops, spec)
    report = Report("S3", f"model-{model.kind}", model.params.as_dict())
    for r in res.results:
        report.add(Check.of(r.name, r.passed, r.residual_norm()))
    return report


# -- differential model --------------------------------------------------------


def model_differential(params: S3Params) -> ModelOps:
    """Second-order differential realization on polynomials, ``f_n = t**n``.

    Valid for finite (``mu = -m``) and bounded-below parameters; ``m`` is
    ``-mu`` and need not be an integer.
    """
    if params.kind not in ("finite", "bounded_below"):
        raise ValueError("differential model needs kappa = 0 (finite or bounded-below) parameters")
    m, a = -params.mu, params.a
    L1 = DiffOp(
        [
            Poly([a * (m + 1) - m - HALF, m * (a - 1)]),
            Poly([a - m, 2 * (1 - m), 2 - a - m]),
            Poly([0, 1, 2, 1]),
        ]
    )
    X = DiffOp([Poly([-I * m]), Poly([0, 2 * I])])
    L2 = DiffOp(
        [
            Poly([0, -I * m * (a - 1)]),
            Poly([I * (a - m), 0, I * (a + m - 2)]),
            Poly([0, I, 0, -I]),
        ]
    )
    return ModelOps("differential", {"X": X, "L1": L1, "L2": L2}, params)


def differential_ladder(params: S3Params):
    """``(A, A†)`` of the differential model as printed."""
    m, a = -params.mu, params.a
    A_dag = DiffOp([Poly([0, 2 * m * (a - 1)]), Poly([0, 0, 2 * (2 - a - m)]), Poly([0, 0, 0, 2])])
    A = DiffOp([0, Poly([2 * (a - m)]), Poly([0, 2])])
    return A, A_dag


def chi(n, a) -> GQ:
    """Eigenvalue ``a^2 - 1/4 - (n - a + 1/2)^2`` of L1 in the finite representations."""
    a = as_gq(a)
    return a * a - QUARTER - (n - a + HALF) ** 2


def l1_eigenfunction(params: S3Params, n: int, printed: bool = False) -> Poly:
    """``(1+t)^n 2F1(n+1-a, n-m; a-m; -t)`` expanded as a polynomial.

    ``printed=True`` uses the upper parameter ``n-a`` as typeset; that
    polynomial is an eigenvector only for ``n = m``.
    """
    m, a = -params.mu, params.a
    upper = n - a if printed else n + 1 - a
    try:
        coeffs = hyp_terms([upper, n - m], [a - m])
    except HypergeometricError as exc:
        raise HypergeometricError(f"eigenfunction n={n}: {exc}") from exc
    series = Poly([c * (-1) ** k for k, c in enumerate(coeffs)])
    return Poly([1, 1]) ** n * series


def l1_spectrum_check(params: S3Params, n: int):
    """Return ``(chi_n, eigenfunction coefficients)`` after asserting ``L1 v = chi_n v``."""
    if params.kind != "finite" or not 0 <= n <= params.m:
        raise ValueError("spectrum check needs a finite representation and 0 <= n <= m")
    v = l1_eigenfunction(params, n)
    L1 = model_differential(params).ops["L1"]
    value = chi(n, params.a)
    image = op_apply(L1, v)
    if image != v * value:
        raise AssertionError(f"L1 v_{n} != chi_{n} v_{n}")
    return value, list(v.coeffs)


def homomorphism_check(params: S3Params) -> Report:
    """Monomial matrices of the differential model against ``build_rep`` (finite case)."""
    if params.kind != "finite":
        raise ValueError("homomorphism check needs a finite representation")
    model = model_differential(params)
    rep = build_rep(params)
    report = Report("S3", "homomorphism", params.as_dict())
    for name in ("X", "L1", "L2"):
        M = matrix_on_monomials(model.ops[name], params.m + 1)
        report.add(Check.of(f"{name} monomial matrix = abstract", M == getattr(rep, name)))
    return report


# -- norms, kernel --------------------------------------------------------------


@dataclass(frozen=True)
class NormSequence:
    kn2: tuple  # k_n^2, k_0^2 = 1

    def ratio(self, n: int) -> GQ:
        return self.kn2[n] / self.kn2[n - 1]


def _kn2_closed(mu, a, n) -> GQ:
    den = pochhammer(1, n) * pochhammer(a + mu, n)
    if not den:
        raise ZeroDivisionError(f"k_{n}^2 denominator vanishes")
    return pochhammer(mu, n) * pochhammer(1 - a, n) / den


def _kn2_recursive(mu, a, N) -> list:
    out = [GQ(1)]
    for n in range(1, N):
        den = n * (n - 1 + mu + a)
        if not den:
            raise ZeroDivisionError(f"k_{n}^2 recursion denominator vanishes")
        out.append(out[-1] * (n - 1 + mu) * (n - a) / den)
    return out


def kernel_poly(params: S3Params, s, N: int | None = None) -> Poly:
    """``delta(t, conj(s)) = 2F1(mu, 1-a; mu+a; t conj(s))`` as a polynomial in ``t``.

    Finite representations give the exact terminating series; otherwise the
    first ``N`` terms.
    """
    mu, a = params.mu, params.a
    sbar = as_gq(s).conj()
    if params.kind == "finite":
        coeffs = hyp_terms([mu, 1 - a], [mu + a])
    else:
        coeffs = [_kn2_closed(mu, a, n) for n in range(N)]
    return Poly([c * sbar**k for k, c in enumerate(coeffs)])


def inner_monomial(p: Poly, q: Poly, norms: NormSequence) -> GQ:
    """``<p, q>`` with ``<t^j, t^k> = delta_jk / k_j^2``."""
    acc = GQ(0)
    for j in range(min(len(p.coeffs), len(q.coeffs))):
        acc = acc + p.coeffs[j] * q.coeffs[j].conj() / norms.kn2[j]
    return acc


def norms_and_kernel(params: S3Params, N: int | None = None):
    """Norm sequence (closed form checked against the recursion) and kernel evaluator."""
    mu, a = params.mu, params.a
    if N is None:
        if params.kind != "finite":
            raise ValueError("N required for infinite representations")
        N = params.m + 1
    closed = [_kn2_closed(mu, a, n) for n in range(N)]
    rec = _kn2_recursive(mu, a, N)
    if closed != rec:
        raise AssertionError("k_n^2 closed form disagrees with the recursion")
    norms = NormSequence(tuple(closed))
    return norms, (lambda s: kernel_poly(params, s, N))


def reproducing_check(params: S3Params, s) -> bool:
    """``<t^n, delta(., conj(s))> = s^n`` for every basis monomial (finite case)."""
    norms, kernel = norms_and_kernel(params)
    s = as_gq(s)
    K = kernel(s)
    return all(inner_monomial(Poly.monomial(n), K, norms) == s**n for n in range(params.m + 1))


# -- weight function ----------------------------------------------------------


class ConvergenceError(ValueError):
    """Parameters outside the convergence region of an integral or series."""


@dataclass(frozen=True)
class WeightSpec:
    """Series ``var^exponent * sum_k coeffs[k] var^k`` for a weight branch.

    ``var`` is ``1 - zeta`` for ``rho1`` and ``zeta`` for ``rho2``. The
    hypergeometric parameters enter only through their sum and product,
    hence through ``Q^2``.
    """

    branch: str
    exponent: GQ
    coeffs: tuple
    Q2: GQ
    param_sum: GQ
    param_product: GQ
    c: GQ


def _Q2(mu, a) -> GQ:
    return a * a + (2 * mu - 8) * a + mu * mu + 4 * mu - 8


def weight_spec(params_or_mu, a=None, branch: str = "rho1", K: int = 30, printed: bool = False) -> WeightSpec:
    """Series data for ``rho1`` (about ``zeta = 1``) or ``rho2`` (about ``zeta = 0``).

    ``rho2`` uses upper parameters ``(mu + 3a -+ Q)/2``; ``printed=True``
    selects the negated pair as typeset, which does not solve the weight
    equation.
    """
    if isinstance(params_or_mu, S3Params):
        mu, a = params_or_mu.mu, params_or_mu.a
    else:
        mu, a = as_gq(params_or_mu), as_gq(a)
    Q2 = _Q2(mu, a)
    s = mu + 3 * a
    if branch == "rho1":
        # A, B = -(s -+ Q)/2 + 1
        psum = 2 - s
        pprod = (1 - s / 2) ** 2 - Q2 / 4
        c = 2 - 2 * a
        exponent = 1 - 2 * a
    elif branch == "rho2":
        psum = -s if printed else s
        pprod = (s * s - Q2) / 4
        c = mu + a + 1
        exponent = mu + a
    else:
        raise ValueError(f"unknown branch {branch!r}")
    for k in range(K + 1):
        if not (c + k):
            raise ConvergenceError(f"degenerate exponent: lower parameter {c} hits a pole at order {k}")
    coeffs = [GQ(1)]
    for k in range(K):
        num = k * k + psum * k + pprod
        coeffs.append(coeffs[-1] * num / ((c + k) * (k + 1)))
    return WeightSpec(branch, exponent, tuple(coeffs), Q2, psum, pprod, c)


def _ode_coefficients(mu, a, branch):
    # (zeta - zeta^2) rho'' + (p0 + p1 zeta) rho' + q rho = 0
    p0 = -mu - a + 1
    p1 = -1 + mu - a
    q = -2 + mu - 2 * a + a * mu
    if branch == "rho1":
        # in w = 1 - zeta: w(1-w) rho_ww + (-(p0+p1) + p1 w) rho_w + q rho = 0
        return -(p0 + p1), p1, q
    return p0, p1, q


def weight_residual(spec: WeightSpec, mu, a) -> list:
    """Coefficients of ``var^(e-1+j)``, ``j = 0..K``, after substituting the series."""
    P0, P1, q = _ode_coefficients(as_gq(mu), as_gq(a), spec.branch)
    e = spec.exponent
    c = spec.coeffs
    out = []
    for j in range(len(c)):
        s = j + e
        r = c[j] * (s * (s - 1) + P0 * s)
        if j:
            s1 = j - 1 + e
            r = r + c[j - 1] * (-(s1 * (s1 - 1)) + P1 * s1 + q)
        out.append(r)
    return out


def weight_series_check(params: S3Params, branch: str = "rho1", K: int = 30, printed: bool = False) -> Report:
    """Substitute the truncated weight series into the weight ODE and require an exact zero residual."""
    spec = weight_spec(params, branch=branch, K=K, printed=printed)
    res = weight_residual(spec, params.mu, params.a)
    report = Report("S3", "weight-series", {**params.as_dict(), "branch": branch, "K": K})
    bad = [j for j, r in enumerate(res) if r]
    report.add(Check.of(f"{branch} residual through order {K}", not bad, detail=f"first nonzero order {bad[0]}" if bad else ""))
    report.extra["exponent"] = str(spec.exponent)
    report.extra["Q2"] = str(spec.Q2)
    return report


def weight_closed_form(mu, a) -> complex:
    """``Gamma(2-2a) Gamma(a+mu+1) / (Gamma(2-(a-mu+Q)/2) Gamma(2-(a-mu-Q)/2))``.

    This is ``int_0^1 rho dzeta`` for either branch (Gauss summation).
    """
    mu_q, a_q = as_gq(mu), as_gq(a)
    Q = cmath.sqrt(complex(_Q2(mu_q, a_q)))
    muf, af = complex(mu_q), complex(a_q)
    val = (
        loggamma_numeric(2 - 2 * af)
        + loggamma_numeric(af + muf + 1)
        - loggamma_numeric(2 - (af - muf + Q) / 2)
        - loggamma_numeric(2 - (af - muf - Q) / 2)
    )
    return cmath.exp(val)


def gauss_norm_identity(mu, a=None, branch: str = "rho1", tol: float = 1e-9) -> Report:
    """Compare ``int_0^1 rho(zeta) dzeta`` by quadrature with the Gauss-sum closed form.

    Accepts ``(mu, a)`` or an ``S3Params`` as the first argument.
    """
    import mpmath

    if isinstance(mu, S3Params):
        mu, a = mu.mu, mu.a
    mu_q, a_q = as_gq(mu), as_gq(a)
    if not (mu_q.is_real() and a_q.is_real()):
        raise ConvergenceError("gauss_norm_identity needs real parameters")
    muf, af = float(mu_q), float(a_q)
    if branch == "rho1" and not (af < 1 and af + muf > -1):
        raise ConvergenceError("rho1 integral needs a < 1 and a + mu > -1")
    if branch == "rho2" and not (af < 1 and af + muf > -1):
        raise ConvergenceError("rho2 integral needs a < 1 and a + mu > -1")
    Q = mpmath.sqrt(mpmath.mpf(float(_Q2(mu_q, a_q))))
    s = muf + 3 * af
    if branch == "rho1":
        A, B, C = -(s - Q) / 2 + 1, -(s + Q) / 2 + 1, 2 - 2 * af
        rho = lambda z: (1 - z) ** (1 - 2 * af) * mpmath.hyp2f1(A, B, C, 1 - z)
    else:
        A, B, C = (s - Q) / 2, (s + Q) / 2, muf + af + 1
        rho = lambda z: z ** (muf + af) * mpmath.hyp2f1(A, B, C, z)
    with mpmath.workdps(30):
        integral = complex(mpmath.quad(rho, [0, 0.5, 1]))
    closed = weight_closed_form(mu_q, a_q)
    rel = abs(integral - closed) / abs(closed)
    report = Report("S3", "gauss-norm", {"mu": mu_q, "a": a_q, "branch": branch})
    report.add(Check.of("int_0^1 rho = Gauss closed form", rel <= tol, rel))
    report.extra["integral"] = repr(integral.real)
    report.extra["closed_form"] = repr(closed.real)
    return report


# -- finite difference model (dual Hahn) ----------------------------------------


def model_difference_finite(m: int, a, printed: bool = False) -> ModelOps:
    """Step-1 difference realization diagonalizing L1; basis ``f_n = (-1)^n p_n(lambda(t))``.

    The L2 coefficients carry a factor ``i`` relative to the typeset form
    (forced by ``[L1, X] = 2 L2``); ``printed=True`` omits it.
    """
    params = S3Params.finite(m, a)
    a = params.a
    t = Poly([0, 1])
    den = Poly([1 - 2 * a, 2])  # 2t - 2a + 1
    lam = t * (t + (1 - 2 * a))
    L1 = ShiftOp({0: -lam + (a - HALF)}, step=1)
    up = (t + (1 - 2 * a)) * (t - m)
    down = t * (t + (m - 2 * a + 1))
    minus_iX = ShiftOp({1: RatFunc(up, den), -1: RatFunc(-down, den)}, step=1)
    X = minus_iX * I
    L2 = ShiftOp(
        {1: RatFunc((t + (1 - a)) * up, den), -1: RatFunc((t - a) * down, den)},
        step=1,
    )
    if not printed:
        L2 = L2 * I
    basis = lambda n: dual_hahn_poly(m, a, n) * (-1) ** n
    return ModelOps("difference", {"X": X, "L1": L1, "L2": L2}, params, basis)


def dual_hahn_poly(m: int, a, n: int) -> Poly:
    """``p_n(lambda(t)) = 3F2(-n, -t, t-2a+1; -m, 1-a; 1)`` as a polynomial in ``t``."""
    a = as_gq(a)
    if not 0 <= n <= m:
        raise ValueError("need 0 <= n <= m")
    total = Poly()
    prod = Poly.const(1)
    coef = GQ(1)
    for k in range(n + 1):
        if k:
            j = k - 1
            prod = prod * Poly([j, -1]) * Poly([j - 2 * a + 1, 1])
            den = (-m + j) * (1 - a + j) * k
            if not den:
                raise HypergeometricError("dual Hahn denominator parameter hits a pole")
            coef = coef * (-n + j) / den
        total = total + prod * coef
    return total


def dual_hahn_weight(m: int, a, t: int) -> GQ:
    """Weight at grid point ``t``, normalized to 1 at ``t = 0``.

    The Pochhammer factor uses ``(-m)_t``; with ``(-m-1)_t`` the family is
    not orthogonal.
    """
    a = as_gq(a)
    num = pochhammer(1 - 2 * a, t) * pochhammer(GQ(3) / 2 - a, t) * pochhammer(GQ(-m), t) * (-1) ** t
    den = pochhammer(HALF - a, t) * pochhammer(2 + m - 2 * a, t) * math.factorial(t)
    if not den:
        raise ZeroDivisionError(f"weight denominator vanishes at t={t}")
    return num / den


def dual_hahn_norm(m: int, a, n: int) -> GQ:
    """``(2-2a)_m (a-m)_n n! / ((1-a)_m (1-a)_n (-m)_n)``."""
    a = as_gq(a)
    den = pochhammer(1 - a, m) * pochhammer(1 - a, n) * pochhammer(GQ(-m), n)
    if not den:
        raise ZeroDivisionError("norm denominator vanishes")
    return pochhammer(2 - 2 * a, m) * pochhammer(a - m, n) * math.factorial(n) / den


def dual_hahn_orthogonality(m: int, a, n: int, n2: int):
    """``(weighted grid sum, closed form)`` for the pair ``(n, n2)``."""
    a = as_gq(a)
    pn, pn2 = dual_hahn_poly(m, a, n), dual_hahn_poly(m, a, n2)
    total = GQ(0)
    for t in range(m + 1):
        total = total + dual_hahn_weight(m, a, t) * pn(t) * pn2(t)
    closed = dual_hahn_norm(m, a, n) if n == n2 else GQ(0)
    return total, closed


def grid_consistency(m: int, a) -> Report:
    """Action of the difference model on ``{f_n}`` over ``t = 0..m`` versus the abstract matrices."""
    model = model_difference_finite(m, a)
    rep = build_rep(model.params)
    f = [model.basis(n) for n in range(m + 1)]
    report = Report("S3", "grid-consistency", model.params.as_dict())
    for name in ("X", "L1", "L2"):
        op, mat = model.ops[name], getattr(rep, name)
        ok = True
        for n in range(m + 1):
            img = op_apply(op, f[n])
            img = img if isinstance(img, RatFunc) else RatFunc(img)
            for t in range(m + 1):
                want = sum((mat[j, n] * f[j](t) for j in range(m + 1)), GQ(0))
                if img(t) != want:
                    ok = False
        report.add(Check.of(f"{name} on dual Hahn basis", ok))
    return report


# -- infinite difference model (continuous dual Hahn) ---------------------------


def model_difference_infinite(mu, a, printed: bool = False) -> ModelOps:
    """Step-``i`` difference realization with ``L1 = t^2 + a^2 - 1/4``.

    With ``P`` the typeset right-hand side for ``-iX``, the relations and
    the spectrum ``i(2n+mu)`` on the basis require ``X = -P`` and
    ``L2 = -(1-2it)p+(t)/(4t) T^i + (1+2it)p-(t)/(4t) T^-i``. ``printed=True``
    returns the typeset operators.
    """
    params = S3Params.bounded_below(mu, a)
    mu, a = params.mu, params.a
    t = Poly([0, 1])
    p_plus = Poly([HALF - a, -I]) * Poly([mu + a - HALF, -I])  # (1/2-a-it)(mu+a-1/2-it)
    p_minus = Poly([HALF - a, I]) * Poly([mu + a - HALF, I])
    L1 = ShiftOp({0: t * t + (a * a - QUARTER)}, step=I)
    P = ShiftOp({1: RatFunc(p_plus, 2 * t), -1: RatFunc(-p_minus, 2 * t)}, step=I)
    up = RatFunc(Poly([1, -2 * I]) * p_plus, 4 * t)
    down = RatFunc(Poly([1, 2 * I]) * p_minus, 4 * t)
    if printed:
        X = P * I
        L2 = ShiftOp({1: up * (-I), -1: down * (-I)}, step=I)
    else:
        X = P * (-1)
        L2 = ShiftOp({1: -up, -1: down}, step=I)
    basis = lambda n: cdh_basis(mu, a, n) * (-1) ** n
    return ModelOps("difference", {"X": X, "L1": L1, "L2": L2}, params, basis)


def basis_consistency(model: ModelOps, N: int) -> Report:
    """Model operators on ``f_0..f_{N-1}`` versus the abstract tridiagonal matrices.

    Exact polynomial identities, top column skipped since it leaks past the
    truncation. Finite models are checked on their grid instead.
    """
    if model.params.kind == "finite":
        # identities hold only on the support t = 0..m
        return grid_consistency(model.params.m, model.params.a)
    rep = build_rep(model.params, N=N)
    size = N
    f = [model.basis(n) for n in range(size)]
    cols = size - 1
    report = Report("S3", "basis-consistency", {**model.params.as_dict(), "N": size})
    for name in ("X", "L1", "L2"):
        op, mat = model.ops[name], getattr(rep, name)
        ok = True
        for n in range(cols):
            img = op_apply(op, f[n])
            want = sum((f[j] * mat[j, n] for j in range(size) if mat[j, n]), Poly())
            if img != want:
                ok = False
                break
        report.add(Check.of(f"{name} on basis", ok, detail="" if ok else f"column {n}"))
    return report


def cdh_basis(mu, a, n: int) -> Poly:
    """``s_n(t^2) = 3F2(-n, 1/2-a+it, 1/2-a-it; mu, 1-a; 1)`` as a polynomial in ``t``."""
    mu, a = as_gq(mu), as_gq(a)
    total = Poly()
    prod = Poly.const(1)
    coef = GQ(1)
    for k in range(n + 1):
        if k:
            j = k - 1
            prod = prod * Poly([HALF - a + j, I]) * Poly([HALF - a + j, -I])
            den = (mu + j) * (1 - a + j) * k
            if not den:
                raise HypergeometricError("continuous dual Hahn denominator parameter hits a pole")
            coef = coef * (-n + j) / den
        total = total + prod * coef
    return total


def tabulate_basis(model: ModelOps, ns, ts) -> str:
    """CSV with columns ``t, n, value_re, value_im`` for the model's basis functions."""
    rows = []
    for n in ns:
        f = model.basis(n)
        for t in ts:
            v = f(as_gq(t))
            rows.append([str(as_gq(t)), n, str(GQ(v.re)), str(GQ(v.im))])
    return rows_to_csv(["t", "n", "value_re", "value_im"], rows)


def _cdh_logweight(t: float, mu: float, a: float) -> float:
    lw = (
        loggamma_numeric(complex(0.5 - a, t))
        + loggamma_numeric(complex(mu + a - 0.5, t))
        + loggamma_numeric(complex(0.5, t))
        - loggamma_numeric(complex(0.0, 2 * t))
    )
    return 2 * lw.real


def _cdh_norm(n: int, mu: float, a: float) -> float:
    lg = math.lgamma(n + mu) + math.lgamma(n + 1 - a) + math.lgamma(n + mu + a) + math.lgamma(n + 1)
    poch = math.prod((mu + j) * (1 - a + j) for j in range(n))
    return math.exp(lg) / poch**2


def cdh_orthogonality_numeric(mu, a, n: int, n2: int, rtol: float = 1e-6, tail_tol: float = 1e-12) -> Report:
    """Quadrature of the continuous dual Hahn orthogonality integral on ``[0, T]``.

    ``T`` is the first point where the tail estimate ``g(T)/(pi - p/T)``
    (``g`` the integrand envelope, ``p`` its polynomial degree; the weight
    decays like ``t^p exp(-pi t)``) drops below ``tail_tol`` relative to the norm scale.
    """
    from scipy.integrate import quad

    mu_q, a_q = as_gq(mu), as_gq(a)
    muf, af = float(mu_q), float(a_q)
    if not (muf > 0.5 - af > 0):
        raise ConvergenceError("continuous dual Hahn orthogonality needs mu > 1/2 - a > 0")
    sn = cdh_basis(mu_q, a_q, n)
    sn2 = cdh_basis(mu_q, a_q, n2)

    def integrand(t: float) -> float:
        if t == 0.0:
            return 0.0
        w = math.exp(_cdh_logweight(t, muf, af))
        return w * (sn(t).real) * (sn2(t).real) / (2 * math.pi)

    # |Gamma(x+it)|^2 ~ 2 pi t^(2x-1) e^(-pi t): power of the envelope
    p = 2 * ((0.5 - af) + (muf + af - 0.5) + 0.5) - 3 + 1 + 2 * (n + n2)
    if n == n2:
        closed = scale = _cdh_norm(n, muf, af)
    else:
        closed, scale = 0.0, math.sqrt(_cdh_norm(n, muf, af) * _cdh_norm(n2, muf, af))
    T = 10.0
    while True:
        env = abs(integrand(T))
        rate = math.pi - max(p, 0) / T
        if rate > 0 and env / rate < tail_tol * scale:
            break
        T += 5.0
    value, err = quad(integrand, 0, T, limit=400, epsabs=1e-12 * scale, epsrel=1e-11)
    rel = abs(value - closed) / scale
    report = Report("S3", "cdh-orthogonality", {"mu": mu_q, "a": a_q, "n": n, "np": n2})
    report.add(Check.of("quadrature = closed form", rel <= rtol, rel))
    report.extra.update({"integral": repr(value), "closed_form": repr(closed), "T": T, "quad_error": repr(err)})
    return report
