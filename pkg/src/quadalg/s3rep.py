"""Tridiagonal representations of the S3 quadratic algebra on an eigenbasis of X.

Conventions: ``X f_n = lambda_n f_n`` with ``lambda_n = i(2n + mu)``;
``L1 f_n = sum_j C(j, n) f_j`` and ``L2 f_n = sum_j D(j, n) f_j``, so column
``n`` of each matrix is the image of ``f_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .opcalc import GQ, I, AlgebraSpec, Matrix, Relation, Word, anti, as_gq, comm, gens, gq_sqrt, verify_quadratic_algebra
from .report import Check, Report

__all__ = [
    "S3Params",
    "TridiagonalRep",
    "RepCoefficients",
    "SplittingError",
    "s3_algebra",
    "kappa_general",
    "energy_lowest_weight",
    "F_quartic",
    "rep_coefficients",
    "build_rep",
    "verify_matrix_structure",
    "ladder_operators",
    "ladder_check",
    "RepClass",
    "classify",
    "norms_positive",
]

QUARTER = GQ(1) / 4


class SplittingError(ArithmeticError):
    """Generic F_n cannot be split into C factors inside the Gaussian rationals."""


def energy_lowest_weight(mu, a) -> GQ:
    """``H = -(mu - 1 + a)**2 + 1/4``: the energy forced by ``kappa = 0``."""
    mu, a = as_gq(mu), as_gq(a)
    return -((mu - 1 + a) ** 2) + QUARTER


@dataclass(frozen=True)
class S3Params:
    mu: GQ
    a: GQ | None
    alpha: GQ
    H: GQ
    kappa: GQ
    kind: str  # "finite" | "bounded_below" | "generic"
    m: int | None = None

    @classmethod
    def finite(cls, m: int, a) -> "S3Params":
        if int(m) != m or m < 0:
            raise ValueError("finite representations need a nonnegative integer m")
        a = as_gq(a)
        mu = GQ(-int(m))
        return cls(mu, a, QUARTER - a * a, energy_lowest_weight(mu, a), GQ(0), "finite", int(m))

    @classmethod
    def bounded_below(cls, mu, a) -> "S3Params":
        mu, a = as_gq(mu), as_gq(a)
        if mu.is_nonpositive_integer():
            return cls.finite(-int(mu.re), a)
        return cls(mu, a, QUARTER - a * a, energy_lowest_weight(mu, a), GQ(0), "bounded_below")

    @classmethod
    def generic(cls, mu, H, alpha, kappa=None) -> "S3Params":
        mu, H, alpha = as_gq(mu), as_gq(H), as_gq(alpha)
        k = kappa_general(mu, H, alpha) if kappa is None else as_gq(kappa)
        return cls(mu, None, alpha, H, k, "generic")

    def as_dict(self) -> dict:
        out = {"mu": self.mu, "alpha": self.alpha, "H": self.H, "kappa": self.kappa, "kind": self.kind}
        if self.a is not None:
            out["a"] = self.a
        if self.m is not None:
            out["m"] = self.m
        return out


def s3_algebra(H, alpha) -> AlgebraSpec:
    """Commutation relations and Casimir of the quantum S3 algebra at fixed energy."""
    H, alpha = as_gq(H), as_gq(alpha)
    X, L1, L2 = gens("X", "L1", "L2")
    half = GQ(1) / 2
    casimir = (
        (X * X * L1 + X * L1 * X + L1 * X * X) * (GQ(1) / 3)
        + L1 * L1
        + L2 * L2
        - L1 * H
        + X * X * (alpha + GQ(11) / 12)
        - Word.const(H / 6)
        + L1 * (alpha - GQ(2) / 3)
        - Word.const(alpha * 5 / 6)
    )
    relations = [
        Relation("[L1,X]=2L2", comm(L1, X), L2 * 2),
        Relation("[L2,X]=-X^2-2L1+H-alpha", comm(L2, X), -(X * X) - L1 * 2 + (H - alpha)),
        Relation("[L1,L2]=-{L1,X}-(1/2+2alpha)X", comm(L1, L2), -anti(L1, X) - X * (half + 2 * alpha)),
        Relation("casimir", casimir, Word()),
    ]
    return AlgebraSpec("S3", ("X", "L1", "L2"), relations, {"H": H, "alpha": alpha})


def kappa_general(mu, H, alpha) -> GQ:
    """Constant term of F_n fixed by the Casimir relation."""
    mu, H, al = as_gq(mu), as_gq(H), as_gq(alpha)
    return (
        mu**4 / 16
        - mu**3 / 4
        + (H + al + GQ(5) / 2) / 8 * mu**2
        - (GQ(1) / 2 + H + al) / 4 * mu
        + H / 8
        + al / 8
        + H * H / 16
        - H * al / 8
        + al * al / 16
    )


def F_quartic(mu, H, alpha, kappa, n) -> GQ:
    """General solution ``F_n`` of the difference equation for ``C(n,n-1) C(n-1,n)``.

    The n**2 coefficient uses 5/4; it is forced by the difference equation
    together with the printed linear coefficient.
    """
    mu, H, al, k = as_gq(mu), as_gq(H), as_gq(alpha), as_gq(kappa)
    n = as_gq(n)
    c3 = 2 * mu - 2
    c2 = GQ(3) / 2 * mu**2 - 3 * mu + H / 2 + al / 2 + GQ(5) / 4
    c1 = mu**3 / 2 - GQ(3) / 2 * mu**2 + (H / 2 + al / 2 + GQ(5) / 4) * mu - H / 2 - al / 2 - QUARTER
    return n**4 + c3 * n**3 + c2 * n**2 + c1 * n + k


def F_difference_rhs(mu, H, alpha, n) -> GQ:
    """Right side of ``F_{n+1} - F_n = (2n+mu)(4n^2+4mu n+mu^2+H+alpha+1/2)/2``."""
    mu, H, al, n = as_gq(mu), as_gq(H), as_gq(alpha), as_gq(n)
    return (2 * n + mu) * (4 * n * n + 4 * mu * n + mu * mu + H + al + GQ(1) / 2) / 2


@dataclass(frozen=True)
class RepCoefficients:
    n: int
    C_up: GQ | None  # C(n+1, n)
    C_diag: GQ  # C(n, n)
    C_down: GQ | None  # C(n-1, n)
    D_up: GQ | None
    D_diag: GQ
    D_down: GQ | None
    F: GQ  # F_n = C(n, n-1) C(n-1, n)


def _generic_split(p: S3Params):
    S = p.H + p.alpha
    disc = 1 - 4 * S + 16 * p.H * p.alpha
    root = gq_sqrt(disc)
    if root is None:
        raise SplittingError(f"discriminant {disc} is not a square in the Gaussian rationals")
    plus = (1 - 2 * S + root) / 8
    minus = (1 - 2 * S - root) / 8
    return plus, minus


def rep_coefficients(params: S3Params, n: int, split: bool = True) -> RepCoefficients:
    """Matrix coefficients of L1, L2 in column ``n``.

    For ``kappa = 0`` kinds the factorization ``C(n-1,n) = n(n+mu-1+a)``,
    ``C(n+1,n) = (n+mu)(n+1-a)`` is used. For the generic kind the quartic
    ``F_n`` is split at its root pairs when the discriminant is a perfect
    square; otherwise ``split=True`` raises :class:`SplittingError` and
    ``split=False`` leaves the off-diagonal entries as ``None``.
    """
    mu, H, al = params.mu, params.H, params.alpha
    nn = GQ(n)
    lam = I * (2 * nn + mu)
    c_diag = (-(lam * lam) + H - al) / 2
    if params.kind in ("finite", "bounded_below"):
        a = params.a
        up = (nn + mu) * (nn + 1 - a)
        down = nn * (nn + mu - 1 + a)
        F = nn * (nn + mu - 1) * (nn + mu - 1 + a) * (nn - a)
    else:
        F = F_quartic(mu, H, al, params.kappa, nn)
        try:
            plus, minus = _generic_split(params)
        except SplittingError:
            if split:
                raise
            return RepCoefficients(n, None, c_diag, None, None, GQ(0), None, F)
        y_next = nn + 1 + (mu - 1) / 2
        y = nn + (mu - 1) / 2
        up = y_next * y_next - plus
        down = y * y - minus
    return RepCoefficients(n, up, c_diag, down, -I * up, GQ(0), I * down, F)


@dataclass
class TridiagonalRep:
    params: S3Params
    dim: int
    offset: int
    lam: list
    X: Matrix
    L1: Matrix
    L2: Matrix
    F: list
    coefficients: list = field(repr=False, default_factory=list)

    @property
    def ops(self) -> dict:
        return {"X": self.X, "L1": self.L1, "L2": self.L2}

    @property
    def truncated(self) -> bool:
        return self.params.kind != "finite"


def build_rep(params: S3Params, N: int | None = None, offset: int = 0) -> TridiagonalRep:
    """Assemble X, L1, L2 on ``f_offset, ..., f_{offset+N-1}``.

    Finite representations use the full ``m + 1`` dimensional space.
    """
    if params.kind == "finite":
        if N is None:
            N = params.m + 1
        if N != params.m + 1:
            raise ValueError(f"finite representation with m={params.m} has dimension {params.m + 1}, not {N}")
        offset = 0
    if N is None or N < 1:
        raise ValueError("N must be a positive integer")
    coeffs = [rep_coefficients(params, offset + k) for k in range(N)]
    lam = [I * (2 * GQ(offset + k) + params.mu) for k in range(N)]
    zero = GQ(0)
    L1 = [[zero] * N for _ in range(N)]
    L2 = [[zero] * N for _ in range(N)]
    for k, c in enumerate(coeffs):
        L1[k][k] = c.C_diag
        L2[k][k] = c.D_diag
        if k + 1 < N:
            L1[k + 1][k] = c.C_up
            L2[k + 1][k] = c.D_up
        if k >= 1:
            L1[k - 1][k] = c.C_down
            L2[k - 1][k] = c.D_down
    return TridiagonalRep(
        params, N, offset, lam, Matrix.diag(lam), Matrix(L1), Matrix(L2), [c.F for c in coeffs], coeffs
    )


def _interior(rep: TridiagonalRep):
    if rep.params.kind == "finite":
        return None
    if rep.params.kind == "bounded_below" and rep.offset == 0:
        return (0, rep.dim - 2)
    return (2, rep.dim - 2)


def verify_matrix_structure(rep: TridiagonalRep, params: S3Params | None = None) -> Report:
    """Exact residuals of the three commutation relations and the Casimir.

    Truncated infinite representations are checked on the interior index
    window only; the last two rows/columns see the missing neighbours.
    """
    params = params or rep.params
    spec = s3_algebra(params.H, params.alpha)
    window = _interior(rep)
    result = verify_quadratic_algebra(rep.ops, spec, window=window)
    report = Report("S3", "rep", params.as_dict())
    if window is not None:
        report.extra["window"] = list(window)
    for r in result.results:
        report.add(Check.of(r.name, r.passed, r.residual_norm()))
    report.add(Check.of("D(n,n)=0", all(rep.L2[k, k] == 0 for k in range(rep.dim))))
    return report


def ladder_operators(rep: TridiagonalRep):
    """``A† = L1 + iL2 + (X^2 - H + alpha)/2`` and ``A = L1 - iL2 + (X^2 - H + alpha)/2``."""
    p = rep.params
    K = (rep.X @ rep.X - rep.X.scalar(p.H - p.alpha)) * (GQ(1) / 2)
    A_dag = rep.L1 + rep.L2 * I + K
    A = rep.L1 - rep.L2 * I + K
    return A, A_dag


def ladder_check(rep: TridiagonalRep, params: S3Params | None = None, factor=2) -> Report:
    """Raising/lowering structure.

    ``factor`` is the multiple of ``F_{n+1} - F_n`` expected on the diagonal
    of ``[A, A†]``; the actions ``A† f_n = 2C(n+1,n) f_{n+1}`` and
    ``A f_n = 2C(n-1,n) f_{n-1}`` imply the value 4.
    """
    params = params or rep.params
    A, A_dag = ladder_operators(rep)
    N = rep.dim
    report = Report("S3", "ladder", params.as_dict())
    report.extra["factor"] = str(factor)
    raise_ok = lower_ok = True
    for k in range(N):
        c = rep.coefficients[k]
        for j in range(N):
            want_up = 2 * c.C_up if j == k + 1 else GQ(0)
            want_dn = 2 * c.C_down if j == k - 1 else GQ(0)
            raise_ok &= A_dag[j, k] == want_up
            lower_ok &= A[j, k] == want_dn
    report.add(Check.of("A^dag f_n = 2C(n+1,n) f_{n+1}", raise_ok))
    report.add(Check.of("A f_n = 2C(n-1,n) f_{n-1}", lower_ok))

    comm_AAd = A @ A_dag - A_dag @ A
    window = _interior(rep) or (0, N)
    lo, hi = window
    # F_{n+1} for the last index needs one coefficient past the window
    F_next = [rep_coefficients(params, rep.offset + k + 1).F for k in range(N)]
    worst = 0.0
    diag_ok = True
    for k in range(lo, hi):
        want = (F_next[k] - rep.F[k]) * factor
        got = comm_AAd[k, k]
        if got != want:
            diag_ok = False
            worst = max(worst, abs(complex(got - want)))
    offdiag_ok = all(comm_AAd[j, k] == 0 for j in range(lo, hi) for k in range(lo, hi) if j != k)
    report.add(Check.of(f"[A,A^dag] diagonal = {factor}(F_(n+1)-F_n)", diag_ok and offdiag_ok, worst))

    # cubic in X: [A, A†] = -2iX(-X^2 + H + alpha + 1/2)
    cubic_ok = True
    for k in range(lo, hi):
        lam = rep.lam[k]
        cubic_ok &= comm_AAd[k, k] == -2 * I * lam * (-(lam * lam) + params.H + params.alpha + GQ(1) / 2)
    report.add(Check.of("[A,A^dag] = -2iX(-X^2+H+alpha+1/2)", cubic_ok))

    if params.kind in ("finite", "bounded_below"):
        col0 = [A[j, 0] for j in range(N)]
        report.add(Check.of("A f_0 = 0", not any(col0)))
    if params.kind == "finite":
        m = params.m
        report.add(Check.of("A^dag f_m = 0", rep_coefficients(params, m).C_up == 0))
    return report


@dataclass(frozen=True)
class RepClass:
    kind: str  # "finite" | "bounded_below" | "none"
    row: str
    dim: int | None = None
    spectrum: tuple | None = None  # eigenvalues of -iX
    models: tuple = ()
    boundary: bool = False
    detail: str = ""


def _real(x) -> Fraction:
    x = as_gq(x)
    if not x.is_real():
        raise ValueError("classification needs real parameters")
    return x.real_fraction()


def classify(mu, a) -> RepClass:
    """Place ``(mu, a)`` in the table of unitary bounded-below representations.

    Parameters on the edge of one of the table's open ranges are reported
    with ``boundary=True`` rather than assigned to a class.
    """
    mu_q, a_q = _real(mu), _real(a)
    both = ("differential", "difference")
    if mu_q.denominator == 1 and mu_q <= 0:
        m = int(-mu_q)
        spectrum = tuple(m - 2 * k for k in range(m + 1))
        if a_q < 1 or a_q + mu_q > 0:
            return RepClass("finite", "finite", m + 1, spectrum, both)
        edge = a_q == 1 or a_q + mu_q == 0
        return RepClass("none", "finite", m + 1, spectrum, (), edge, "norms not positive: need a < 1 or a > m")
    if mu_q > 0:
        if a_q < 1 and a_q + mu_q > 0:
            return RepClass("bounded_below", "mu>0", models=both)
        edge = a_q == 1 or a_q + mu_q == 0
        return RepClass("none", "mu>0", boundary=edge, detail="need a < 1 and a + mu > 0")
    n0 = math.floor(-mu_q) + 1
    t = mu_q + n0
    if n0 < a_q < n0 + 1:
        return RepClass("bounded_below", "mu=-n0+t, a=n0+s", models=("differential",), detail=f"n0={n0}")
    if -t < a_q < 1 - t:
        return RepClass("bounded_below", "mu=-n0+t, -t<a<1-t", models=("differential",), detail=f"n0={n0}")
    edge = a_q in (n0, n0 + 1, -t, 1 - t)
    return RepClass("none", "mu<0 non-integer", boundary=edge, detail=f"n0={n0}, t={t}")


def norms_positive(mu, a, m: int | None = None) -> bool:
    """Sign analysis of ``k_n^2 / k_{n-1}^2 = (n-1+mu)(n-a) / (n(n-1+mu+a))``.

    Every factor is increasing and linear in ``n``, so its sign is constant
    past its root; scanning to one step beyond the largest root decides all
    ``n >= 1`` (or ``1 <= n <= m``).
    """
    mu_q, a_q = _real(mu), _real(a)
    roots = [1 - mu_q, a_q, 1 - mu_q - a_q, Fraction(0)]
    last = math.ceil(max(roots)) + 1
    upper = last if m is None else min(m, last)
    for n in range(1, max(upper, 0) + 1):
        den = n * (n - 1 + mu_q + a_q)
        num = (n - 1 + mu_q) * (n - a_q)
        if den == 0 or num * den <= 0:
            return False
    return True
