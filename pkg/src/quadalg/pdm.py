"""Position-dependent-mass system in a semi-infinite layer, seen through the S3 model.

The layer Hamiltonian ``H_Q`` is gauge-equivalent to S3 on the sphere, with
``1/4 - alpha^2 = -k(k-1)`` and ``a = 1/2 - k < 0``. Its eigenvalues are
``lambda_Q = -q^2 lambda_S - q^2 k(k-1)``; on finite representations
(``mu = -m``, ``m = N + 1``) this equals ``q^2 (N+2)(N+2k+1)``.

Quesne's boundary conditions split the finite S3 representation into the
two eigenspaces of ``P f(t) = t^m f(1/t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .opcalc import GQ, Matrix, as_gq, rational_sqrt
from .report import Check, Report
from .s3models import norms_and_kernel
from .s3rep import S3Params, norms_positive

__all__ = [
    "PdmParams",
    "sphere_coords",
    "eigen_correspondence",
    "ParityVector",
    "ParityBasis",
    "parity_basis",
    "parity_operator",
    "NonPositiveNorm",
]


class NonPositiveNorm(ValueError):
    pass


@dataclass(frozen=True)
class PdmParams:
    q: GQ
    k: GQ
    N: int

    def __post_init__(self):
        object.__setattr__(self, "q", as_gq(self.q))
        object.__setattr__(self, "k", as_gq(self.k))
        if not (self.q.is_real() and self.k.is_real()):
            raise ValueError("q and k must be real")
        if self.q.re <= 0 or self.k.re <= 0:
            raise ValueError("q and k must be positive")
        if self.N < 0:
            raise ValueError("N must be nonnegative")

    @property
    def a(self) -> GQ:
        return GQ(1) / 2 - self.k

    @property
    def m(self) -> int:
        return self.N + 1

    @property
    def mu(self) -> GQ:
        return GQ(-self.m)

    def splits(self) -> list[tuple[int, int]]:
        """``(n, l)`` with ``m = 2n + l + 1``."""
        return [(n, self.m - 1 - 2 * n) for n in range(self.m // 2 + 1) if self.m - 1 - 2 * n >= 0]


def sphere_coords(x: float, y: float, q: float) -> tuple[float, float, float]:
    """Point on the unit sphere for layer coordinates ``(x, y)``."""
    ch = math.cosh(q * x)
    return math.sin(q * y) / ch, math.cos(q * y) / ch, math.tanh(q * x)


def eigen_correspondence(p: PdmParams) -> tuple[GQ, GQ, Check]:
    """``(lambda_S, lambda_Q, check)``; ``lambda_Q`` via the gauge relation, checked against the closed form."""
    lam_s = -((p.mu - 1 + p.a) ** 2) + GQ(1) / 4
    lam_q = -(p.q**2) * lam_s - p.q**2 * p.k * (p.k - 1)
    closed = p.q**2 * (p.N + 2) * (p.N + 2 * p.k + 1)
    check = Check.of("lambda_Q = q^2 (N+2)(N+2k+1)", lam_q == closed, detail=f"{lam_q} vs {closed}")
    return lam_s, lam_q, check


@dataclass(frozen=True)
class ParityVector:
    """``sqrt(scale2) * sum_n coeffs[n] phi_n`` in the orthonormal basis ``phi_n = k_n t^n``."""

    label: str
    coeffs: tuple
    scale2: GQ

    def support(self) -> list[int]:
        return [n for n, c in enumerate(self.coeffs) if c]


def _inner(u: ParityVector, v: ParityVector) -> GQ:
    dot = sum((a * b.conj() for a, b in zip(u.coeffs, v.coeffs)), GQ(0))
    if not dot:
        return GQ(0)
    root = rational_sqrt((u.scale2 * v.scale2).re)
    if root is None:
        raise ArithmeticError("inner product leaves the rationals")
    return dot * GQ(root)


@dataclass
class ParityBasis:
    m: int
    plus: list
    minus: list
    kn2: tuple
    report: Report

    @property
    def dims(self) -> tuple[int, int]:
        return len(self.plus), len(self.minus)

    def gram(self) -> Matrix:
        vecs = self.plus + self.minus
        return Matrix([[_inner(u, v) for v in vecs] for u in vecs])


def parity_operator(kn2) -> Matrix:
    """``P`` on ``phi_0..phi_m``: ``P phi_n = (k_n / k_{m-n}) phi_{m-n}``."""
    m = len(kn2) - 1
    rows = [[GQ(0)] * (m + 1) for _ in range(m + 1)]
    for n in range(m + 1):
        ratio = kn2[n] / kn2[m - n]
        root = rational_sqrt(ratio.re) if ratio.is_real() else None
        if root is None:
            raise ArithmeticError(f"k_{n}/k_{m - n} is not rational")
        rows[m - n][n] = GQ(root)
    return Matrix(rows)


def parity_basis(m: int, a) -> ParityBasis:
    """Orthonormal bases of ``V+`` and ``V-`` (``Phi = (phi_l +- (-1)^m phi_{m-l})/sqrt 2``).

    For even ``m`` the self-paired vector ``phi_{m/2}`` is the last ``V+``
    element.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    a = as_gq(a)
    if not norms_positive(-m, a, m):
        raise NonPositiveNorm(f"k_n^2 not all positive for m={m}, a={a}")
    params = S3Params.finite(m, a)
    norms, _ = norms_and_kernel(params)
    kn2 = norms.kn2
    report = Report("PDM", "parity-basis", {"m": m, "a": a})
    symmetric = all(kn2[n] == kn2[m - n] for n in range(m + 1))
    report.add(Check.of("k_n^2 = k_{m-n}^2", symmetric))
    sign = GQ((-1) ** m)
    plus, minus = [], []
    for l in range(m // 2 + 1):
        if 2 * l == m:
            coeffs = [GQ(0)] * (m + 1)
            coeffs[l] = GQ(1)
            plus.append(ParityVector(f"Phi+_{l}", tuple(coeffs), GQ(1)))
            continue
        for target, s, tag in ((plus, sign, "+"), (minus, -sign, "-")):
            coeffs = [GQ(0)] * (m + 1)
            coeffs[l], coeffs[m - l] = GQ(1), s
            target.append(ParityVector(f"Phi{tag}_{l}", tuple(coeffs), GQ(1) / 2))
    basis = ParityBasis(m, plus, minus, kn2, report)
    k = (m + 1) // 2 if m % 2 else m // 2
    expected = (k + 1, k) if m % 2 == 0 else (k, k)
    report.add(Check.of("dimensions", basis.dims == expected, detail=f"{basis.dims} expected {expected}"))
    report.add(Check.of("orthonormal", basis.gram() == Matrix.identity(m + 1)))
    P = parity_operator(kn2)
    report.add(Check.of("P preserves norms", all(x in (GQ(0), GQ(1)) for r in P.rows for x in r)))
    report.add(Check.of("P^2 = I", P @ P == Matrix.identity(m + 1)))
    # P-eigenvalues: (-1)^m on V+, -(-1)^m on V-
    ok = True
    for vecs, ev in ((plus, sign), (minus, -sign)):
        for v in vecs:
            image = P.apply(list(v.coeffs))
            ok &= list(image) == [c * ev for c in v.coeffs]
    report.add(Check.of("V+ and V- are P-eigenspaces", ok))
    return basis
