"""Pochhammer symbols, hypergeometric series and a complex Gamma function."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .field import GQ, ONE, ZERO, as_gq

__all__ = [
    "pochhammer",
    "hyp_terms",
    "hyp_eval",
    "hyp_numeric",
    "PartialSum",
    "HypergeometricError",
    "gamma_numeric",
    "loggamma_numeric",
]


class HypergeometricError(ValueError):
    """Series cannot be evaluated as requested (non-terminating or pole)."""


def pochhammer(x, n: int):
    """Rising factorial ``(x)_n = x (x+1) ... (x+n-1)``; ``(x)_0 = 1``.

    Exact for Gaussian rationals and other exact scalars; ``complex``/``float``
    inputs are evaluated in floating point.
    """
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    if isinstance(x, (float, complex)):
        acc = 1.0
        for k in range(n):
            acc *= x + k
        return acc
    x = as_gq(x)
    acc = ONE
    for k in range(n):
        acc = acc * (x + k)
    return acc


def _termination_order(num: Sequence[GQ]) -> int | None:
    orders = [-int(a.re) for a in num if a.is_nonpositive_integer()]
    return min(orders) if orders else None


def hyp_terms(num_params, den_params, z=None) -> list[GQ]:
    """Exact terms ``(a)_k .../((b)_k ... k!) z**k`` of a terminating series.

    With ``z=None`` the returned terms omit the power of ``z``; these are the
    coefficients of the series as a polynomial in ``z``.
    """
    num = [as_gq(a) for a in num_params]
    den = [as_gq(b) for b in den_params]
    order = _termination_order(num)
    if order is None:
        raise HypergeometricError("series does not terminate: no nonpositive integer numerator parameter")
    zz = ONE if z is None else as_gq(z)
    terms = [ONE]
    t = ONE
    for k in range(order):
        ratio_num = ONE
        for a in num:
            ratio_num = ratio_num * (a + k)
        ratio_den = GQ(k + 1)
        for b in den:
            if not (b + k):
                raise HypergeometricError(f"denominator parameter {b} hits a pole at term {k + 1}")
            ratio_den = ratio_den * (b + k)
        t = t * ratio_num / ratio_den * zz
        terms.append(t)
    return terms


def hyp_eval(num_params, den_params, z, mode: str = "exact"):
    """Generalized hypergeometric series ``pFq(num; den; z)``.

    ``mode="exact"`` sums a terminating series exactly and returns a
    :class:`GQ`. ``mode="numeric"`` returns a :class:`PartialSum` computed in
    complex floating point with a truncation bound.
    """
    if mode == "exact":
        acc = ZERO
        for t in hyp_terms(num_params, den_params, z):
            acc = acc + t
        return acc
    if mode == "numeric":
        return hyp_numeric(num_params, den_params, z)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class PartialSum:
    value: complex
    terms: int
    truncation_bound: float


def hyp_numeric(num_params, den_params, z, tol: float = 1e-15, max_terms: int = 100000) -> PartialSum:
    """Partial sum of ``pFq`` in double precision.

    The bound is the geometric tail estimate ``|t_K| r / (1 - r)`` where ``r``
    bounds all later term ratios; it is only issued once the ratios are
    monotonically approaching their limit.
    """
    num = [complex(a) for a in num_params]
    den = [complex(b) for b in den_params]
    z = complex(z)
    p, q = len(num), len(den)
    if p > q + 1 or (p == q + 1 and abs(z) >= 1):
        raise HypergeometricError("series diverges for these parameters")
    total, term = 0j, 1 + 0j
    for k in range(max_terms):
        total += term
        r_num = z
        for a in num:
            r_num *= a + k
        r_den = k + 1
        for b in den:
            if b + k == 0:
                raise HypergeometricError(f"denominator parameter {b} hits a pole at term {k + 1}")
            r_den *= b + k
        nxt = term * r_num / r_den
        if nxt == 0:
            return PartialSum(total, k + 1, 0.0)
        # past every parameter the ratio decreases to its limit
        scale = max([abs(x) for x in num + den] + [1.0])
        if k > 2 * scale + 2:
            r = abs(r_num / r_den)
            limit = abs(z) if p == q + 1 else 0.0
            r_bound = max(r, limit)
            if r_bound < 1:
                bound = abs(nxt) / (1 - r_bound)
                if bound <= tol * max(abs(total), 1e-300):
                    return PartialSum(total + nxt, k + 2, bound)
        term = nxt
    raise HypergeometricError("partial sums did not converge within max_terms")


# Lanczos approximation, g = 7, n = 9 (Numerical Recipes style coefficients).
_LANCZOS_G = 7
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)


def _is_pole(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def loggamma_numeric(z) -> complex:
    """``log Gamma(z)`` (some branch; real part is ``log|Gamma(z)|``)."""
    z = complex(z)
    if _is_pole(z):
        raise ValueError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return cmath.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - loggamma_numeric(1 - z)
    z -= 1
    x = _LANCZOS_COEFFS[0]
    for k in range(1, _LANCZOS_G + 2):
        x += _LANCZOS_COEFFS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma_numeric(z) -> complex:
    """Complex Gamma function, Lanczos approximation with reflection."""
    z = complex(z)
    if _is_pole(z):
        raise ValueError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma_numeric(1 - z))
    z -= 1
    x = _LANCZOS_COEFFS[0]
    for k in range(1, _LANCZOS_G + 2):
        x += _LANCZOS_COEFFS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * x
