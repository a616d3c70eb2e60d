"""Changes of variable and gauge conjugations of operators."""

from __future__ import annotations

from typing import Mapping

from .field import GQ, I, ONE, ZERO, as_gq
from .operators import DiffOp, OperatorError, ShiftOp, coeff
from .poly import Poly, RatFunc

__all__ = [
    "TrigPoly",
    "laurent_to_ratfunc",
    "conjugate_and_substitute",
    "gauge_conjugate",
    "gauge_shift",
    "substitute_scale",
]


class TrigPoly:
    """Finite Laurent combination ``sum_k c_k exp(2ikt)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms = {int(k): as_gq(v) for k, v in (terms or {}).items() if as_gq(v)}

    @classmethod
    def const(cls, c) -> "TrigPoly":
        return cls({0: c})

    @classmethod
    def cos2(cls, c=1) -> "TrigPoly":
        """``c * cos(2t)``."""
        h = as_gq(c) / 2
        return cls({1: h, -1: h})

    @classmethod
    def sin2(cls, c=1) -> "TrigPoly":
        """``c * sin(2t)``."""
        h = as_gq(c) / (2 * I)
        return cls({1: h, -1: -h})

    @classmethod
    def exp2(cls, k: int = 1, c=1) -> "TrigPoly":
        """``c * exp(2ikt)``."""
        return cls({k: c})

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly.const(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return TrigPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TrigPoly):
            other = TrigPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TrigPoly):
            c = as_gq(other)
            return TrigPoly({k: v * c for k, v in self.terms.items()})
        out: dict[int, GQ] = {}
        for k, v in self.terms.items():
            for j, w in other.terms.items():
                out[k + j] = out.get(k + j, ZERO) + v * w
        return TrigPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TrigPoly) and self.terms == other.terms

    def __call__(self, t: complex) -> complex:
        import cmath

        return sum(complex(v) * cmath.exp(2j * k * t) for k, v in self.terms.items())

    def __repr__(self):
        return f"TrigPoly({ {k: str(v) for k, v in sorted(self.terms.items())} })"


def laurent_to_ratfunc(tp: TrigPoly) -> RatFunc:
    """Rewrite ``exp(2ikt)`` as ``tau**k``."""
    if not isinstance(tp, TrigPoly):
        raise OperatorError("coefficient is not a finite Laurent combination of exp(2ikt)")
    if not tp.terms:
        return RatFunc.const(0)
    kmin = min(min(tp.terms), 0)
    num = Poly([tp.terms.get(k + kmin, ZERO) for k in range(max(tp.terms) - kmin + 1)])
    return RatFunc(num, Poly.monomial(-kmin))


def gauge_conjugate(A: DiffOp, logderiv) -> DiffOp:
    """``rho**-1 ∘ A ∘ rho`` where ``logderiv = rho'/rho``.

    Implemented as the substitution ``D -> D + logderiv``.
    """
    w = coeff(logderiv)
    shifted = DiffOp([w, 1], A.var)
    out = DiffOp([], A.var)
    power = shifted.one()
    for k, c in enumerate(A.coeffs):
        if k:
            power = power * shifted
        if c:
            out = out + DiffOp.mul(c, A.var) * power
    return out


def conjugate_and_substitute(coeffs, gauge=0, var: str = "tau") -> DiffOp:
    """Rewrite ``sum_k coeffs[k](t) (d/dt)**k`` in ``tau = exp(2it)``.

    ``coeffs`` are :class:`TrigPoly` values. ``d/dt`` becomes
    ``2i tau d/dtau``; the result is then conjugated by ``tau**gauge``, i.e.
    ``tau**-g ∘ A ∘ tau**g``.
    """
    euler = DiffOp([0, Poly([0, 2 * I])], var)
    out = DiffOp([], var)
    power = euler.one()
    for k, c in enumerate(coeffs):
        if k:
            power = power * euler
        rf = laurent_to_ratfunc(c if isinstance(c, TrigPoly) else TrigPoly.const(c))
        if rf:
            out = out + DiffOp.mul(rf, var) * power
    g = as_gq(gauge)
    if g:
        out = gauge_conjugate(out, RatFunc(Poly.const(g), Poly.monomial(1)))
    return out


def gauge_shift(A: ShiftOp, ratio) -> ShiftOp:
    """``rho**-1 ∘ A ∘ rho`` for a shift operator.

    ``ratio(t) = rho(t + step) / rho(t)`` must be rational.
    """
    r = coeff(ratio)
    s = A.step
    out = {}
    for k, c in A.terms.items():
        factor = RatFunc.const(1)
        if k > 0:
            for j in range(k):
                factor = factor * r.shift(s * j)
        elif k < 0:
            for j in range(1, -k + 1):
                factor = factor / r.shift(-s * j)
        out[k] = c * factor
    return ShiftOp(out, s, A.var)


def substitute_scale(A, c, var: str | None = None):
    """Change variable ``t = c * tau`` in an operator.

    Coefficients ``f(t)`` become ``f(c tau)``; ``d/dt = c**-1 d/dtau``; a
    shift by ``h`` in ``t`` is a shift by ``h/c`` in ``tau``.
    """
    c = as_gq(c)
    var = var or A.var
    if isinstance(A, DiffOp):
        inv = c.inverse()
        return DiffOp([f.scale(c) * inv**k for k, f in enumerate(A.coeffs)], var)
    if isinstance(A, ShiftOp):
        return ShiftOp({k: f.scale(c) for k, f in A.terms.items()}, A.step / c, var)
    raise OperatorError(f"unsupported operator type {type(A).__name__}")
