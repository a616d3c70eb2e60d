"""Phase-space expressions in the canonical pair ``(c, beta)`` and their Poisson bracket."""

from __future__ import annotations

from functools import lru_cache

import sympy as sp

from ..opcalc import as_gq

__all__ = [
    "C",
    "BETA",
    "PARAMS",
    "PhaseExpr",
    "var",
    "const",
    "param",
    "sin",
    "cos",
    "sqrt",
    "exp",
    "atan",
    "pderiv",
    "poisson_bracket",
    "to_sympy",
]

C = sp.Symbol("c")
BETA = sp.Symbol("beta")
PARAMS = {name: sp.Symbol(name) for name in ("E", "alpha", "a1", "a2", "a3")}
_ARGS = (C, BETA) + tuple(PARAMS.values())


def to_sympy(x):
    """Exact sympy number for a Gaussian rational, int or Fraction."""
    if isinstance(x, (sp.Basic, PhaseExpr)):
        return x.expr if isinstance(x, PhaseExpr) else x
    q = as_gq(x)
    re = sp.Rational(int(q.re.numerator), int(q.re.denominator))
    im = sp.Rational(int(q.im.numerator), int(q.im.denominator))
    return re + sp.I * im


@lru_cache(maxsize=512)
def _compiled(expr: sp.Expr):
    return sp.lambdify(_ARGS, expr, modules="mpmath")


class PhaseExpr:
    """Expression tree over ``c``, ``beta``, rational constants and the named parameters."""

    __slots__ = ("expr",)

    def __init__(self, expr):
        self.expr = to_sympy(expr) if not isinstance(expr, sp.Basic) else expr

    @staticmethod
    def _lift(other):
        return other.expr if isinstance(other, PhaseExpr) else to_sympy(other)

    def __add__(self, other):
        return PhaseExpr(self.expr + self._lift(other))

    def __radd__(self, other):
        return PhaseExpr(self._lift(other) + self.expr)

    def __sub__(self, other):
        return PhaseExpr(self.expr - self._lift(other))

    def __rsub__(self, other):
        return PhaseExpr(self._lift(other) - self.expr)

    def __mul__(self, other):
        return PhaseExpr(self.expr * self._lift(other))

    def __rmul__(self, other):
        return PhaseExpr(self._lift(other) * self.expr)

    def __truediv__(self, other):
        return PhaseExpr(self.expr / self._lift(other))

    def __rtruediv__(self, other):
        return PhaseExpr(self._lift(other) / self.expr)

    def __pow__(self, n):
        return PhaseExpr(self.expr ** self._lift(n))

    def __neg__(self):
        return PhaseExpr(-self.expr)

    def subs(self, mapping) -> "PhaseExpr":
        return PhaseExpr(self.expr.subs({k: self._lift(v) for k, v in mapping.items()}))

    def bind(self, params) -> "PhaseExpr":
        """Substitute numeric parameter values (names as in ``PARAMS``)."""
        return self.subs({PARAMS[k]: v for k, v in params.items() if k in PARAMS})

    def terms(self) -> list["PhaseExpr"]:
        """Top-level summands, used for residual normalization."""
        return [PhaseExpr(t) for t in sp.Add.make_args(self.expr)]

    def __call__(self, c, beta, params=None) -> complex:
        params = params or {}
        vals = [complex(as_gq(params[k])) if k in params else 0.0 for k in PARAMS]
        return complex(_compiled(self.expr)(complex(c), complex(beta), *vals))

    def is_zero(self) -> bool:
        return sp.simplify(self.expr) == 0

    def __repr__(self):
        return f"PhaseExpr({self.expr})"

    def __str__(self):
        return str(self.expr)


def var(name: str) -> PhaseExpr:
    return PhaseExpr({"c": C, "beta": BETA}[name])


def param(name: str) -> PhaseExpr:
    return PhaseExpr(PARAMS[name])


def const(x) -> PhaseExpr:
    return PhaseExpr(to_sympy(x))


def _fn(f):
    return lambda x: PhaseExpr(f(x.expr if isinstance(x, PhaseExpr) else to_sympy(x)))


sin = _fn(sp.sin)
cos = _fn(sp.cos)
sqrt = _fn(sp.sqrt)
exp = _fn(sp.exp)
atan = _fn(sp.atan)


def pderiv(f: PhaseExpr, name: str) -> PhaseExpr:
    """Partial derivative in ``c`` or ``beta``."""
    sym = {"c": C, "beta": BETA}.get(name)
    if sym is None:
        raise ValueError(f"unknown phase variable {name!r}")
    return PhaseExpr(sp.diff(f.expr, sym))


def poisson_bracket(f: PhaseExpr, g: PhaseExpr) -> PhaseExpr:
    """``{f, g} = -f_c g_beta + f_beta g_c`` (so ``{c, beta} = -1``)."""
    return PhaseExpr(-sp.diff(f.expr, C) * sp.diff(g.expr, BETA) + sp.diff(f.expr, BETA) * sp.diff(g.expr, C))

