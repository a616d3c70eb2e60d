"""Exact solution for unknown lower-order coefficients of an operator skeleton.

An operator depending polynomially on unknown constants ``u_k`` is stored as
a map from monomials in ``u`` to exact operators. Evaluating the algebra
relations on such objects gives residuals that are polynomial in ``u``; every
coefficient of every operator slot must vanish, which is a polynomial
system over the Gaussian rationals, solved with sympy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

import sympy as sp

from ..opcalc import GQ, DiffOp, Matrix, Poly, RatFunc, ShiftOp, as_gq, verify_quadratic_algebra
from ..opcalc.algebra import AlgebraSpec, evaluate
from .phase import to_sympy

__all__ = [
    "UOp",
    "Unknown",
    "Skeleton",
    "Calibration",
    "InconsistentSystem",
    "calibrate_corrections",
]


class InconsistentSystem(ValueError):
    """The correction equations have no (exact Gaussian-rational) solution."""

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


def _mono_mul(a: tuple, b: tuple) -> tuple:
    out = dict(a)
    for k, e in b:
        out[k] = out.get(k, 0) + e
    return tuple(sorted(out.items()))


class UOp:
    """Operator-valued polynomial in the unknowns, ``{monomial: operator}``."""

    __slots__ = ("terms", "proto")

    def __init__(self, terms: Mapping[tuple, object], proto):
        self.proto = proto
        self.terms = {m: op for m, op in terms.items() if not op.is_zero()}

    @classmethod
    def lift(cls, op) -> "UOp":
        return cls({(): op}, op)

    @classmethod
    def unknown(cls, index: int, op) -> "UOp":
        return cls({((index, 1),): op}, op)

    def one(self) -> "UOp":
        return UOp({(): self.proto.one()}, self.proto)

    def scalar(self, c) -> "UOp":
        return UOp({(): self.proto.scalar(c)}, self.proto)

    def _coerce(self, other) -> "UOp":
        if isinstance(other, UOp):
            return other
        if isinstance(other, (DiffOp, ShiftOp, Matrix)):
            return UOp.lift(other)
        return self.scalar(other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for m, op in o.terms.items():
            out[m] = out[m] + op if m in out else op
        return UOp(out, self.proto)

    __radd__ = __add__

    def __neg__(self):
        return UOp({m: op * (-1) for m, op in self.terms.items()}, self.proto)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (UOp, DiffOp, ShiftOp, Matrix)):
            c = as_gq(other)
            return UOp({m: op * c for m, op in self.terms.items()}, self.proto)
        o = self._coerce(other)
        out: dict = {}
        for m1, a in self.terms.items():
            for m2, b in o.terms.items():
                m = _mono_mul(m1, m2)
                p = a * b
                out[m] = out[m] + p if m in out else p
        return UOp(out, self.proto)

    def __rmul__(self, other):
        if isinstance(other, (DiffOp, ShiftOp, Matrix)):
            return UOp.lift(other) * self
        c = as_gq(other)
        return UOp({m: c * op for m, op in self.terms.items()}, self.proto)

    def is_zero(self) -> bool:
        return not self.terms

    def substitute(self, values: Mapping[int, GQ]):
        """Exact operator after plugging in unknown values."""
        total = self.proto.scalar(0)
        for m, op in self.terms.items():
            c = GQ(1)
            for k, e in m:
                c = c * values[k] ** e
            total = total + op * c
        return total


@dataclass(frozen=True)
class Unknown:
    name: str
    target: str  # skeleton entry the correction is added to
    basis: object  # operator multiplied by the unknown


@dataclass
class Skeleton:
    """Leading operators plus unknown corrections.

    ``assemble`` maps the corrected skeleton entries to the generators named
    in the algebra (identity when the entries are the generators).
    """

    leading: dict
    unknowns: list[Unknown]
    assemble: Callable[[dict], dict] | None = None


@dataclass
class Calibration:
    ops: dict
    values: dict  # unknown name -> GQ
    free: list  # unknown names left free (gauge family), set to 0 in ops
    alternatives: list = field(default_factory=list)  # other exact solutions
    equations: int = 0

    def corrections(self) -> dict:
        return {k: str(v) for k, v in self.values.items()}


def _slots(op) -> dict:
    if isinstance(op, DiffOp):
        return {("d", k): c for k, c in enumerate(op.coeffs)}
    if isinstance(op, ShiftOp):
        return {("T", k): op[k] for k in op.shifts()}
    if isinstance(op, Matrix):
        return {("m", i, j): RatFunc(Poly.const(x)) for i, r in enumerate(op.rows) for j, x in enumerate(r)}
    raise TypeError(f"unsupported operator {type(op).__name__}")


def _lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(a.gcd(b)).monic()


def _equations(res: UOp, syms) -> list:
    per_slot: dict = {}
    for mono, op in res.terms.items():
        for slot, rf in _slots(op).items():
            rf = rf if isinstance(rf, RatFunc) else RatFunc(Poly.const(rf))
            if rf:
                per_slot.setdefault(slot, []).append((mono, rf))
    eqs = []
    for entries in per_slot.values():
        den = Poly.const(1)
        for _, rf in entries:
            den = _lcm(den, rf.den)
        acc: dict = {}
        for mono, rf in entries:
            num = rf.num * den.exact_div(rf.den)
            term = sp.Integer(1)
            for k, e in mono:
                term *= syms[k] ** e
            for j, c in enumerate(num.coeffs):
                acc[j] = acc.get(j, 0) + to_sympy(c) * term
        eqs.extend(sp.expand(v) for v in acc.values() if sp.expand(v) != 0)
    return eqs


def _to_gq(v) -> GQ | None:
    v = sp.nsimplify(v)
    re, im = sp.re(v), sp.im(v)
    if not (re.is_Rational and im.is_Rational):
        return None
    return GQ(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _norm(values: dict) -> float:
    return sum(abs(complex(v)) for v in values.values())


def calibrate_corrections(skeleton: Skeleton, spec: AlgebraSpec) -> Calibration:
    """Solve for the unknown corrections so that every relation of ``spec`` holds exactly.

    Among several exact solutions the one with smallest total magnitude is
    returned (others in ``alternatives``); unknowns left undetermined form a
    gauge family and are set to zero.
    """
    syms = [sp.Symbol(u.name) for u in skeleton.unknowns]
    entries = {name: UOp.lift(op) for name, op in skeleton.leading.items()}
    for k, u in enumerate(skeleton.unknowns):
        if u.target not in entries:
            raise ValueError(f"unknown {u.name!r} targets missing entry {u.target!r}")
        entries[u.target] = entries[u.target] + UOp.unknown(k, u.basis)
    gens = skeleton.assemble(entries) if skeleton.assemble else entries
    eqs = []
    for rel in spec.relations:
        eqs.extend(_equations(evaluate(rel.difference, gens), syms))
    names = [u.name for u in skeleton.unknowns]
    if not eqs:
        values = {n: GQ(0) for n in names}
        return Calibration(_substitute(gens, values, names), values, [], [], 0)
    if not syms:
        raise InconsistentSystem("leading operators fail the relations and there are no unknowns", eqs[:3])
    sols = sp.solve(eqs, syms, dict=True)
    exact = []
    for sol in sols:
        free = [str(s) for s in syms if s not in sol or sol[s].free_symbols]
        zero = {sp.Symbol(n): 0 for n in free}
        vals = {}
        for s in syms:
            v = sol.get(s, 0)
            v = v.subs(zero) if hasattr(v, "subs") else v
            q = _to_gq(v)
            if q is None:
                break
            vals[str(s)] = q
        else:
            exact.append((vals, free))
    if not exact:
        basis = sp.groebner(eqs, *syms) if len(eqs) < 400 else None
        detail = "no solution" if not sols else "only irrational solutions"
        raise InconsistentSystem(
            f"correction system inconsistent ({detail}); reduced system: {list(basis)[:3] if basis is not None else eqs[:3]}",
            eqs[:3],
        )
    exact.sort(key=lambda vf: (len(vf[1]), _norm(vf[0])))
    values, free = exact[0]
    ops = _substitute(gens, values, names)
    check = verify_quadratic_algebra(ops, spec)
    if not check.passed:
        raise InconsistentSystem(f"solution does not verify: {check.failing()}")
    return Calibration(ops, values, free, [v for v, _ in exact[1:]], len(eqs))


def _substitute(gens: dict, values: dict, names: list) -> dict:
    idx = {k: values[n] for k, n in enumerate(names)}
    return {name: (u.substitute(idx) if isinstance(u, UOp) else u) for name, u in gens.items()}
