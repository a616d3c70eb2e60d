"""Quadratic-algebra relations as noncommutative polynomials, and their verification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .field import GQ, ONE, ZERO, as_gq
from .operators import DiffOp, Matrix, OperatorError, ShiftOp

__all__ = [
    "Word",
    "gens",
    "comm",
    "anti",
    "sym3",
    "Relation",
    "AlgebraSpec",
    "RelationResult",
    "VerificationReport",
    "evaluate",
    "verify_quadratic_algebra",
]


class Word:
    """Formal linear combination of words in named generators.

    ``Word`` values multiply by concatenation and add formally; scalars
    embed as multiples of the empty word.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        out: dict[tuple, GQ] = {}
        for w, c in (terms or {}).items():
            c = as_gq(c)
            if c:
                out[tuple(w)] = out.get(tuple(w), ZERO) + c
        self.terms = {w: c for w, c in out.items() if c}

    @classmethod
    def gen(cls, name: str) -> "Word":
        return cls({(name,): 1})

    @classmethod
    def const(cls, c) -> "Word":
        return cls({(): c})

    def _lift(self, other) -> "Word":
        return other if isinstance(other, Word) else Word.const(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for w, c in o.terms.items():
            out[w] = out.get(w, ZERO) + c
        return Word(out)

    __radd__ = __add__

    def __neg__(self):
        return Word({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Word):
            c = as_gq(other)
            return Word({w: v * c for w, v in self.terms.items()})
        out: dict[tuple, GQ] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, ZERO) + c1 * c2
        return Word(out)

    def __rmul__(self, other):
        c = as_gq(other)
        return Word({w: c * v for w, v in self.terms.items()})

    def __pow__(self, n: int):
        out = Word.const(1)
        for _ in range(n):
            out = out * self
        return out

    def generators(self) -> set[str]:
        return {g for w in self.terms for g in w}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})" + ("*" + "".join(w) if w else "") for w, c in self.terms.items())


def gens(*names: str):
    return tuple(Word.gen(n) for n in names)


def comm(a: Word, b: Word) -> Word:
    return a * b - b * a


def anti(a: Word, b: Word) -> Word:
    """Anticommutator ``ab + ba``."""
    return a * b + b * a


def sym3(a: Word, b: Word, c: Word) -> Word:
    """Sum of the 6 orderings of ``a, b, c``."""
    out = Word()
    for p in itertools.permutations((a, b, c)):
        out = out + p[0] * p[1] * p[2]
    return out


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: Word
    rhs: Word

    @property
    def difference(self) -> Word:
        return self.lhs - self.rhs


@dataclass
class AlgebraSpec:
    """Generators, parameter values and defining relations of an algebra."""

    name: str
    generators: tuple[str, ...]
    relations: list[Relation]
    params: dict[str, GQ] = field(default_factory=dict)

    def __post_init__(self):
        declared = set(self.generators)
        for r in self.relations:
            extra = (r.lhs.generators() | r.rhs.generators()) - declared
            if extra:
                raise ValueError(f"relation {r.name!r} uses undeclared generators {sorted(extra)}")


def evaluate(expr: Word, ops: Mapping[str, object]):
    """Evaluate a formal word combination on concrete operators."""
    first = next(iter(ops.values()))
    total = first.scalar(0)
    cache: dict[tuple, object] = {(): first.one()}

    def product(w: tuple):
        if w in cache:
            return cache[w]
        val = product(w[:-1]) * ops[w[-1]]
        cache[w] = val
        return val

    for w, c in sorted(expr.terms.items(), key=lambda kv: len(kv[0])):
        if not w:
            total = total + first.scalar(c)
        else:
            total = total + product(w) * c
    return total


@dataclass
class RelationResult:
    name: str
    residual: object
    passed: bool

    def residual_norm(self) -> str:
        return "0" if self.passed else _size(self.residual)


@dataclass
class VerificationReport:
    algebra: str
    results: list[RelationResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failing(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def __getitem__(self, name: str) -> RelationResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def _size(residual) -> str:
    if isinstance(residual, Matrix):
        m = max((abs(complex(x)) for r in residual.rows for x in r), default=0.0)
        return f"{m:.6g}"
    if isinstance(residual, DiffOp):
        return f"nonzero operator of order {residual.order}"
    if isinstance(residual, ShiftOp):
        return f"nonzero operator with shifts {residual.shifts()}"
    return "nonzero"


def verify_quadratic_algebra(ops: Mapping[str, object], spec: AlgebraSpec, window=None) -> VerificationReport:
    """Check each relation of ``spec`` on ``ops`` exactly.

    For matrix representations ``window=(lo, hi)`` restricts the residual to
    a principal submatrix (used for truncated infinite representations).
    """
    missing = set(spec.generators) - set(ops)
    if missing:
        raise ValueError(f"missing operators for generators {sorted(missing)}")
    kinds = {type(op) for op in ops.values()}
    if len(kinds) != 1:
        raise OperatorError(f"mixed operator kinds: {sorted(k.__name__ for k in kinds)}")
    first = next(iter(ops.values()))
    for op in ops.values():
        first._check(op)
    results = []
    for rel in spec.relations:
        res = evaluate(rel.difference, ops)
        if window is not None and isinstance(res, Matrix):
            res = res.window(*window)
        results.append(RelationResult(rel.name, res, res.is_zero()))
    return VerificationReport(spec.name, results)
