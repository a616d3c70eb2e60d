"""Two-variable classical models of S3 (models I, II, III) and S9, and their numeric verification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

import sympy as sp

from ..opcalc import as_gq
from ..report import Check, Report
from .phase import BETA, PhaseExpr, const, cos, param, poisson_bracket, sin, sqrt, var

__all__ = [
    "ClassicalRelation",
    "ClassicalModel",
    "SYSTEMS",
    "classical_model",
    "s3_classical_relations",
    "s3_horospherical_relations",
    "s9_classical_relations",
    "sample_points",
    "relation_residual",
    "verify_poisson_numeric",
    "canonical_shift",
    "NoAdmissiblePoints",
]

SYSTEMS = ("S3-I", "S3-II", "S3-III", "S9")
MARGIN = 1e-6
IMAG = PhaseExpr(sp.I)


class NoAdmissiblePoints(RuntimeError):
    pass


@dataclass(frozen=True)
class ClassicalRelation:
    name: str
    lhs: PhaseExpr
    rhs: PhaseExpr


@dataclass
class ClassicalModel:
    system: str
    exprs: dict
    params: dict
    domain: Callable[[float, float], bool]
    relations: list = field(default_factory=list)

    def __getitem__(self, name: str) -> PhaseExpr:
        return self.exprs[name]


def _pb(f, g):
    return poisson_bracket(f, g)


def s3_classical_relations(X, L1, L2, H=None, alpha=None) -> list[ClassicalRelation]:
    """Structure relations and Casimir of classical S3 in the basis ``X, L1, L2``."""
    H = param("E") if H is None else H
    a = param("alpha") if alpha is None else alpha
    return [
        ClassicalRelation("{X,L1}=-2L2", _pb(X, L1), -2 * L2),
        ClassicalRelation("{X,L2}=2L1-H+X^2+alpha", _pb(X, L2), 2 * L1 - H + X * X + a),
        ClassicalRelation("{L1,L2}=-2(L1+alpha)X", _pb(L1, L2), -2 * (L1 + a) * X),
        ClassicalRelation(
            "casimir",
            L1 * L1 + L2 * L2 - L1 * H + L1 * X * X + a * X * X + a * L1,
            const(0),
        ),
    ]


def s3_horospherical_relations(S, X, K, H=None, alpha=None) -> list[ClassicalRelation]:
    """Relations in the basis ``S = 2(L1 - i L2) - H + X^2``, ``K = L1 + i L2``, ``X``."""
    H = param("E") if H is None else H
    a = param("alpha") if alpha is None else alpha
    i = IMAG
    return [
        ClassicalRelation("{S,X}=2i(S+alpha)", _pb(S, X), 2 * i * (S + a)),
        ClassicalRelation("{S,K}=-2iX(S-2X^2+2H+3alpha)", _pb(S, K), -2 * i * X * (S - 2 * X * X + 2 * H + 3 * a)),
        ClassicalRelation("{K,X}=-i(X^2+2K-H+alpha)", _pb(K, X), -i * (X * X + 2 * K - H + a)),
        ClassicalRelation(
            "casimir",
            -2 * S * K - S * X * X + X**4 + H * S - 2 * X * X * H + H * H - a * (2 * K + S + 3 * X * X + H),
            const(0),
        ),
    ]


def s9_classical_relations(L1, L2, R, H=None) -> list[ClassicalRelation]:
    H = param("E") if H is None else H
    a1, a2, a3 = param("a1"), param("a2"), param("a3")
    Hs = H + a1 + a2 + a3
    return [
        ClassicalRelation("{L1,L2}=R", _pb(L1, L2), R),
        ClassicalRelation(
            "{L1,R}",
            _pb(L1, R),
            8 * L1 * Hs - 8 * L1 * L1 - 16 * L1 * L2 - 16 * a2 * L2 + 16 * a3 * (Hs - L1 - L2),
        ),
        ClassicalRelation(
            "{L2,R}",
            _pb(L2, R),
            -8 * L2 * Hs + 8 * L2 * L2 + 16 * L1 * L2 + 16 * a1 * L1 - 16 * a3 * (Hs - L1 - L2),
        ),
        ClassicalRelation(
            "R^2",
            R * R
            - 16 * L1 * L2 * Hs
            + 16 * L1 * L1 * L2
            + 16 * L1 * L2 * L2
            + 16 * a1 * L1 * L1
            + 16 * a2 * L2 * L2
            + 16 * a3 * Hs * Hs
            - 32 * a3 * Hs * (L1 + L2)
            + 16 * a3 * L1 * L1
            + 32 * a3 * L1 * L2
            + 16 * a3 * L2 * L2
            - 64 * a1 * a2 * a3,
            const(0),
        ),
    ]


def _real_positive(f: PhaseExpr, params) -> Callable[[float, float], bool]:
    def ok(c, beta):
        v = f(c, beta, params)
        return abs(v.imag) < 1e-12 and v.real > MARGIN

    return ok


def _nonzero(f: PhaseExpr, params) -> Callable[[float, float], bool]:
    return lambda c, beta: abs(f(c, beta, params)) > MARGIN


def classical_model(system: str, params: dict) -> ClassicalModel:
    """Classical two-variable model with its relations and admissible-domain predicate.

    ``params``: ``E``, ``alpha`` for the S3 models; ``a1``, ``a2``, ``a3``, ``E`` for S9.
    """
    params = {k: as_gq(v) for k, v in params.items()}
    c, beta = var("c"), var("beta")
    E, alpha = param("E"), param("alpha")
    if system == "S3-I":
        disc = c**4 - 2 * c * c * (E + alpha) + (E - alpha) ** 2
        root = sqrt(disc)
        X = c
        L1 = (E - c * c - alpha) / 2 + root * sin(2 * beta) / 2
        L2 = root * cos(2 * beta) / 2
        exprs = {"X": X, "L1": L1, "L2": L2}
        domain = _real_positive(disc, params)
        relations = s3_classical_relations(X, L1, L2)
    elif system == "S3-II":
        rad = c * (E - c - alpha)
        w = sqrt(c + alpha)
        L1 = c
        L2 = sqrt(rad) * sin(2 * w * beta)
        X = sqrt(rad / (c + alpha)) * cos(2 * w * beta)
        exprs = {"X": X, "L1": L1, "L2": L2}
        pos_rad, pos_w = _real_positive(rad, params), _real_positive(c + alpha, params)
        domain = lambda u, v: pos_rad(u, v) and pos_w(u, v)
        relations = s3_classical_relations(X, L1, L2)
    elif system == "S3-III":
        i = IMAG
        ca = c + alpha
        S = c
        X = -2 * i * ca * beta
        K = 8 * ca**3 * beta**4 + 2 * ca * (3 * alpha + c + 2 * E) * beta**2 - (c + E) * (alpha - E) / (2 * ca)
        exprs = {"S": S, "X": X, "K": K}
        domain = _nonzero(ca, params)
        relations = s3_horospherical_relations(S, X, K)
    elif system == "S9":
        a1, a2, a3 = param("a1"), param("a2"), param("a3")
        s = E + a1 + a2 + a3
        first = 4 * a1 * a2 + 4 * a1 * a3 + 2 * c * s + 4 * c * a1 - s * s - c * c
        second = 4 * a2 * a3 - c * c
        den = a2 + a3 + c
        L1 = c
        L2 = (
            (a1 + 2 * a2 + E - c) / 2
            - (a2 - a3) * (a1 + 2 * a2 + 2 * a3 + E) / (2 * den)
            + sqrt(first * second) / (2 * den) * cos(4 * beta * sqrt(den))
        )
        R = poisson_bracket(L1, L2)
        exprs = {"L1": L1, "L2": L2, "R": R}
        pos_rad, pos_den = _real_positive(first * second, params), _real_positive(den, params)
        domain = lambda u, v: pos_rad(u, v) and pos_den(u, v)
        relations = s9_classical_relations(L1, L2, R)
    else:
        raise ValueError(f"unknown system {system!r}; expected one of {SYSTEMS}")
    return ClassicalModel(system, exprs, params, domain, relations)


def sample_points(model: ClassicalModel, n: int, seed: int = 0, box: float = 2.0, max_tries: int | None = None):
    """Deterministic admissible points ``(c, beta)`` in ``[-box, box]^2``."""
    if n < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    max_tries = max_tries or 200 * n
    pts = []
    for _ in range(max_tries):
        c, b = rng.uniform(-box, box), rng.uniform(-box, box)
        try:
            if model.domain(c, b):
                pts.append((c, b))
        except (ZeroDivisionError, ValueError, OverflowError):
            continue
        if len(pts) == n:
            return pts
    raise NoAdmissiblePoints(f"only {len(pts)} admissible points after {max_tries} tries")


def relation_residual(rel: ClassicalRelation, c, beta, params) -> float:
    """``|lhs - rhs|`` divided by the largest summand magnitude."""
    lhs, rhs = rel.lhs(c, beta, params), rel.rhs(c, beta, params)
    scale = max([abs(t(c, beta, params)) for t in rel.lhs.terms() + rel.rhs.terms()] + [1e-300])
    return abs(lhs - rhs) / scale


def verify_poisson_numeric(model: ClassicalModel, n_samples: int = 100, tol: float = 1e-9, seed: int = 0) -> Report:
    pts = sample_points(model, n_samples, seed)
    report = Report(model.system, "classical-model", dict(model.params), seed=seed)
    worst = {}
    for rel in model.relations:
        worst[rel.name] = max(relation_residual(rel, c, b, model.params) for c, b in pts)
        report.add(Check.of(rel.name, worst[rel.name] <= tol, worst[rel.name]))
    report.extra["points_used"] = len(pts)
    report.extra["max_residual_by_relation"] = {k: f"{v:.3e}" for k, v in worst.items()}
    return report


def canonical_shift(model: ClassicalModel, g: PhaseExpr) -> ClassicalModel:
    """Replace ``beta`` by ``beta + g(c)``; the pair stays canonical since ``g`` depends on ``c`` only.

    The relations are rebuilt from the shifted expressions (brackets
    recomputed), so verifying the result tests bracket invariance rather
    than assuming it. Domain predicates depend on ``c`` alone and carry over.
    """
    if BETA in g.expr.free_symbols:
        raise ValueError("shift function must not depend on beta")
    sub = {BETA: BETA + g.expr}
    exprs = {k: v.subs(sub) for k, v in model.exprs.items()}
    if model.system in ("S3-I", "S3-II"):
        relations = s3_classical_relations(exprs["X"], exprs["L1"], exprs["L2"])
    elif model.system == "S3-III":
        relations = s3_horospherical_relations(exprs["S"], exprs["X"], exprs["K"])
    else:
        exprs["R"] = poisson_bracket(exprs["L1"], exprs["L2"])
        relations = s9_classical_relations(exprs["L1"], exprs["L2"], exprs["R"])
    return ClassicalModel(model.system, exprs, model.params, model.domain, relations)
