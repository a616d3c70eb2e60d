"""Exact scalar, polynomial, hypergeometric and operator arithmetic."""

from .algebra import (
    AlgebraSpec,
    Relation,
    VerificationReport,
    Word,
    anti,
    comm,
    evaluate,
    gens,
    sym3,
    verify_quadratic_algebra,
)
from .field import GQ, I, ONE, ZERO, GaussianRational, as_gq, gq_sqrt, parse_gq, rational_sqrt
from .operators import (
    DiffOp,
    LeakError,
    Matrix,
    OperatorError,
    ShiftOp,
    matrix_on_monomials,
    op_apply,
    op_commutator,
    op_compose,
)
from .poly import T, Poly, RatFunc, ratfunc_normalize
from .special import (
    HypergeometricError,
    gamma_numeric,
    hyp_eval,
    hyp_numeric,
    hyp_terms,
    loggamma_numeric,
    pochhammer,
)
from .transforms import (
    TrigPoly,
    conjugate_and_substitute,
    gauge_conjugate,
    gauge_shift,
    laurent_to_ratfunc,
    substitute_scale,
)
from .random_params import random_rational, random_rationals

__all__ = [name for name in dir() if not name.startswith("_")]
