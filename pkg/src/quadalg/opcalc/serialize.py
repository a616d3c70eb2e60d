"""JSON form of operators.

``{"kind": "differential"|"difference", "variable": "t", "step": "i",
"terms": [{"deriv"|"shift": k, "num": [...], "den": [...]}]}`` with
coefficient lists in increasing degree, each entry a Gaussian rational
literal string.
"""

from __future__ import annotations

import json

from .field import parse_gq
from .operators import DiffOp, ShiftOp
from .poly import Poly, RatFunc

__all__ = ["op_to_dict", "op_from_dict", "dumps", "loads", "ratfunc_to_dict"]


def ratfunc_to_dict(f: RatFunc) -> dict:
    return {"num": [str(c) for c in f.num.coeffs], "den": [str(c) for c in f.den.coeffs]}


def op_to_dict(op) -> dict:
    if isinstance(op, DiffOp):
        terms = [{"deriv": k, **ratfunc_to_dict(c)} for k, c in enumerate(op.coeffs) if c]
        return {"kind": "differential", "variable": op.var, "terms": terms}
    if isinstance(op, ShiftOp):
        terms = [{"shift": k, **ratfunc_to_dict(c)} for k, c in op.terms.items()]
        return {"kind": "difference", "variable": op.var, "step": str(op.step), "terms": terms}
    raise TypeError(f"cannot serialize {type(op).__name__}")


def _rf(term: dict) -> RatFunc:
    return RatFunc(Poly(parse_gq(c) for c in term["num"]), Poly(parse_gq(c) for c in term.get("den", ["1"])))


def op_from_dict(data: dict):
    kind = data["kind"]
    var = data.get("variable", "t")
    if kind == "differential":
        coeffs: dict[int, RatFunc] = {}
        for term in data["terms"]:
            coeffs[int(term["deriv"])] = _rf(term)
        order = max(coeffs, default=-1)
        return DiffOp([coeffs.get(k, 0) for k in range(order + 1)], var)
    if kind == "difference":
        return ShiftOp({int(t["shift"]): _rf(t) for t in data["terms"]}, parse_gq(data["step"]), var)
    raise ValueError(f"unknown operator kind {kind!r}")


def dumps(op, **kw) -> str:
    return json.dumps(op_to_dict(op), **kw)


def loads(text: str):
    return op_from_dict(json.loads(text))
