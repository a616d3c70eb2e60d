"""Normal-form differential and shift operators with rational coefficients.

``DiffOp`` elements are ``sum_k c_k(t) D**k`` and ``ShiftOp`` elements are
``sum_k c_k(t) T**(k*s)`` with ``T**h f(t) = f(t+h)``; coefficients always sit
to the left. Both classes share the ring interface used by the verifier:
``+``, ``-``, ``*`` (composition), scalar multiplication, ``one()``,
``scalar()`` and ``is_zero()``.
"""

from __future__ import annotations

from math import comb
from typing import Mapping

from .field import GQ, ONE, ZERO, as_gq
from .poly import Poly, RatFunc

__all__ = [
    "DiffOp",
    "ShiftOp",
    "Matrix",
    "OperatorError",
    "LeakError",
    "op_compose",
    "op_commutator",
    "op_apply",
    "matrix_on_monomials",
    "coeff",
]


class OperatorError(ValueError):
    """Incompatible operators (kind, variable or shift step)."""


class LeakError(ValueError):
    """Operator does not preserve the requested polynomial subspace."""


def coeff(x) -> RatFunc:
    """Coerce scalars, polynomials and rational functions to :class:`RatFunc`."""
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x, normalized=True)
    return RatFunc.const(as_gq(x))


_ZERO_RF = RatFunc.const(0)


class DiffOp:
    """Differential operator ``sum_k coeffs[k] * (d/dt)**k``."""

    __slots__ = ("coeffs", "var")
    kind = "differential"

    def __init__(self, coeffs=(), var: str = "t"):
        cs = [coeff(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def mul(cls, f, var: str = "t") -> "DiffOp":
        """Multiplication operator by ``f``."""
        return cls([f], var)

    @classmethod
    def d(cls, var: str = "t") -> "DiffOp":
        return cls([0, 1], var)

    def one(self) -> "DiffOp":
        return DiffOp([1], self.var)

    def scalar(self, c) -> "DiffOp":
        return DiffOp([c], self.var)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "DiffOp"):
        if not isinstance(other, DiffOp):
            raise OperatorError(f"cannot combine DiffOp with {type(other).__name__}")
        if other.var != self.var:
            raise OperatorError(f"variable mismatch: {self.var} vs {other.var}")

    def _lift(self, other):
        if isinstance(other, (DiffOp, ShiftOp, Matrix)):
            self._check(other)
            return other
        return self.scalar(other)

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return DiffOp([x + b[k] for k, x in enumerate(a[: len(b)])] + list(a[len(b):]), self.var)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (DiffOp, ShiftOp, Matrix)):
            return op_compose(self, other)
        c = coeff(other)
        return DiffOp([c * x for x in self.coeffs], self.var)

    def __rmul__(self, other):
        c = coeff(other)
        return DiffOp([c * x for x in self.coeffs], self.var)

    def __pow__(self, n: int):
        out = self.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, DiffOp):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, ShiftOp):
            return False
        return self == self.scalar(other)

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __call__(self, f):
        return op_apply(self, f)

    def __repr__(self):
        return f"DiffOp({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            d = "" if k == 0 else f"D{self.var}" if k == 1 else f"D{self.var}^{k}"
            parts.append(f"[{c}]{d}")
        return " + ".join(parts)


class ShiftOp:
    """Shift operator ``sum_k terms[k] * T**(k*step)`` with ``T**h f(t) = f(t+h)``."""

    __slots__ = ("step", "terms", "var")
    kind = "difference"

    def __init__(self, terms: Mapping[int, object] | None = None, step=1, var: str = "t"):
        self.step = as_gq(step)
        if not self.step:
            raise OperatorError("shift step must be nonzero")
        clean = {}
        for k, c in (terms or {}).items():
            c = coeff(c)
            if c:
                clean[int(k)] = c
        self.terms = dict(sorted(clean.items()))
        self.var = var

    @classmethod
    def mul(cls, f, step=1, var: str = "t") -> "ShiftOp":
        return cls({0: f}, step, var)

    @classmethod
    def shift(cls, k: int = 1, step=1, var: str = "t") -> "ShiftOp":
        return cls({k: 1}, step, var)

    def one(self) -> "ShiftOp":
        return ShiftOp({0: 1}, self.step, self.var)

    def scalar(self, c) -> "ShiftOp":
        return ShiftOp({0: c}, self.step, self.var)

    def is_zero(self) -> bool:
        return not self.terms

    def shifts(self) -> list[int]:
        return list(self.terms)

    def __getitem__(self, k: int) -> RatFunc:
        return self.terms.get(k, _ZERO_RF)

    def _check(self, other):
        if not isinstance(other, ShiftOp):
            raise OperatorError(f"cannot combine ShiftOp with {type(other).__name__}")
        if other.step != self.step:
            raise OperatorError(f"shift step mismatch: {self.step} vs {other.step}")
        if other.var != self.var:
            raise OperatorError(f"variable mismatch: {self.var} vs {other.var}")

    def _lift(self, other):
        if isinstance(other, (DiffOp, ShiftOp, Matrix)):
            self._check(other)
            return other
        return self.scalar(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return ShiftOp(out, self.step, self.var)

    __radd__ = __add__

    def __neg__(self):
        return ShiftOp({k: -c for k, c in self.terms.items()}, self.step, self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (DiffOp, ShiftOp, Matrix)):
            return op_compose(self, other)
        c = coeff(other)
        return ShiftOp({k: c * x for k, x in self.terms.items()}, self.step, self.var)

    def __rmul__(self, other):
        c = coeff(other)
        return ShiftOp({k: c * x for k, x in self.terms.items()}, self.step, self.var)

    def __pow__(self, n: int):
        out = self.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ShiftOp):
            return self.step == other.step and self.var == other.var and self.terms == other.terms
        if isinstance(other, DiffOp):
            return False
        return self == self.scalar(other)

    def __hash__(self):
        return hash((self.var, self.step, tuple(self.terms.items())))

    def __call__(self, f):
        return op_apply(self, f)

    def __repr__(self):
        return f"ShiftOp(step={self.step}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"[{c}]T^{k}" if k else f"[{c}]" for k, c in self.terms.items())


def op_compose(A, B):
    """Normal form of ``A∘B`` for two operators of the same kind."""
    if isinstance(A, Matrix) or isinstance(B, Matrix):
        return A.__matmul__(B) if isinstance(A, Matrix) else NotImplemented
    if isinstance(A, DiffOp):
        A._check(B)
        return _compose_diff(A, B)
    if isinstance(A, ShiftOp):
        A._check(B)
        return _compose_shift(A, B)
    raise OperatorError(f"unsupported operator type {type(A).__name__}")


def _compose_diff(A: DiffOp, B: DiffOp) -> DiffOp:
    if not A.coeffs or not B.coeffs:
        return DiffOp([], A.var)
    out = [_ZERO_RF] * (A.order + B.order + 1)
    # derivative tables of B's coefficients, built lazily
    derivs = [[b] for b in B.coeffs]
    for j, a in enumerate(A.coeffs):
        if not a:
            continue
        for k, b in enumerate(B.coeffs):
            if not b:
                continue
            tbl = derivs[k]
            # a D^j b D^k = a sum_l C(j,l) b^(l) D^(j-l+k)
            for l in range(j + 1):
                while len(tbl) <= l:
                    tbl.append(tbl[-1].derivative())
                bl = tbl[l]
                if not bl:
                    break
                out[j - l + k] = out[j - l + k] + a * bl * comb(j, l)
    return DiffOp(out, A.var)


def _compose_shift(A: ShiftOp, B: ShiftOp) -> ShiftOp:
    out: dict[int, RatFunc] = {}
    for a_k, c in A.terms.items():
        h = A.step * a_k
        for b_k, d in B.terms.items():
            term = c * d.shift(h)
            k = a_k + b_k
            out[k] = out[k] + term if k in out else term
    return ShiftOp(out, A.step, A.var)


def op_commutator(A, B):
    """``A∘B - B∘A`` in normal form."""
    return op_compose(A, B) - op_compose(B, A)


def op_apply(A, f):
    """Exact action on a polynomial or rational function.

    Returns a :class:`Poly` when the image is polynomial, else a
    :class:`RatFunc`.
    """
    f = coeff(f)
    if isinstance(A, DiffOp):
        acc, g = _ZERO_RF, f
        for k, c in enumerate(A.coeffs):
            if k:
                g = g.derivative()
            if c:
                acc = acc + c * g
    elif isinstance(A, ShiftOp):
        acc = _ZERO_RF
        for k, c in A.terms.items():
            acc = acc + c * f.shift(A.step * k)
    else:
        raise OperatorError(f"unsupported operator type {type(A).__name__}")
    return acc.num if acc.is_poly else acc


class Matrix:
    """Small dense exact matrix over the Gaussian rationals.

    Implements the same ring interface as the operators so that algebra
    relations can be checked on matrix representations.
    """

    __slots__ = ("rows",)
    kind = "matrix"
    var = None

    def __init__(self, rows):
        self.rows = tuple(tuple(as_gq(x) for x in r) for r in rows)

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "Matrix":
        return cls([[ZERO] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries) -> "Matrix":
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def one(self) -> "Matrix":
        return Matrix.identity(self.shape[0])

    def scalar(self, c) -> "Matrix":
        c = as_gq(c)
        return Matrix.diag([c] * self.shape[0])

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise OperatorError(f"cannot combine Matrix with {type(other).__name__}")

    def _lift(self, other):
        if isinstance(other, Matrix):
            return other
        return self.scalar(other)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def __add__(self, other):
        o = self._lift(other)
        return Matrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, o.rows)])

    __radd__ = __add__

    def __neg__(self):
        return Matrix([[-x for x in r] for r in self.rows])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __matmul__(self, other):
        o = other
        n, k = self.shape
        k2, m = o.shape
        if k != k2:
            raise OperatorError(f"shape mismatch {self.shape} @ {o.shape}")
        cols = list(zip(*o.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = ZERO
                for x, y in zip(r, c):
                    if x and y:
                        acc = acc + x * y
                row.append(acc)
            out.append(row)
        return Matrix(out)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        c = as_gq(other)
        return Matrix([[x * c for x in r] for r in self.rows])

    def __rmul__(self, other):
        c = as_gq(other)
        return Matrix([[c * x for x in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def trace(self) -> GQ:
        acc = ZERO
        for i in range(min(self.shape)):
            acc = acc + self.rows[i][i]
        return acc

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def window(self, lo: int, hi: int) -> "Matrix":
        """Principal submatrix on indices ``lo..hi-1``."""
        return Matrix([r[lo:hi] for r in self.rows[lo:hi]])

    def apply(self, v):
        return [sum((x * y for x, y in zip(r, v)), ZERO) for r in self.rows]

    def __repr__(self):
        return "Matrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"


def matrix_on_monomials(A: DiffOp | ShiftOp, dim: int) -> Matrix:
    """Matrix of ``A`` on ``span{1, t, ..., t**(dim-1)}``.

    Column ``n`` holds the coefficients of ``A(t**n)``. Raises
    :class:`LeakError` naming the first basis monomial whose image leaves
    the span.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    cols = []
    for n in range(dim):
        img = op_apply(A, Poly.monomial(n))
        if isinstance(img, RatFunc):
            raise LeakError(f"image of t^{n} is not a polynomial")
        if img.degree >= dim:
            raise LeakError(f"image of t^{n} has degree {img.degree} >= {dim}")
        cols.append([img.coeff(k) for k in range(dim)])
    return Matrix([list(r) for r in zip(*cols)])
