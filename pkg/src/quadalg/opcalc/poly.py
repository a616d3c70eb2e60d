"""Univariate polynomials and rational functions over the Gaussian rationals."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .field import GQ, ONE, ZERO, as_gq

__all__ = ["Poly", "RatFunc", "ratfunc_normalize", "T"]


def _strip(coeffs: Sequence[GQ]) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Dense polynomial; ``coeffs[k]`` multiplies ``t**k``.

    The highest stored coefficient is nonzero; the zero polynomial has no
    coefficients.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([as_gq(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = _strip(coeffs)
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        return cls._raw((as_gq(c),))

    @classmethod
    def monomial(cls, n: int, c=1) -> "Poly":
        return cls._raw((ZERO,) * n + (as_gq(c),))

    @classmethod
    def from_roots(cls, roots, lead=1) -> "Poly":
        p = cls.const(lead)
        for r in roots:
            p = p * cls._raw((-as_gq(r), ONE))
        return p

    # -- structure --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self) -> GQ:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> GQ:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        o = as_gq(other, strict=False)
        if o is None:
            return NotImplemented
        return self.coeffs == _strip((o,))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        o = as_gq(other, strict=False)
        return None if o is None else Poly._raw((o,))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly._raw(tuple(x + b[k] for k, x in enumerate(a[: len(b)])) + a[len(b):])

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly._raw(())
            out = [ZERO] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if not x:
                    continue
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
            return Poly._raw(tuple(out))
        o = as_gq(other, strict=False)
        if o is None:
            return NotImplemented
        if not o:
            return Poly._raw(())
        return Poly._raw(tuple(c * o for c in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = other.lc().inverse()
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            f = c * inv
            quot[k - dq] = f
            for j, y in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - f * y
        return Poly._raw(tuple(quot)), Poly._raw(tuple(rem[:dq]) if dq > 0 else ())

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> "Poly":
        if not self:
            return self
        inv = self.lc().inverse()
        return Poly._raw(tuple(c * inv for c in self.coeffs))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor (zero if both are zero)."""
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    # -- calculus / substitution -------------------------------------------

    def derivative(self) -> "Poly":
        return Poly._raw(tuple(c * k for k, c in enumerate(self.coeffs) if k))

    def shift(self, h) -> "Poly":
        """``p(t + h)``."""
        h = as_gq(h)
        if not h or self.degree < 1:
            return self
        return _taylor_shift(self, h)

    def scale(self, c) -> "Poly":
        """``p(c*t)``."""
        c = as_gq(c)
        out, pw = [], ONE
        for k in self.coeffs:
            out.append(k * pw)
            pw = pw * c
        return Poly._raw(tuple(out))

    def compose(self, q: "Poly") -> "Poly":
        """``p(q(t))`` by Horner's rule."""
        out = Poly._raw(())
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def __call__(self, x):
        if isinstance(x, complex) or isinstance(x, float):
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * x + complex(c)
            return acc
        x = as_gq(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        return format_poly(self, "t")


@lru_cache(maxsize=8192)
def _taylor_shift(p: Poly, h: GQ) -> Poly:
    c = list(p.coeffs)
    n = len(c)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            c[k] = c[k] + h * c[k + 1]
    return Poly._raw(tuple(c))


def format_poly(p: Poly, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        cs = str(c)
        if c.re and c.im:
            cs = f"({cs})"
        if k == 0:
            parts.append(cs)
        else:
            mon = var if k == 1 else f"{var}^{k}"
            parts.append(mon if c == 1 else f"-{mon}" if c == -1 else f"{cs}*{mon}")
    return " + ".join(parts).replace("+ -", "- ")


T = Poly._raw((ZERO, ONE))


class RatFunc:
    """Reduced quotient ``num/den`` with ``den`` monic and coprime to ``num``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, normalized: bool = False):
        num = _as_poly(num)
        den = Poly.const(1) if den is None else _as_poly(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not normalized:
            num, den = _reduce(num, den)
        self.num, self.den = num, den
        self._hash = None

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(Poly.const(c), normalized=True)

    @property
    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        o = _coerce_rf(other)
        if o is None:
            return NotImplemented
        return self == o

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        o = _coerce_rf(other)
        if o is None:
            return NotImplemented
        if not o:
            return self
        if not self:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if o.is_poly:
            return RatFunc(self.num + o.num * self.den, self.den, normalized=True)
        if self.is_poly:
            return RatFunc(o.num + self.num * o.den, o.den, normalized=True)
        g = self.den.gcd(o.den)
        if g.degree == 0:
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)
        d1, d2 = self.den.exact_div(g), o.den.exact_div(g)
        return RatFunc(self.num * d2 + o.num * d1, d1 * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalized=True)

    def __sub__(self, other):
        o = _coerce_rf(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_rf(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            c = as_gq(other, strict=False)
            if c is not None:
                return RatFunc(self.num * c, self.den, normalized=True) if c else RatFunc(Poly(), normalized=True)
            o = _coerce_rf(other)
            if o is None:
                return NotImplemented
            other = o
        if not self or not other:
            return RatFunc(Poly(), normalized=True)
        if self.is_poly and other.is_poly:
            return RatFunc(self.num * other.num, normalized=True)
        # cross-cancel before multiplying keeps intermediate degrees low
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = (self.num.exact_div(g1), other.den.exact_div(g1)) if g1.degree > 0 else (self.num, other.den)
        n2, d1 = (other.num.exact_div(g2), self.den.exact_div(g2)) if g2.degree > 0 else (other.num, self.den)
        num, den = n1 * n2, d1 * d2
        lc = den.lc()
        if lc != 1:
            inv = lc.inverse()
            num, den = num * inv, den * inv
        return RatFunc(num, den, normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce_rf(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_rf(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, normalized=True)

    def derivative(self) -> "RatFunc":
        if self.is_poly:
            return RatFunc(self.num.derivative(), self.den, normalized=True)
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)

    def shift(self, h) -> "RatFunc":
        """``f(t + h)``; shifting preserves reducedness and monicity."""
        return RatFunc(self.num.shift(h), self.den.shift(h), normalized=True)

    def scale(self, c) -> "RatFunc":
        """``f(c*t)``."""
        return RatFunc(self.num.scale(c), self.den.scale(c))

    def __call__(self, x):
        d = self.den(x)
        if not isinstance(d, complex) and not d:
            raise ZeroDivisionError(f"pole of rational function at {x}")
        return self.num(x) / d

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.is_poly:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (list, tuple)):
        return Poly(x)
    return Poly.const(x)


def _coerce_rf(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x, normalized=True)
    c = as_gq(x, strict=False)
    return None if c is None else RatFunc.const(c)


def _reduce(num: Poly, den: Poly):
    if not num:
        return Poly(), Poly.const(1)
    if den.degree > 0 and num.degree >= 0:
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
    lc = den.lc()
    if lc != 1:
        inv = lc.inverse()
        num, den = num * inv, den * inv
    return num, den


def ratfunc_normalize(f: RatFunc) -> RatFunc:
    """Return ``f`` reduced to lowest terms with a monic denominator."""
    return RatFunc(f.num, f.den)
