"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussianRational", "GQ", "I", "ZERO", "ONE", "as_gq", "parse_gq", "rational_sqrt", "gq_sqrt"]


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Rational):
        return mpq(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """``re + im*i`` with both parts exact rationals.

    Instances are immutable and hashable. Arithmetic accepts ints,
    ``fractions.Fraction`` and ``gmpy2.mpq`` on either side.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _make(cls, re: mpq, im: mpq) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- predicates -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    def is_nonpositive_integer(self) -> bool:
        return self.is_integer() and self.re <= 0

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = as_gq(other, strict=False)
        if o is None:
            return NotImplemented
        return GaussianRational._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_gq(other, strict=False)
        if o is None:
            return NotImplemented
        return GaussianRational._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = as_gq(other, strict=False)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = as_gq(other, strict=False)
        if o is None:
            return NotImplemented
        if not o.im:
            return GaussianRational._make(self.re * o.re, self.im * o.re)
        if not self.im:
            return GaussianRational._make(self.re * o.re, self.re * o.im)
        return GaussianRational._make(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_gq(other, strict=False)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = as_gq(other, strict=False)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational._make(self.re / n, -self.im / n)

    def conj(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def norm(self) -> mpq:
        """Squared modulus ``re**2 + im**2`` (exact)."""
        return self.re * self.re + self.im * self.im

    # -- comparisons / conversion ------------------------------------------

    def __eq__(self, other):
        o = as_gq(other, strict=False)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im:
            raise TypeError("cannot convert non-real Gaussian rational to float")
        return float(self.re)

    def real_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return Fraction(int(self.re.numerator), int(self.re.denominator))

    def __repr__(self):
        return f"GQ({str(self)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        im = _imag_str(self.im)
        sign = "" if im.startswith("-") else "+"
        return f"{self.re}{sign}{im}"


def _imag_str(v: mpq) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v} i"


GQ = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def as_gq(x, strict: bool = True):
    """Coerce ints, rationals, literal strings to :class:`GaussianRational`."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, mpq, Fraction)) and not isinstance(x, bool):
        return GaussianRational._make(_q(x), mpq(0))
    if isinstance(x, str):
        return parse_gq(x)
    if isinstance(x, Rational):
        return GaussianRational._make(_q(x), mpq(0))
    if strict:
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
    return None


_RAT = r"(?:\d+(?:/\d+)?)"
_TERM = re.compile(rf"\s*([+-]?)\s*({_RAT})?\s*(\*?\s*i)?\s*")


def parse_gq(text: str) -> GaussianRational:
    """Parse ``"p/q"``, ``"p/q+r/s i"``, ``"-i"``, ``"3/2i"`` and the like.

    Raises ``ValueError`` on malformed input.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty Gaussian rational literal")
    re_part, im_part = mpq(0), mpq(0)
    pos = 0
    nterms = 0
    seen_re = seen_im = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"malformed Gaussian rational literal: {text!r}")
        sign, mag, imag = m.groups()
        if mag is None and imag is None:
            raise ValueError(f"malformed Gaussian rational literal: {text!r}")
        if nterms and not sign:
            raise ValueError(f"malformed Gaussian rational literal: {text!r}")
        value = mpq(mag) if mag is not None else mpq(1)
        if value.denominator == 0:
            raise ValueError(f"zero denominator in {text!r}")
        if sign == "-":
            value = -value
        if imag:
            if seen_im:
                raise ValueError(f"duplicate imaginary part in {text!r}")
            im_part, seen_im = value, True
        else:
            if seen_re:
                raise ValueError(f"duplicate real part in {text!r}")
            re_part, seen_re = value, True
        nterms += 1
        pos = m.end()
    return GaussianRational._make(re_part, im_part)


def rational_sqrt(x) -> mpq | None:
    """Exact square root of a nonnegative rational, or ``None``."""
    x = _q(x)
    if x < 0:
        return None
    from gmpy2 import is_square, isqrt

    n, d = x.numerator, x.denominator
    if not (is_square(n) and is_square(d)):
        return None
    return mpq(isqrt(n), isqrt(d))


def gq_sqrt(z) -> GaussianRational | None:
    """A square root of ``z`` inside the Gaussian rationals, or ``None``.

    Returns the root with positive real part (or nonnegative imaginary part
    when the real part vanishes).
    """
    z = as_gq(z)
    if not z:
        return ZERO
    modulus = rational_sqrt(z.norm())
    if modulus is None:
        return None
    u = rational_sqrt((z.re + modulus) / 2)
    if u is None:
        return None
    if u:
        return GaussianRational._make(u, z.im / (2 * u))
    v = rational_sqrt(-z.re)
    if v is None:
        return None
    return GaussianRational._make(mpq(0), v)
