"""
Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Everything downstream works with either kind interchangeably; the only
requirement on a scalar is field arithmetic and an exact ``== 0`` test.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational


class GaussRat:
    """An element a + b*i of Q(i), with a and b exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return GaussRat(x, 0)
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact scalars")
        return NotImplemented

    def simplify(self):
        """Collapse to a Fraction when the imaginary part vanishes."""
        if self.im == 0:
            return self.re
        return self

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        o = GaussRat.coerce(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = GaussRat.coerce(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussRat.coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re * other, self.im * other)
        o = GaussRat.coerce(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GaussRat division by zero")
            return GaussRat(self.re / other, self.im / other)
        o = GaussRat.coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        num = self * o.conjugate()
        return GaussRat(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = GaussRat.coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GaussRat(1) / self) ** (-k)
        out = GaussRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = GaussRat.coerce(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return "GaussRat(%s)" % format_scalar(self)

    __str__ = lambda self: format_scalar(self)


I = GaussRat(0, 1)


def is_gaussian(x):
    return isinstance(x, GaussRat) and x.im != 0


def real_part(x):
    return x.re if isinstance(x, GaussRat) else Fraction(x)


def imag_part(x):
    return x.im if isinstance(x, GaussRat) else Fraction(0)


def to_gauss(x):
    return x if isinstance(x, GaussRat) else GaussRat(x, 0)


def normalize(x):
    """Canonical form: Fraction if real, GaussRat otherwise."""
    if isinstance(x, GaussRat):
        return x.simplify()
    return Fraction(x)


def _fmt_frac(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def format_scalar(x):
    """Serialize as "p/q" or "p/q+r/s i" (the polynomial-literal scalar format)."""
    re_, im_ = real_part(x), imag_part(x)
    if im_ == 0:
        return _fmt_frac(re_)
    sign = "+" if im_ > 0 else "-"
    return "%s%s%s i" % (_fmt_frac(re_), sign, _fmt_frac(abs(im_)))


_GAUSS_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)?\s*i)?\s*$"
)


def parse_scalar(s):
    """Inverse of :func:`format_scalar`; also accepts bare integers and "i"."""
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    s = str(s).strip()
    if not s:
        raise ValueError("empty scalar literal")
    if "i" not in s:
        return Fraction(s)
    if s in ("i", "+i"):
        return GaussRat(0, 1)
    if s == "-i":
        return GaussRat(0, -1)
    m = _GAUSS_RE.match(s)
    if m is None:
        # pure imaginary with explicit sign-less coefficient, e.g. "3/2 i"
        m2 = re.match(r"^\s*([+-]?\d+(?:/\d+)?)\s*i\s*$", s)
        if m2 is None:
            raise ValueError("bad scalar literal %r" % s)
        return GaussRat(0, Fraction(m2.group(1)))
    re_ = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_ = Fraction(m.group("im")) if m.group("im") else Fraction(1)
    if m.group("sign") == "-":
        im_ = -im_
    return normalize(GaussRat(re_, im_))
