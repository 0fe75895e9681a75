"""Exact complex numbers with rational real and imaginary parts.

Only what the Möbius and Schottky code needs: field arithmetic, conjugation,
squared modulus and an exact square root of rationals.  Mixing with a plain
``complex`` or ``float`` drops to floating point.
"""
from fractions import Fraction
from numbers import Rational
import math


class GaussRat:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x):
        """GaussRat for exact inputs, None for anything inexact."""
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, Rational):
            return cls(x)
        if isinstance(x, str):
            return parse_gauss(x)
        return None

    def conj(self):
        return GaussRat(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def _other(self, o):
        g = GaussRat.coerce(o)
        return g if g is not None else NotImplemented

    def __add__(self, o):
        g = self._other(o)
        if g is NotImplemented:
            return complex(self) + o
        return GaussRat(self.re + g.re, self.im + g.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        g = self._other(o)
        if g is NotImplemented:
            return complex(self) * o
        return GaussRat(self.re * g.re - self.im * g.im, self.re * g.im + self.im * g.re)

    __rmul__ = __mul__

    def inverse(self):
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, o):
        g = self._other(o)
        if g is NotImplemented:
            return complex(self) / o
        return self * g.inverse()

    def __rtruediv__(self, o):
        g = self._other(o)
        if g is NotImplemented:
            return o / complex(self)
        return g * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return complex(self) ** n
        out, base = GaussRat(1), self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, o):
        g = GaussRat.coerce(o)
        if g is None:
            return complex(self) == o
        return self.re == g.re and self.im == g.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return "GaussRat({}, {})".format(self.re, self.im)

    def __str__(self):
        return format_gauss(self)


def exact_sqrt(q):
    """Square root of a non-negative rational if it is rational, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _fmt(q):
    return str(q.numerator) if q.denominator == 1 else "{}/{}".format(q.numerator, q.denominator)


def format_gauss(z):
    if not z.im:
        return _fmt(z.re)
    im = "" if abs(z.im) == 1 else _fmt(abs(z.im))
    if not z.re:
        return ("-" if z.im < 0 else "") + im + "i"
    return "{}{}{}i".format(_fmt(z.re), "-" if z.im < 0 else "+", im)


def parse_gauss(s):
    """Parse '3/2', '-i', '1+2i', '1/2-3/4i' into a GaussRat."""
    t = s.replace(" ", "").replace("j", "i")
    if not t.endswith("i"):
        return GaussRat(Fraction(t))
    body = t[:-1]
    # split at the last sign that is not the leading one
    k = max(body.rfind("+", 1), body.rfind("-", 1))
    re, im = (body[:k], body[k:]) if k > 0 else ("0", body)
    if im in ("", "+"):
        im = "1"
    elif im == "-":
        im = "-1"
    return GaussRat(Fraction(re), Fraction(im))


def as_number(z):
    """Exact GaussRat when possible, else Python complex."""
    g = GaussRat.coerce(z)
    if g is not None:
        return g
    z = complex(z)
    if z.real.is_integer() and z.imag.is_integer():
        return GaussRat(int(z.real), int(z.imag))
    return z
