"""Exact scalars: rationals for the real field, Gaussian rationals for the complex one."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

REAL = "real"
COMPLEX = "complex"
FIELDS = (REAL, COMPLEX)


class FieldError(ValueError):
    """Raised when values from different field modes are mixed."""


class QQi:
    """A Gaussian rational ``re + im*i`` with ``im != 0``.

    Use :func:`gaussian` to build values; it collapses purely real results
    back to :class:`~fractions.Fraction` so the two types never overlap.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def _coerce(self, other):
        if isinstance(other, QQi):
            return other.re, other.im
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gaussian(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gaussian(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gaussian(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, d = o
        n = c * c + d * d
        if n == 0:
            raise ZeroDivisionError("division by zero")
        a, b = self.re, self.im
        return gaussian((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _div_real_by(o[0], self)

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = Fraction(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self):
        return QQi(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        return False

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"


def _div_real_by(r, z):
    n = z.re * z.re + z.im * z.im
    return gaussian(r * z.re / n, -r * z.im / n)


def gaussian(re, im=0):
    """Return ``re + im*i`` as a Fraction when the imaginary part vanishes."""
    im = Fraction(im)
    if im == 0:
        return Fraction(re)
    return QQi(re, im)


I = QQi(0, 1)


def to_scalar(value, field=REAL):
    """Coerce ``value`` into the canonical scalar type of ``field``."""
    if isinstance(value, QQi):
        if field != COMPLEX:
            raise FieldError("complex value in real field mode")
        return value
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def is_real(c) -> bool:
    return not isinstance(c, QQi)


def real_part(c) -> Fraction:
    return c.re if isinstance(c, QQi) else Fraction(c)


def imag_part(c) -> Fraction:
    return c.im if isinstance(c, QQi) else Fraction(0)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(c) -> str:
    """Canonical text for a scalar, readable by the expression parser."""
    if isinstance(c, QQi):
        im = c.im
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{format_rational(im)}*i"
        if c.re == 0:
            return ims
        sign = " - " if im < 0 else " + "
        ims_abs = ims[1:] if ims.startswith("-") else ims
        return f"({format_rational(c.re)}{sign}{ims_abs})"
    return format_rational(c)


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar` for the plain forms used in JSON payloads."""
    text = text.strip()
    if "i" not in text:
        return Fraction(text)
    from .parser import parse_poly  # local: parser depends on poly, which depends on us

    p = parse_poly(text, (), field=COMPLEX)
    if not p.terms:
        return Fraction(0)
    if len(p.terms) != 1 or () not in p.terms:
        raise ValueError(f"not a scalar: {text!r}")
    return p.terms[()]


def rational_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or ``None`` if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def field_sqrt(c, field=REAL):
    """Square root of ``c`` inside the exact field, or ``None`` if it leaves it."""
    if isinstance(c, QQi):
        # (x + iy)^2 = a + bi, x^2 = (a + |c|)/2
        a, b = c.re, c.im
        modulus = rational_sqrt(a * a + b * b)
        if modulus is None:
            return None
        x = rational_sqrt((a + modulus) / 2)
        if x is None or x == 0:
            return None
        y = b / (2 * x)
        return gaussian(x, y)
    c = Fraction(c)
    if c >= 0:
        return rational_sqrt(c)
    if field != COMPLEX:
        return None
    r = rational_sqrt(-c)
    return None if r is None else gaussian(0, r)
