"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Text syntax shared by every file format::

    -3        integer
    5/7       rational, denominator positive
    1/2-3*i   Gaussian rational a+b*i / a-b*i
    -2*i, i   pure imaginary
"""

from __future__ import annotations

from fractions import Fraction
import re

__all__ = ["GaussianRational", "ZERO", "ONE", "I_UNIT", "gauss", "parse_scalar",
           "format_scalar", "parse_rational"]

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


class GaussianRational:
    """An element ``re + im*i`` of Q(i); treat instances as immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return GaussianRational._raw(a * c, _F0)
            return GaussianRational._raw(a * c, a * d)
        if not d:
            return GaussianRational._raw(a * c, b * c)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        c, d = other.re, other.im
        if not d:
            if not c:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational._raw(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational._raw((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def norm(self):
        """``|z|^2`` as a Fraction."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self):
        return not self.im

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return "GaussianRational(%s)" % format_scalar(self)

    def __str__(self):
        return format_scalar(self)


_F0 = Fraction(0)
ZERO = GaussianRational._raw(_F0, _F0)
ONE = GaussianRational._raw(Fraction(1), _F0)
I_UNIT = GaussianRational._raw(_F0, Fraction(1))


def _coerce(x):
    if isinstance(x, (int, Fraction)):
        return GaussianRational._raw(Fraction(x), _F0)
    return None


def gauss(x) -> GaussianRational:
    """Coerce ``int``, ``Fraction``, ``str`` or GaussianRational to GaussianRational."""
    if type(x) is GaussianRational:
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return GaussianRational._raw(Fraction(x), _F0)
    raise TypeError("cannot use %r as an exact scalar" % (x,))


def parse_rational(token: str) -> Fraction:
    if not _RATIONAL.match(token):
        raise ValueError("not a rational: %r" % token)
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise ValueError("zero denominator in %r" % token)
        return Fraction(int(num), int(den))
    return Fraction(int(token))


def parse_scalar(token: str) -> GaussianRational:
    """Parse one whitespace-free scalar token."""
    if not token or any(ch.isspace() for ch in token):
        raise ValueError("bad scalar token %r" % token)
    if not token.endswith("i"):
        return GaussianRational._raw(parse_rational(token), _F0)
    body = token[:-1]
    if body.endswith("*"):
        body = body[:-1]
        if not body or body[-1] in "+-":
            raise ValueError("bad scalar token %r" % token)
    elif body and body[-1] not in "+-":
        raise ValueError("imaginary coefficient needs '*': %r" % token)
    split = max(body.rfind("+"), body.rfind("-"))
    if split > 0:
        re_part, im_part = body[:split], body[split:]
    else:
        re_part, im_part = "", body
    re_val = parse_rational(re_part) if re_part else _F0
    if im_part in ("", "+"):
        im_val = Fraction(1)
    elif im_part == "-":
        im_val = Fraction(-1)
    else:
        im_val = parse_rational(im_part)
    return GaussianRational._raw(re_val, im_val)


def format_scalar(x) -> str:
    """Canonical text for a scalar; ``parse_scalar(format_scalar(x)) == x``."""
    x = gauss(x)
    if not x.im:
        return str(x.re)
    if not x.re:
        return "%s*i" % x.im
    if x.im > 0:
        return "%s+%s*i" % (x.re, x.im)
    return "%s-%s*i" % (x.re, -x.im)
