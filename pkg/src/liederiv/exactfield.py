"""Exact scalar arithmetic over Q and Q(i).

Rationals are ``fractions.Fraction`` (arbitrary-precision, always reduced,
positive denominator), Gaussian rationals are pairs of Fractions with
i**2 = -1.  Everything is immutable; equality is structural.
"""

from __future__ import annotations

import re
from fractions import Fraction

FIELD_Q = "Q"
FIELD_QI = "Qi"

Rational = Fraction


class FieldMismatchError(ValueError):
    """Raised when operands carry different field tags."""


def check_field(tag: str) -> str:
    if tag not in (FIELD_Q, FIELD_QI):
        raise ValueError(f"unknown field tag {tag!r}")
    return tag


class GaussianRational:
    """Element a + b*i of Q(i), with a, b reduced Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)

_ZERO = {FIELD_Q: Fraction(0), FIELD_QI: GaussianRational(0)}
_ONE = {FIELD_Q: Fraction(1), FIELD_QI: GaussianRational(1)}


def zero(field: str):
    return _ZERO[check_field(field)]


def one(field: str):
    return _ONE[check_field(field)]


def embed_rational(a: Fraction) -> GaussianRational:
    """Ring embedding Q -> Q(i), a |-> a + 0i."""
    return GaussianRational(a, 0)


def coerce_scalar(x, field: str):
    """Return x as an element of the given field, or raise on mismatch.

    Rationals embed into Q(i); Gaussian rationals with nonzero imaginary
    part are rejected over Q.
    """
    check_field(field)
    if field == FIELD_Q:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, GaussianRational):
            if x.im:
                raise FieldMismatchError(f"{x} is not rational")
            return x.re
    else:
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        if isinstance(x, GaussianRational):
            return x
    raise FieldMismatchError(f"cannot interpret {x!r} over {field}")


def inv(a):
    """Multiplicative inverse; raises ZeroDivisionError on zero."""
    if isinstance(a, GaussianRational):
        return a.inverse()
    if not a:
        raise ZeroDivisionError("inverse of zero")
    return 1 / Fraction(a)


_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rational(text: str) -> Fraction:
    if not _RAT_RE.match(text):
        raise ValueError(f"malformed rational {text!r}")
    return Fraction(text)


def format_rational(a: Fraction) -> str:
    return f"{a.numerator}/{a.denominator}"


def format_scalar(x) -> str:
    """Canonical text form: ``p/q`` over Q, ``p/q+r/s*i`` over Q(i)."""
    if isinstance(x, GaussianRational):
        if not x.im:
            return format_rational(x.re)
        im = format_rational(abs(x.im)) + "*i"
        sign = "+" if x.im > 0 else "-"
        if not x.re:
            return ("" if x.im > 0 else "-") + im
        return format_rational(x.re) + sign + im
    return format_rational(Fraction(x))


def parse_scalar(text: str, field: str):
    """Parse the canonical scalar syntax; exact round-trip with format_scalar.

    Accepted over Q(i): ``p/q``, ``r/s*i``, ``p/q+r/s*i``, ``p/q-r/s*i``,
    and bare ``i`` / ``+i`` / ``-i`` (meaning 0/1+1/1*i up to sign).
    Denominators are optional (``3`` means ``3/1``).
    """
    check_field(field)
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    if field == FIELD_Q:
        return _parse_rational(s)
    if "i" not in s:
        return GaussianRational(_parse_rational(s))
    if not s.endswith("i") or s.count("i") != 1:
        raise ValueError(f"malformed Q(i) scalar {text!r}")
    body = s[:-1]
    starred = body.endswith("*")
    if starred:
        body = body[:-1]
    cut = max(body.rfind("+", 1), body.rfind("-", 1))
    re_text, im_text = (body[:cut], body[cut:]) if cut > 0 else ("", body)
    re_part = _parse_rational(re_text) if re_text else Fraction(0)
    if im_text in ("", "+"):
        if starred:
            raise ValueError(f"malformed Q(i) scalar {text!r}")
        im_part = Fraction(1)
    elif im_text == "-":
        if starred:
            raise ValueError(f"malformed Q(i) scalar {text!r}")
        im_part = Fraction(-1)
    else:
        if not starred:
            raise ValueError(f"malformed Q(i) scalar {text!r}")
        im_part = _parse_rational(im_text)
    return GaussianRational(re_part, im_part)
