"""Exact rational and Gaussian-rational scalars.

Values are kept as a pair of ``gmpy2.mpq`` (real and imaginary part).  Only
squared magnitudes are ever needed exactly; ``logmag`` gives an
overflow-free float companion for reporting.
"""

from __future__ import annotations

import math
import re
from functools import lru_cache

import gmpy2
from gmpy2 import mpq, mpz

__all__ = ["Scalar", "ScalarParseError", "as_scalar", "rational", "log_rational",
           "format_rational", "parse_rational", "ZERO", "ONE"]


class ScalarParseError(ValueError):
    """Raised for a literal that does not follow the scalar grammar."""


def _q(value) -> mpq:
    if isinstance(value, str):
        return parse_rational(value)
    return mpq(value)


def rational(value) -> mpq:
    """Coerce ``int``, ``Fraction``, ``mpq`` or a ``"p/q"`` literal to mpq."""
    return _q(value)


def log_rational(q) -> float:
    """Natural log of a positive rational that may be far outside float range."""
    q = mpq(q)
    if q <= 0:
        raise ValueError("log of non-positive rational")
    return math.log(int(q.numerator)) - math.log(int(q.denominator))


def format_rational(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^\s*({_RAT})\s*$")
_CPLX_RE = re.compile(rf"^\s*({_RAT})\s*([+-])\s*(\d+(?:/\d+)?)?\s*i\s*$")
_IMAG_RE = re.compile(rf"^\s*({_RAT})?\s*i\s*$")


def parse_rational(text: str) -> mpq:
    m = _RAT_RE.match(text)
    if not m:
        raise ScalarParseError(f"not a rational literal: {text!r}")
    body = m.group(1)
    if "/" in body:
        p, q = body.split("/")
        if int(q) == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        return mpq(int(p), int(q))
    return mpq(int(body))


class Scalar:
    """An element of Q or Q(i), immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse ``"p/q"``, ``"p/q+r/s i"`` or ``"p/q-r/s i"``."""
        if _RAT_RE.match(text):
            return cls(parse_rational(text))
        m = _CPLX_RE.match(text)
        if m:
            re_part = parse_rational(m.group(1))
            im_part = parse_rational(m.group(3) or "1")
            if m.group(2) == "-":
                im_part = -im_part
            return cls(re_part, im_part)
        m = _IMAG_RE.match(text)
        if m:
            return cls(0, parse_rational(m.group(1) or "1"))
        raise ScalarParseError(f"not a scalar literal: {text!r}")

    # -- predicates -----------------------------------------------------
    @property
    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def abs2(self) -> mpq:
        """Exact squared magnitude."""
        return self.re * self.re + self.im * self.im

    @property
    def logmag(self) -> float:
        """ln|s|; ``-inf`` for zero."""
        a2 = self.abs2()
        if a2 == 0:
            return -math.inf
        return 0.5 * log_rational(a2)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = as_scalar(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = as_scalar(other)
        if self.im == 0 and other.im == 0:
            return Scalar(self.re * other.re)
        return Scalar(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self.im == 0:
            return Scalar(1 / self.re)
        d = self.abs2()
        return Scalar(self.re / d, -self.im / d)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are exact")
        return _power(self, exponent)

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))} i"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def as_scalar(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        return Scalar.parse(value)
    if isinstance(value, complex):
        raise TypeError("float complex values are not exact")
    if isinstance(value, float):
        raise TypeError("float values are not exact; pass a rational")
    try:
        return Scalar(mpq(value))
    except (TypeError, ValueError) as exc:
        raise TypeError(f"cannot convert {value!r} to Scalar") from exc


def _gauss_pow(a: mpz, b: mpz, n: int) -> tuple[mpz, mpz]:
    # (a + b i)**n over the Gaussian integers
    ra, rb = mpz(1), mpz(0)
    while n:
        if n & 1:
            ra, rb = ra * a - rb * b, ra * b + rb * a
        n >>= 1
        if n:
            a, b = a * a - b * b, 2 * a * b
    return ra, rb


@lru_cache(maxsize=2048)
def _power(s: Scalar, n: int) -> Scalar:
    if n == 0:
        return ONE
    if n < 0:
        return _power(s.inverse(), -n)
    if s.im == 0:
        return Scalar(s.re ** n)
    # s = (a + b i)/q with integer a, b, q; one gcd per part at the end
    q = gmpy2.lcm(s.re.denominator, s.im.denominator)
    a = s.re.numerator * (q // s.re.denominator)
    b = s.im.numerator * (q // s.im.denominator)
    ra, rb = _gauss_pow(mpz(a), mpz(b), n)
    qn = mpz(q) ** n
    return Scalar(mpq(ra, qn), mpq(rb, qn))


ZERO = Scalar(0)
ONE = Scalar(1)
