"""Exact complex-rational scalars: the field QQ(i).

A `GaussRat` is a pair of `fractions.Fraction` values (real and imaginary
part).  All arithmetic is exact; the zero test is exact; both components are
kept fully reduced by `Fraction` itself.  This is the coefficient field under
every polynomial and series in the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

_Coercible = Union["GaussRat", int, Fraction]


class GaussRat:
    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def of(value: _Coercible) -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussRat(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussRat")

    # -- ring protocol ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def ring_zero(self) -> "GaussRat":
        return _ZERO

    def ring_one(self) -> "GaussRat":
        return _ONE

    def exact_div(self, other: "GaussRat") -> "GaussRat":
        return self / other

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: _Coercible) -> "GaussRat":
        other = GaussRat.of(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: _Coercible) -> "GaussRat":
        other = GaussRat.of(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: _Coercible) -> "GaussRat":
        return GaussRat.of(other) - self

    def __mul__(self, other: _Coercible) -> "GaussRat":
        other = GaussRat.of(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: _Coercible) -> "GaussRat":
        other = GaussRat.of(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        return GaussRat(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other: _Coercible) -> "GaussRat":
        return GaussRat.of(other) / self

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def __pow__(self, exponent: int) -> "GaussRat":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = _ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def inverse(self) -> "GaussRat":
        return _ONE / self

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussRat(other)
        if not isinstance(other, GaussRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- rendering ---------------------------------------------------------------

    def __str__(self) -> str:
        return gaussrat_str(self)

    def __repr__(self) -> str:
        return f"GaussRat({self.re!r}, {self.im!r})"


_ZERO = GaussRat(0)
_ONE = GaussRat(1)
I_UNIT = GaussRat(0, 1)

ZERO = _ZERO
ONE = _ONE


def _imag_str(im: Fraction) -> str:
    """Render an imaginary part so `a/b*i` reads back as itself: `2i/5`."""
    sign = "-" if im < 0 else ""
    mag = -im if im < 0 else im
    num = "" if mag.numerator == 1 else str(mag.numerator)
    body = f"{num}i"
    if mag.denominator != 1:
        body += f"/{mag.denominator}"
    return sign + body


def gaussrat_str(value: GaussRat) -> str:
    """Canonical text form; parses back to the same value."""
    if value.is_zero():
        return "0"
    if value.im == 0:
        return str(value.re)
    if value.re == 0:
        return _imag_str(value.im)
    imag = _imag_str(value.im)
    if not imag.startswith("-"):
        imag = "+" + imag
    return f"{value.re}{imag}"
