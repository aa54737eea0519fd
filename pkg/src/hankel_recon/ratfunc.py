"""Rational functions as unreduced numerator/denominator pairs.

No GCD reduction is ever performed: equality is decided by
cross-multiplication (`a/b = c/d` iff `a*d - c*b = 0`), which keeps every
operation exact without multivariate GCDs.  The only normalization applied is
scalar: the denominator's graded-lex leading coefficient is made 1, which
changes neither the equality class nor any evaluation.

Because products and sums multiply denominators verbatim, a denominator built
from base polynomials stays a scalar multiple of a product of those bases;
the multivariate clearing step relies on this.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import ZeroDenominatorPolynomial
from .mpoly import MPoly
from .scalars import GaussRat

_Coeff = Union[GaussRat, int, Fraction]


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly):
        if not isinstance(num, MPoly) or not isinstance(den, MPoly):
            raise TypeError("RatFunc takes MPoly numerator and denominator")
        if den.is_zero():
            raise ZeroDenominatorPolynomial("zero denominator polynomial")
        num, den = MPoly.align(num, den)
        lead = den.leading_coeff()
        if lead != GaussRat(1):
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def from_poly(p: MPoly) -> "RatFunc":
        return RatFunc(p, MPoly.const(1, p.vars))

    @staticmethod
    def const(value: _Coeff, vars=()) -> "RatFunc":
        return RatFunc(MPoly.const(value, vars), MPoly.const(1, vars))

    @staticmethod
    def of(value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, MPoly):
            return RatFunc.from_poly(value)
        return RatFunc.const(value)

    # -- ring protocol ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def ring_zero(self) -> "RatFunc":
        return RatFunc(self.num.ring_zero(), self.num.ring_one())

    def ring_one(self) -> "RatFunc":
        return RatFunc(self.num.ring_one(), self.num.ring_one())

    def exact_div(self, other: "RatFunc") -> "RatFunc":
        return self / other

    # -- arithmetic ----------------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        other = RatFunc.of(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-RatFunc.of(other))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.of(other) + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = RatFunc.of(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = RatFunc.of(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.of(other) / self

    def __pow__(self, exponent: int) -> "RatFunc":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return RatFunc(self.num ** exponent, self.den ** exponent)

    # -- comparison -----------------------------------------------------------------

    def cross_eq(self, other: "RatFunc") -> bool:
        """Exact equality by cross-multiplication, no reduction needed."""
        other = RatFunc.of(other)
        return (self.num * other.den - other.num * self.den).is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (RatFunc, MPoly, GaussRat, int, Fraction)):
            return self.cross_eq(RatFunc.of(other))
        return NotImplemented

    __hash__ = None  # cross-multiplication equality is incompatible with hashing

    # -- queries ------------------------------------------------------------------------

    def is_polynomial_value(self) -> bool:
        """True if the denominator is a nonzero constant."""
        return self.den.is_constant()

    def as_poly(self) -> MPoly:
        if not self.is_polynomial_value():
            raise ValueError(f"denominator {self.den} is not constant")
        return self.num.scale(self.den.constant_value().inverse())

    def eval_all(self, assignment) -> GaussRat:
        den = self.den.eval_all(assignment)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.eval_all(assignment) / den

    def __str__(self) -> str:
        if self.den == MPoly.const(1, self.den.vars):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"


def ratfunc_cross_eq(a: RatFunc, b: RatFunc) -> bool:
    """Module-level alias for the cross-multiplication equality test."""
    return a.cross_eq(b)
