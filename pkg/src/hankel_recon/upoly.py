"""Univariate polynomials over an arbitrary exact coefficient ring.

Used for the numerator/denominator outputs of the reconstruction: the
coefficients may be scalars, parameter polynomials, or rational functions,
so a flat multivariate polynomial cannot always represent them.
"""

from __future__ import annotations

from typing import Sequence

from .mpoly import MPoly
from .ratfunc import RatFunc
from .scalars import GaussRat


class UPoly:
    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Sequence):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        raise IndexError(j)

    def padded(self, length: int) -> list:
        """Coefficient list extended with ring zeros up to `length` entries."""
        if not self.coeffs:
            raise ValueError("cannot pad the zero polynomial without a ring sample")
        zero = self.coeffs[0].ring_zero()
        out = list(self.coeffs) + [zero] * (length - len(self.coeffs))
        return out[:length]

    def map_coeffs(self, fn) -> "UPoly":
        return UPoly(self.var, [fn(c) for c in self.coeffs])

    def eval_at(self, value):
        """Horner evaluation; `value` must live in the coefficient ring."""
        if not self.coeffs:
            return value.ring_zero()
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def to_mpoly(self) -> MPoly:
        """Flatten to a multivariate polynomial; coefficients must be
        GaussRat or MPoly (not rational functions)."""
        total = MPoly.zero((self.var,))
        xv = MPoly.var(self.var)
        for j, c in enumerate(self.coeffs):
            if isinstance(c, GaussRat):
                c = MPoly.const(c)
            if not isinstance(c, MPoly):
                raise TypeError(f"coefficient of type {type(c).__name__} cannot flatten")
            total = total + c * xv**j
        return total

    def to_ratfunc(self) -> RatFunc:
        """Flatten to a rational function in all variables involved."""
        total = RatFunc.const(0)
        xv = RatFunc.from_poly(MPoly.var(self.var))
        for j, c in enumerate(self.coeffs):
            total = total + RatFunc.of(c) * xv**j
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.var == other.var and list(self.coeffs) == list(other.coeffs)

    __hash__ = None

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if any(ch in cs for ch in "+-/ ") and not _is_simple_negative(cs):
                cs = f"({cs})"
            if j == 0:
                parts.append(cs)
            else:
                mono = self.var if j == 1 else f"{self.var}^{j}"
                parts.append(mono if cs == "1" else f"-{mono}" if cs == "-1" else f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-") and not p.startswith("-("):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self) -> str:
        return f"UPoly({self.var!r}, {[str(c) for c in self.coeffs]!r})"


def _is_simple_negative(s: str) -> bool:
    return s.startswith("-") and not any(ch in s[1:] for ch in "+- ")
