"""Truncated power series with explicit truncation state.

A `TruncSeries` stores exactly `order` coefficients c_0..c_{order-1} in one
designated variable.  Reading past the stored window raises
`InsufficientTruncation`; nothing is ever padded with zeros, so "not enough
data" can never silently turn into a wrong certificate.

Coefficients live in any exact coefficient ring: `GaussRat` scalars, `MPoly`
in parameter variables, `RatFunc`, or nested `TruncSeries`.  The series type
itself supports ring arithmetic (to the common truncation window) so series
can serve as coefficients of an outer series.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .errors import DenominatorSingularAtOrigin, EmptySeries, InsufficientTruncation
from .mpoly import MPoly
from .ratfunc import RatFunc
from .scalars import GaussRat

RingElem = Union[GaussRat, MPoly, RatFunc, "TruncSeries"]


class TruncSeries:
    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Sequence[RingElem]):
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coeff(self, j: int) -> RingElem:
        if j < 0:
            raise IndexError("negative series index")
        if j >= len(self.coeffs):
            raise InsufficientTruncation(j, len(self.coeffs), f"series in {self.var}")
        return self.coeffs[j]

    def require(self, index: int, context: str = "") -> None:
        """Fail loudly unless coefficient `index` is stored."""
        if index >= len(self.coeffs):
            raise InsufficientTruncation(index, len(self.coeffs), context or f"series in {self.var}")

    def truncate(self, order: int) -> "TruncSeries":
        if order > len(self.coeffs):
            raise InsufficientTruncation(order - 1, len(self.coeffs), f"series in {self.var}")
        return TruncSeries(self.var, self.coeffs[:order])

    # -- ring protocol (series as coefficients of an outer series) ----------------

    def is_zero(self) -> bool:
        return all(_elem_is_zero(c) for c in self.coeffs)

    def _sample(self) -> RingElem:
        if not self.coeffs:
            raise EmptySeries(f"series in {self.var} has no coefficients")
        return self.coeffs[0]

    def ring_zero(self) -> "TruncSeries":
        z = _ring_zero(self._sample())
        return TruncSeries(self.var, [z] * len(self.coeffs))

    def ring_one(self) -> "TruncSeries":
        sample = self._sample()
        row = [_ring_one(sample)] + [_ring_zero(sample)] * (len(self.coeffs) - 1)
        return TruncSeries(self.var, row)

    def _check_compat(self, other: "TruncSeries") -> None:
        if not isinstance(other, TruncSeries) or other.var != self.var:
            raise TypeError("series arithmetic requires matching variables")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_compat(other)
        n = min(len(self.coeffs), len(other.coeffs))
        return TruncSeries(self.var, [self.coeffs[j] + other.coeffs[j] for j in range(n)])

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.var, [-c for c in self.coeffs])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_compat(other)
        n = min(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            acc = None
            for i in range(k + 1):
                term = self.coeffs[i] * other.coeffs[k - i]
                acc = term if acc is None else acc + term
            out.append(acc)
        return TruncSeries(self.var, out)

    def exact_div(self, other: "TruncSeries") -> "TruncSeries":
        """Truncated division; requires the divisor's constant term invertible."""
        self._check_compat(other)
        n = min(len(self.coeffs), len(other.coeffs))
        if n == 0:
            return TruncSeries(self.var, [])
        q0 = other.coeffs[0]
        if _elem_is_zero(q0):
            raise DenominatorSingularAtOrigin(f"series divisor has zero constant term in {self.var}")
        out: list[RingElem] = []
        for k in range(n):
            acc = self.coeffs[k]
            for i in range(1, k + 1):
                acc = acc - other.coeffs[i] * out[k - i]
            out.append(_elem_div(acc, q0))
        return TruncSeries(self.var, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.var == other.var and list(self.coeffs) == list(other.coeffs)

    __hash__ = None

    def __repr__(self) -> str:
        return f"TruncSeries({self.var!r}, {list(self.coeffs)!r})"


def _elem_is_zero(x: RingElem) -> bool:
    return x.is_zero()


def _ring_zero(x: RingElem) -> RingElem:
    return x.ring_zero()


def _ring_one(x: RingElem) -> RingElem:
    return x.ring_one()


def _elem_div(a: RingElem, b: RingElem) -> RingElem:
    return a.exact_div(b)


def series_of_ratfunc(rf: RatFunc, var: str, order: int, coeff_ring: str = "auto") -> TruncSeries:
    """Expand a rational function as a truncated series in `var`.

    The coefficients satisfy the convolution recurrence
    q_0 * c_n = p_n - sum_{i=1..n} q_i * c_{n-i}, so multiplying the result
    back by the denominator reproduces the numerator modulo var^order.

    coeff_ring selects where the coefficients live:
      * "scalar"  -- GaussRat; requires no variables besides `var`;
      * "poly"    -- MPoly in the remaining variables; requires the
                     denominator's value at var=0 to be a nonzero constant;
      * "ratfunc" -- RatFunc in the remaining variables (always possible when
                     the denominator does not vanish identically at var=0);
      * "auto"    -- scalar if possible, else poly if possible, else ratfunc.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    num_by = rf.num.as_univariate(var)
    den_by = rf.den.as_univariate(var)
    rest = sorted((set(rf.num.vars) | set(rf.den.vars)) - {var})
    q0 = den_by.get(0)
    if q0 is None or q0.is_zero():
        raise DenominatorSingularAtOrigin(
            f"denominator of {rf} vanishes identically at {var}=0"
        )

    if coeff_ring == "auto":
        if not rest:
            coeff_ring = "scalar"
        elif q0.is_constant():
            coeff_ring = "poly"
        else:
            coeff_ring = "ratfunc"

    if coeff_ring == "scalar":
        if rest:
            raise ValueError(f"scalar expansion impossible: remaining variables {rest}")
        p = {d: c.constant_value() for d, c in num_by.items()}
        q = {d: c.constant_value() for d, c in den_by.items()}
        q0s = q[0]
        coeffs: list[GaussRat] = []
        for n in range(order):
            acc = p.get(n, GaussRat(0))
            for i in range(1, n + 1):
                qi = q.get(i)
                if qi is not None:
                    acc = acc - qi * coeffs[n - i]
            coeffs.append(acc / q0s)
        return TruncSeries(var, coeffs)

    if coeff_ring == "poly":
        if not q0.is_constant():
            raise DenominatorSingularAtOrigin(
                f"denominator value {q0} at {var}=0 is not an invertible polynomial"
            )
        inv = q0.constant_value().inverse()
        zero = MPoly.zero(rest)
        pcoeffs: list[MPoly] = []
        for n in range(order):
            acc = num_by.get(n, zero)
            for i in range(1, n + 1):
                qi = den_by.get(i)
                if qi is not None:
                    acc = acc - qi * pcoeffs[n - i]
            pcoeffs.append(acc.scale(inv))
        return TruncSeries(var, pcoeffs)

    if coeff_ring == "ratfunc":
        q0r = RatFunc.from_poly(q0)
        zero = RatFunc(MPoly.zero(rest), MPoly.const(1, rest))
        rcoeffs: list[RatFunc] = []
        for n in range(order):
            acc = RatFunc.from_poly(num_by.get(n, MPoly.zero(rest)))
            for i in range(1, n + 1):
                qi = den_by.get(i)
                if qi is not None:
                    acc = acc - RatFunc.from_poly(qi) * rcoeffs[n - i]
            rcoeffs.append(acc / q0r)
        return TruncSeries(var, rcoeffs)

    raise ValueError(f"unknown coeff_ring {coeff_ring!r}")


class ParamSeries:
    """Series in one variable whose coefficients are polynomials in parameters."""

    __slots__ = ("var", "params", "coeffs")

    def __init__(self, var: str, params: Sequence[str], coeffs: Sequence[MPoly]):
        params_t = tuple(sorted(params))
        fixed = []
        for c in coeffs:
            if isinstance(c, (int, Fraction, GaussRat)):
                c = MPoly.const(c, params_t)
            extra = set(c.used_vars()) - set(params_t)
            if extra:
                raise ValueError(f"coefficient {c} uses non-parameter variables {sorted(extra)}")
            fixed.append(c.with_vars(params_t) if set(c.vars) <= set(params_t) else
                         _project(c, params_t))
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "params", params_t)
        object.__setattr__(self, "coeffs", tuple(fixed))

    def __setattr__(self, name, value):
        raise AttributeError("ParamSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def as_series(self) -> TruncSeries:
        return TruncSeries(self.var, self.coeffs)

    def specialize(self, point: Sequence[GaussRat]) -> TruncSeries:
        """Evaluate every coefficient at a parameter point."""
        assignment = dict(zip(self.params, point))
        if len(assignment) != len(self.params):
            raise ValueError(f"expected {len(self.params)} parameter values")
        return TruncSeries(self.var, [c.eval_all(assignment) for c in self.coeffs])

    @staticmethod
    def from_ratfunc(rf: RatFunc, var: str, params: Sequence[str], order: int) -> "ParamSeries":
        series = series_of_ratfunc(rf, var, order, coeff_ring="poly")
        coeffs = [c if isinstance(c, MPoly) else MPoly.const(c, sorted(params)) for c in series.coeffs]
        return ParamSeries(var, params, coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamSeries):
            return NotImplemented
        return (self.var == other.var and self.params == other.params
                and list(self.coeffs) == list(other.coeffs))

    __hash__ = None

    def __repr__(self) -> str:
        return f"ParamSeries({self.var!r}, {self.params!r}, {[str(c) for c in self.coeffs]!r})"


def _project(p: MPoly, params: tuple) -> MPoly:
    # declared vars may exceed params; keep only parameter columns
    keep = [i for i, v in enumerate(p.vars) if v in params]
    terms = {tuple(e[i] for i in keep): c for e, c in p.terms.items()}
    return MPoly(tuple(p.vars[i] for i in keep), terms).with_vars(params)
