"""Sparse multivariate polynomials over the exact complex rationals.

Terms are stored as a map from exponent tuples to nonzero `GaussRat`
coefficients; the exponent tuples are aligned with `vars`, a sorted tuple of
variable names.  Binary operations unify contexts by taking the union of the
variable lists, so polynomials built independently combine freely.

Canonical text rendering sorts terms by graded-lexicographic order
(ascending), and `hankel_recon.exprs.parse_mpoly` reads the rendering back
exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import ExactDivisionError
from .scalars import GaussRat, gaussrat_str

_Coeff = Union[GaussRat, int, Fraction]


def _as_coeff(value: _Coeff) -> GaussRat:
    return GaussRat.of(value)


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping[tuple, _Coeff] | None = None):
        vs = tuple(vars)
        if list(vs) != sorted(vs):
            raise ValueError(f"variable list must be sorted: {vs}")
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate variable names: {vs}")
        tm: dict[tuple, GaussRat] = {}
        if terms:
            for exps, c in terms.items():
                c = _as_coeff(c)
                if c.is_zero():
                    continue
                exps = tuple(exps)
                if len(exps) != len(vs) or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent tuple {exps} for vars {vs}")
                tm[exps] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", tm)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------------

    @staticmethod
    def const(value: _Coeff, vars: Sequence[str] = ()) -> "MPoly":
        vs = tuple(sorted(vars))
        zero_exp = (0,) * len(vs)
        return MPoly(vs, {zero_exp: value})

    @staticmethod
    def var(name: str) -> "MPoly":
        return MPoly((name,), {(1,): 1})

    @staticmethod
    def zero(vars: Sequence[str] = ()) -> "MPoly":
        return MPoly(tuple(sorted(vars)), {})

    # -- basic queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> GaussRat:
        """Value as a scalar; requires `is_constant()`."""
        if self.is_zero():
            return GaussRat(0)
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return next(iter(self.terms.values()))

    def constant_term(self) -> GaussRat:
        return self.terms.get((0,) * len(self.vars), GaussRat(0))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in one variable; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        if var is None:
            return max(sum(exps) for exps in self.terms)
        if var not in self.vars:
            return 0
        k = self.vars.index(var)
        return max(exps[k] for exps in self.terms)

    def used_vars(self) -> tuple:
        """Variables with a nonzero exponent in some term."""
        used = set()
        for exps in self.terms:
            for name, e in zip(self.vars, exps):
                if e:
                    used.add(name)
        return tuple(sorted(used))

    def ring_zero(self) -> "MPoly":
        return MPoly(self.vars, {})

    def ring_one(self) -> "MPoly":
        return MPoly.const(1, self.vars)

    # -- context alignment --------------------------------------------------------

    def with_vars(self, vars: Sequence[str]) -> "MPoly":
        """Re-embed into a (sorted) superset variable context."""
        vs = tuple(vars)
        if vs == self.vars:
            return self
        missing = set(self.vars) - set(vs)
        if missing:
            raise ValueError(f"target context lacks {sorted(missing)}")
        pos = [vs.index(v) for v in self.vars]
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * len(vs)
            for p, e in zip(pos, exps):
                new[p] = e
            terms[tuple(new)] = c
        return MPoly(vs, terms)

    @staticmethod
    def align(a: "MPoly", b: "MPoly") -> tuple["MPoly", "MPoly"]:
        if a.vars == b.vars:
            return a, b
        union = tuple(sorted(set(a.vars) | set(b.vars)))
        return a.with_vars(union), b.with_vars(union)

    def _coerce(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction, GaussRat)):
            return MPoly.const(other, self.vars)
        return None

    # -- arithmetic -----------------------------------------------------------------

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = MPoly.align(self, other)
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            s = terms.get(exps)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = s
        return MPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = MPoly.align(self, other)
        terms: dict[tuple, GaussRat] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                s = terms.get(exps)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(exps, None)
                else:
                    terms[exps] = s
        return MPoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MPoly.const(1, self.vars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, factor: _Coeff) -> "MPoly":
        factor = _as_coeff(factor)
        if factor.is_zero():
            return self.ring_zero()
        return MPoly(self.vars, {e: c * factor for e, c in self.terms.items()})

    # -- graded-lex leading data ------------------------------------------------------

    def _lead(self) -> tuple[tuple, GaussRat]:
        exps = max(self.terms, key=lambda e: (sum(e), e))
        return exps, self.terms[exps]

    def leading_coeff(self) -> GaussRat:
        if self.is_zero():
            return GaussRat(0)
        return self._lead()[1]

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Quotient self/other when the division is exact; raises otherwise."""
        other = self._coerce(other)
        if other is None or not isinstance(other, MPoly):
            raise TypeError("exact_div expects a polynomial")
        if other.is_zero():
            raise ZeroDivisionError("exact_div by zero polynomial")
        if self.is_zero():
            return MPoly(tuple(sorted(set(self.vars) | set(other.vars))), {})
        a, b = MPoly.align(self, other)
        if b.is_constant():
            return a.scale(b.constant_value().inverse())
        rem = a
        q_terms: dict[tuple, GaussRat] = {}
        le_b, lc_b = b._lead()
        while not rem.is_zero():
            le_r, lc_r = rem._lead()
            exps = tuple(x - y for x, y in zip(le_r, le_b))
            if any(e < 0 for e in exps):
                raise ExactDivisionError(f"({self}) not divisible by ({other})")
            c = lc_r / lc_b
            q_terms[exps] = q_terms.get(exps, GaussRat(0)) + c
            rem = rem - MPoly(a.vars, {exps: c}) * b
        return MPoly(a.vars, {e: c for e, c in q_terms.items() if not c.is_zero()})

    def divides(self, other: "MPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except (ExactDivisionError, ZeroDivisionError):
            return False

    # -- evaluation -----------------------------------------------------------------

    def substitute(self, assignment: Mapping[str, "_Coeff | MPoly"]):
        """Replace some variables by scalars or polynomials.

        Returns a GaussRat when every variable is eliminated, else an MPoly
        in the remaining (plus newly introduced) variables.
        """
        remaining = tuple(v for v in self.vars if v not in assignment)
        total = None
        for exps, c in self.terms.items():
            term = MPoly.const(c, remaining)
            for name, e in zip(self.vars, exps):
                if e == 0:
                    continue
                if name in assignment:
                    val = assignment[name]
                    if isinstance(val, MPoly):
                        term = term * val**e
                    else:
                        term = term.scale(_as_coeff(val) ** e)
                else:
                    term = term * MPoly.var(name) ** e
            total = term if total is None else total + term
        if total is None:
            total = MPoly(remaining, {})
        if not total.used_vars() and all(v in assignment for v in self.vars):
            return total.constant_value()
        return total

    def eval_all(self, assignment: Mapping[str, _Coeff]) -> GaussRat:
        """Evaluate at a full scalar assignment."""
        out = GaussRat(0)
        vals = {v: _as_coeff(assignment[v]) for v in self.vars}
        for exps, c in self.terms.items():
            term = c
            for name, e in zip(self.vars, exps):
                if e:
                    term = term * vals[name] ** e
            out = out + term
        return out

    # -- univariate views --------------------------------------------------------------

    def as_univariate(self, var: str) -> dict[int, "MPoly"]:
        """Coefficients by power of `var`, each an MPoly in the other variables."""
        rest = tuple(v for v in self.vars if v != var)
        if var not in self.vars:
            return {0: self} if not self.is_zero() else {}
        k = self.vars.index(var)
        out: dict[int, dict[tuple, GaussRat]] = {}
        for exps, c in self.terms.items():
            d = exps[k]
            rest_exps = exps[:k] + exps[k + 1:]
            out.setdefault(d, {})[rest_exps] = c
        return {d: MPoly(rest, tm) for d, tm in out.items()}

    def coeff_list(self, var: str) -> list["MPoly"]:
        """Dense list of `var`-coefficients from degree 0 upward."""
        by = self.as_univariate(var)
        top = max(by) if by else 0
        rest = tuple(v for v in self.vars if v != var)
        zero = MPoly(rest, {})
        return [by.get(d, zero) for d in range(top + 1)]

    def split(self, front_vars: Sequence[str]) -> dict[tuple, "MPoly"]:
        """Group terms by their exponents on `front_vars`.

        Result maps each exponent tuple (aligned with sorted front_vars) to
        the cofactor polynomial in the remaining variables.
        """
        front = tuple(sorted(front_vars))
        rest = tuple(v for v in self.vars if v not in front)
        idx_front = [self.vars.index(v) for v in front if v in self.vars]
        names_front = [v for v in front if v in self.vars]
        idx_rest = [self.vars.index(v) for v in rest]
        out: dict[tuple, dict[tuple, GaussRat]] = {}
        for exps, c in self.terms.items():
            key = [0] * len(front)
            for name, i in zip(names_front, idx_front):
                key[front.index(name)] = exps[i]
            rest_exps = tuple(exps[i] for i in idx_rest)
            out.setdefault(tuple(key), {})[rest_exps] = c
        return {k: MPoly(rest, tm) for k, tm in out.items()}

    # -- comparison ---------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        a, b = MPoly.align(self, coerced)
        return a.terms == b.terms

    def __hash__(self):
        used = self.used_vars()
        trimmed = self if used == self.vars else _strip_unused(self, used)
        return hash((trimmed.vars, frozenset(trimmed.terms.items())))

    # -- rendering ----------------------------------------------------------------------

    def __str__(self) -> str:
        return mpoly_str(self)

    def __repr__(self) -> str:
        return f"MPoly({self.vars!r}, {self.terms!r})"


def _strip_unused(p: MPoly, used: tuple) -> MPoly:
    keep = [i for i, v in enumerate(p.vars) if v in used]
    terms = {tuple(e[i] for i in keep): c for e, c in p.terms.items()}
    return MPoly(tuple(p.vars[i] for i in keep), terms)


def _coeff_prefix(c: GaussRat) -> str:
    """Coefficient rendering for a nonconstant monomial, with '*'."""
    if c == GaussRat(1):
        return ""
    if c == GaussRat(-1):
        return "-"
    s = gaussrat_str(c)
    if c.re != 0 and c.im != 0:
        s = f"({s})"
    return s + "*"


def _monomial_str(vars: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for name, e in zip(vars, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def mpoly_str(p: MPoly) -> str:
    """Canonical rendering: terms ascending in graded-lex order."""
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    pieces: list[str] = []
    for exps, c in items:
        mono = _monomial_str(p.vars, exps)
        if not mono:
            body = gaussrat_str(c)
        else:
            body = _coeff_prefix(c) + mono
        if not pieces:
            pieces.append(body)
        elif body.startswith("-"):
            pieces.append(" - " + body[1:])
        else:
            pieces.append(" + " + body)
    return "".join(pieces)


# -- univariate helpers (scalar coefficient lists) -------------------------------------


def univar_coeffs(p: MPoly, var: str) -> list[GaussRat]:
    """Scalar coefficient list of a univariate polynomial; [] for zero."""
    extra = [v for v in p.used_vars() if v != var]
    if extra:
        raise ValueError(f"polynomial is not univariate in {var}: uses {extra}")
    if p.is_zero():
        return []
    by = p.as_univariate(var)
    top = max(by)
    out = []
    for d in range(top + 1):
        c = by.get(d)
        out.append(c.constant_value() if c is not None else GaussRat(0))
    return out


def from_univar_coeffs(coeffs: Iterable[_Coeff], var: str) -> MPoly:
    terms = {}
    for d, c in enumerate(coeffs):
        c = _as_coeff(c)
        if not c.is_zero():
            terms[(d,)] = c
    return MPoly((var,), terms)


def _poly_divmod(a: list[GaussRat], b: list[GaussRat]) -> tuple[list[GaussRat], list[GaussRat]]:
    """Division with remainder on dense scalar coefficient lists."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [GaussRat(0)] * max(0, len(a) - db)
    while len(a) - 1 >= db and any(not c.is_zero() for c in a):
        while a and a[-1].is_zero():
            a.pop()
        if len(a) - 1 < db:
            break
        shift = len(a) - 1 - db
        factor = a[-1] / lead
        q[shift] = factor
        for i in range(db + 1):
            a[shift + i] = a[shift + i] - factor * b[i]
        a.pop()
    while a and a[-1].is_zero():
        a.pop()
    return q, a


def univar_gcd(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Monic GCD of two univariate polynomials over QQ(i)."""
    a = univar_coeffs(p, var)
    b = univar_coeffs(q, var)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return MPoly((var,), {})
    lead = a[-1]
    return from_univar_coeffs([c / lead for c in a], var)
