"""Multivariate reconstruction by recursion on the series variables.

The driver expands a rational function in its first series variable with
exact rational-function coefficients, reconstructs in that variable, then
recursively reconstructs each coefficient that enters the output as a cleared
polynomial pair.  Substituting those pairs back and clearing the accumulated
denominators produces a flat polynomial pair (P_hat, Q_hat) with
f * Q_hat = P_hat verified coefficientwise on the truncation window.

The exceptional parameter set is assembled from two kinds of components:
the recursive components contributed by the coefficient reconstructions, and
the uniform-vanishing component generated by Q_hat's own parameter
coefficients across the series monomials.

A single-level run over the full rational-function field (no recursion, no
clearing bookkeeping) is kept as an independent oracle; its output must be
cross-multiplication-equal to the recursive one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import VerificationFailed, ZeroDenominatorPolynomial
from .hankel import minimal_order
from .kronecker import NotRationalWithinWindow, Reconstruction, reconstruct
from .mpoly import MPoly
from .params import ExceptionalSet, ExceptionalUnion, exceptional_set
from .ratfunc import RatFunc
from .scalars import GaussRat
from .series import ParamSeries, TruncSeries, series_of_ratfunc


@dataclass
class LevelTrace:
    """One reconstruction event in the recursion."""

    var: str
    r0: int
    order_used: int
    clearing: list                      # (base polynomial string, exponent)
    coefficient_path: tuple = ()        # indices of the nested coefficient

    def to_report(self) -> dict:
        return {
            "var": self.var,
            "r0": self.r0,
            "order_used": self.order_used,
            "clearing": [{"base": b, "exponent": e} for b, e in self.clearing],
            "coefficient_path": list(self.coefficient_path),
        }


@dataclass
class MultiRecon:
    """Flat polynomial pair with exceptional set and per-level trace."""

    P_hat: MPoly
    Q_hat: MPoly
    F_hat: ExceptionalUnion
    trace: list
    zvars: tuple
    params: tuple
    verified_orders: tuple

    def to_report(self) -> dict:
        return {
            "P": str(self.P_hat),
            "Q": str(self.Q_hat),
            "exceptional_components": self.F_hat.to_report(),
            "trace": [t.to_report() for t in self.trace],
            "verified_orders": list(self.verified_orders),
        }

    def as_ratfunc(self) -> RatFunc:
        return RatFunc(self.P_hat, self.Q_hat)


def hartogs_expand(f, var: str, order: int) -> list:
    """Coefficients of the expansion in `var`.

    A rational input yields exact rational functions in the remaining
    variables; a nested truncated series yields its stored coefficients.
    """
    if isinstance(f, RatFunc):
        return list(series_of_ratfunc(f, var, order, coeff_ring="ratfunc").coeffs)
    if isinstance(f, TruncSeries):
        if f.var != var:
            raise ValueError(f"series is in {f.var!r}, not {var!r}")
        f.require(order - 1, "expansion")
        return list(f.coeffs[:order])
    raise TypeError(f"cannot expand {type(f).__name__}")


@dataclass
class ClearedCoeffs:
    """Polynomial coefficient lists after multiplying away the denominators."""

    num_coeffs: list            # MPoly
    den_coeffs: list            # MPoly
    bases: list                 # MPoly, the denominator base polynomials
    exponents: list             # per-base clearing exponent


def clear_denominators(
    num_coeffs: Sequence[RatFunc],
    den_coeffs: Sequence[RatFunc],
    bases: Sequence[MPoly] = (),
) -> ClearedCoeffs:
    """Multiply both coefficient lists by a common product of base powers.

    Every coefficient's denominator is factored over the base list by exact
    division (a leftover nonconstant cofactor is promoted to a new base), the
    per-base exponent demands are maxed, and each coefficient is multiplied by
    exactly the product that cancels its denominator.  The cleared pair is
    cross-multiplication-equal to the input pair.
    """
    base_list: list[MPoly] = []
    for b in bases:
        if not isinstance(b, MPoly):
            raise TypeError("bases must be polynomials")
        if b.is_zero():
            raise ZeroDenominatorPolynomial("zero polynomial passed as a clearing base")
        if b.is_constant():
            continue
        if not any(_associates(b, known) for known in base_list):
            base_list.append(_monic_lead(b))

    factored = []   # per coefficient: (num, const_cofactor, {base_index: exponent})
    for coeff in list(num_coeffs) + list(den_coeffs):
        coeff = RatFunc.of(coeff)
        exps: dict[int, int] = {}
        rem = coeff.den
        i = 0
        while i < len(base_list):
            base = base_list[i]
            while base.divides(rem):
                rem = rem.exact_div(base)
                exps[i] = exps.get(i, 0) + 1
            i += 1
        if not rem.is_constant():
            base_list.append(_monic_lead(rem))
            # the new base may divide rem multiple times or again later
            i = len(base_list) - 1
            base = base_list[i]
            while base.divides(rem):
                rem = rem.exact_div(base)
                exps[i] = exps.get(i, 0) + 1
        factored.append((coeff.num, rem.constant_value(), exps))

    exponents = [0] * len(base_list)
    for _, _, exps in factored:
        for i, e in exps.items():
            exponents[i] = max(exponents[i], e)

    cleared: list[MPoly] = []
    for num, const, exps in factored:
        out = num.scale(const.inverse())
        for i, k_total in enumerate(exponents):
            missing = k_total - exps.get(i, 0)
            if missing:
                out = out * base_list[i] ** missing
        cleared.append(out)

    n = len(num_coeffs)
    return ClearedCoeffs(
        num_coeffs=cleared[:n],
        den_coeffs=cleared[n:],
        bases=base_list,
        exponents=exponents,
    )


def _monic_lead(p: MPoly) -> MPoly:
    lead = p.leading_coeff()
    return p if lead == GaussRat(1) else p.scale(lead.inverse())


def _associates(a: MPoly, b: MPoly) -> bool:
    if not b.divides(a):
        return False
    return a.exact_div(b).is_constant()


def assemble_exceptional(mr_q_hat: MPoly, zvars: Sequence[str], params: Sequence[str],
                         level_sets: Sequence) -> ExceptionalUnion:
    """Union of the recursive components and the uniform-vanishing component.

    The uniform-vanishing component is generated by the parameter
    coefficients of the denominator across all series monomials; the
    recursive components come from the coefficient reconstructions and are
    kept tagged rather than merged (concatenating generator lists would
    intersect the sets, not unite them).
    """
    components: list[ExceptionalSet] = []
    for ls in level_sets:
        if isinstance(ls, ExceptionalUnion):
            components.extend(ls.components)
        elif isinstance(ls, ExceptionalSet):
            components.append(ls)
        else:
            raise TypeError("level sets must be exceptional sets or unions")
    for comp in components:
        for g in comp.generators:
            stray = set(g.used_vars()) - set(params)
            if stray:
                raise ValueError(f"recursive generator {g} uses series variables {sorted(stray)}")
    if params:
        by_monomial = mr_q_hat.split(tuple(zvars))
        gens = []
        for _, cofactor in sorted(by_monomial.items()):
            if cofactor.is_zero():
                continue
            gens.append(_project_params(cofactor, params))
        if gens:
            components.append(ExceptionalSet(tuple(gens), description="uniform vanishing of denominator coefficients"))
    return ExceptionalUnion(tuple(components))


def _project_params(p: MPoly, params: Sequence[str]) -> MPoly:
    stray = set(p.used_vars()) - set(params)
    if stray:
        raise ValueError(f"coefficient {p} uses non-parameter variables {sorted(stray)}")
    keep = tuple(sorted(params))
    return MPoly.const(0, keep) + p


def default_orders(m: int, r_max: int = 4, margin: int = 8) -> list[int]:
    return [2 * r_max + margin] * m


def reconstruct_recursive(
    f: RatFunc,
    zvars: Sequence[str],
    params: Sequence[str] = (),
    orders: Sequence[int] | None = None,
    certify_margin: int = 8,
    _path: tuple = (),
) -> MultiRecon | NotRationalWithinWindow:
    """Reconstruct f as P_hat / Q_hat over the series variables `zvars`.

    `orders` gives the series truncation per level; each level searches
    denominational order up to (order - certify_margin) // 2.
    """
    zvars = tuple(zvars)
    params = tuple(sorted(params))
    if not zvars:
        raise ValueError("need at least one series variable")
    if orders is None:
        orders = default_orders(len(zvars), margin=certify_margin)
    orders = tuple(orders)
    if len(orders) != len(zvars):
        raise ValueError(f"need one truncation order per variable: {len(zvars)}")
    r_max = (orders[0] - certify_margin) // 2
    if r_max < 1:
        raise ValueError(f"order {orders[0]} too small for margin {certify_margin}")

    declared = set(zvars) | set(params)
    used = set(f.num.used_vars()) | set(f.den.used_vars())
    stray = used - declared
    if stray:
        raise ValueError(f"input uses undeclared variables {sorted(stray)}")

    var = zvars[0]

    if f.is_zero():
        zero = MPoly.zero(tuple(sorted(declared)))
        one = MPoly.const(1, tuple(sorted(declared)))
        return MultiRecon(
            P_hat=zero, Q_hat=one,
            F_hat=ExceptionalUnion(()),
            trace=[LevelTrace(var=var, r0=0, order_used=orders[0], clearing=[], coefficient_path=_path)],
            zvars=zvars, params=params, verified_orders=orders,
        )

    if len(zvars) == 1:
        return _reconstruct_base(f, var, params, orders[0], r_max, certify_margin, _path)

    raw = series_of_ratfunc(f, var, orders[0], coeff_ring="ratfunc")
    found = minimal_order(raw, r_max=r_max, certify_margin=certify_margin)
    if found is None:
        return NotRationalWithinWindow(r_max=r_max, order=orders[0])
    r0 = found.r0

    # reconstruct the coefficients entering the solver as cleared pairs
    needed = 2 * r0
    sub_pairs: list[RatFunc] = []
    sub_sets: list[ExceptionalUnion] = []
    sub_trace: list[LevelTrace] = []
    for j in range(needed):
        sub = reconstruct_recursive(
            raw.coeffs[j], zvars[1:], params, orders[1:],
            certify_margin=certify_margin, _path=_path + (j,),
        )
        if isinstance(sub, NotRationalWithinWindow):
            return sub
        pair = RatFunc(sub.P_hat, sub.Q_hat)
        if not pair.cross_eq(raw.coeffs[j]):
            raise VerificationFailed(f"coefficient {j} reconstruction disagrees with its expansion")
        sub_pairs.append(pair)
        sub_sets.append(sub.F_hat)
        sub_trace.extend(sub.trace)

    spliced = TruncSeries(var, sub_pairs + list(raw.coeffs[needed:]))
    recon = reconstruct(spliced, r_max=r_max, certify_margin=certify_margin)
    if isinstance(recon, NotRationalWithinWindow):
        raise VerificationFailed("order certified on raw series but lost after splicing")
    if recon.r0 != r0:
        raise VerificationFailed(f"order changed after splicing: {r0} -> {recon.r0}")

    bases = [pair.den for pair in sub_pairs]
    cleared = clear_denominators(
        recon.P.padded(r0) if not recon.P.is_zero() else [RatFunc.const(0)] * r0,
        recon.Q.padded(r0 + 1),
        bases,
    )
    all_vars = tuple(sorted(declared))
    zvar_poly = MPoly.var(var)
    p_hat = MPoly.zero(all_vars)
    q_hat = MPoly.zero(all_vars)
    for j, c in enumerate(cleared.num_coeffs):
        p_hat = p_hat + c * zvar_poly**j
    for j, c in enumerate(cleared.den_coeffs):
        q_hat = q_hat + c * zvar_poly**j
    if q_hat.is_zero():
        raise VerificationFailed("cleared denominator is the zero polynomial")

    if not product_window_check(f, p_hat, q_hat, zvars, orders):
        raise VerificationFailed("product check failed on the truncation window")

    trace = [LevelTrace(
        var=var, r0=r0, order_used=orders[0],
        clearing=[(str(b), k) for b, k in zip(cleared.bases, cleared.exponents)],
        coefficient_path=_path,
    )] + sub_trace

    f_hat = assemble_exceptional(q_hat, zvars, params, sub_sets)
    return MultiRecon(
        P_hat=p_hat, Q_hat=q_hat, F_hat=f_hat, trace=trace,
        zvars=zvars, params=params, verified_orders=orders,
    )


def _reconstruct_base(
    f: RatFunc, var: str, params: tuple, order: int, r_max: int, margin: int, path: tuple
) -> MultiRecon | NotRationalWithinWindow:
    """Single-variable case over scalar, parameter-polynomial, or fraction ring."""
    all_vars = tuple(sorted(set(params) | {var}))
    series = series_of_ratfunc(f, var, order, coeff_ring="auto")
    sample = series.coeffs[0] if series.coeffs else None
    recon = reconstruct(series, r_max=r_max, certify_margin=margin)
    if isinstance(recon, NotRationalWithinWindow):
        return recon

    if isinstance(sample, RatFunc):
        cleared = clear_denominators(
            recon.P.padded(max(recon.r0, 1)) if not recon.P.is_zero() else [RatFunc.const(0)],
            recon.Q.padded(recon.r0 + 1),
            [],
        )
        p_hat = MPoly.zero(all_vars)
        q_hat = MPoly.zero(all_vars)
        zp = MPoly.var(var)
        for j, c in enumerate(cleared.num_coeffs):
            p_hat = p_hat + c * zp**j
        for j, c in enumerate(cleared.den_coeffs):
            q_hat = q_hat + c * zp**j
        if recon.r0 >= 1:
            gen_rf = RatFunc.of(series.coeffs[0]) if recon.r0 == 1 else recon.system_det
            gen = gen_rf.num
            desc = "numerator of the order-certifying determinant (fraction coefficients)"
            if gen.is_zero():
                raise VerificationFailed("certifying determinant vanished identically")
            if gen.is_constant() and not gen.constant_value().is_zero():
                exc = ExceptionalSet((), description=f"{desc}: nonzero constant, empty set")
            else:
                exc = ExceptionalSet((_project_params(gen, params),), description=desc)
            components: tuple = (exc,)
        else:
            components = ()
        f_hat = ExceptionalUnion(components)
        clearing = [(str(b), k) for b, k in zip(cleared.bases, cleared.exponents)]
    else:
        # scalar or parameter-polynomial coefficients: flatten directly
        p_hat = recon.P.to_mpoly().with_vars(all_vars) if not recon.P.is_zero() else MPoly.zero(all_vars)
        q_hat = recon.Q.to_mpoly().with_vars(all_vars)
        clearing = []
        if params and recon.r0 >= 1:
            pcoeffs = [c if isinstance(c, MPoly) else MPoly.const(c, params) for c in series.coeffs]
            ps = ParamSeries(var, params, pcoeffs)
            f_hat = ExceptionalUnion((exceptional_set(ps, recon),))
        else:
            f_hat = ExceptionalUnion(())

    if q_hat.is_zero():
        raise VerificationFailed("denominator is the zero polynomial")
    if not product_window_check(f, p_hat, q_hat, (var,), (order,)):
        raise VerificationFailed("product check failed on the truncation window")

    trace = [LevelTrace(var=var, r0=recon.r0, order_used=order,
                        clearing=clearing, coefficient_path=path)]
    return MultiRecon(
        P_hat=p_hat, Q_hat=q_hat, F_hat=f_hat, trace=trace,
        zvars=(var,), params=params, verified_orders=(order,),
    )


def product_window_check(f: RatFunc, p_hat: MPoly, q_hat: MPoly,
                         zvars: Sequence[str], orders: Sequence[int]) -> bool:
    """Coefficients of f * Q_hat - P_hat all vanish on the truncation window."""
    g = f * RatFunc.of(q_hat) - RatFunc.of(p_hat)
    if g.num.is_zero():
        return True
    return _window_zero(g, tuple(zvars), tuple(orders))


def _window_zero(g: RatFunc, zvars: tuple, orders: tuple) -> bool:
    series = series_of_ratfunc(g, zvars[0], orders[0], coeff_ring="ratfunc")
    if len(zvars) == 1:
        return all(c.is_zero() for c in series.coeffs)
    return all(_window_zero(c, zvars[1:], orders[1:]) for c in series.coeffs)


def cross_check_fieldtower(
    f: RatFunc,
    zvars: Sequence[str],
    params: Sequence[str] = (),
    orders: Sequence[int] | None = None,
    certify_margin: int = 8,
) -> Reconstruction | NotRationalWithinWindow:
    """Oracle: one reconstruction in the first variable over the full
    rational-function field of the remaining variables, no recursion."""
    zvars = tuple(zvars)
    if orders is None:
        orders = default_orders(len(zvars), margin=certify_margin)
    r_max = (orders[0] - certify_margin) // 2
    raw = series_of_ratfunc(f, zvars[0], orders[0], coeff_ring="ratfunc")
    return reconstruct(raw, r_max=r_max, certify_margin=certify_margin)


def tower_matches(mr: MultiRecon, tower: Reconstruction) -> bool:
    """Cross-multiplication equality of the recursive and oracle outputs."""
    p_rec = RatFunc.of(mr.P_hat)
    q_rec = RatFunc.of(mr.Q_hat)
    p_tow = tower.P.to_ratfunc()
    q_tow = tower.Q.to_ratfunc()
    return (p_rec * q_tow).cross_eq(p_tow * q_rec)
