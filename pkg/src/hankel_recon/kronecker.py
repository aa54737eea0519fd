"""Univariate rational reconstruction from a truncated series.

Given c_0..c_{N-1} over an exact coefficient ring, find polynomials P (degree
<= r0-1) and Q (degree <= r0) with (sum c_j z^j) * Q = P through index N-1,
where r0 is the certified minimal order of the series:

* zero series: (P, Q) = (0, 1) with r0 = 0;
* r0 >= 1: the denominator coefficients solve the r0 x r0 Hankel system with
  matrix entries c_0..c_{2r0-2} and right side c_{r0}..c_{2r0-1}.  Cramer's
  rule is used with cleared divisions: each unknown is set to its Cramer
  numerator determinant and the constant term to the negated system
  determinant, so the output stays polynomial over rings without division
  (for r0 = 1 this reduces to Q = -c_0 + c_1 z).  The numerator follows by
  triangular convolution a_j = sum_{i<=j} q_{j-i} * c_i.

Every certificate is re-verified before being returned: the linear recurrence
must hold on all testable shifts and the full product convolution must vanish
through index N-1.  Any failure aborts with `VerificationFailed` rather than
returning a bad certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InsufficientTruncation, VerificationFailed
from .hankel import DetTableBuilder, bareiss_det, minimal_order
from .scalars import GaussRat
from .series import TruncSeries
from .upoly import UPoly

NORMALIZATION_CLEARED = "cleared"   # constant term of Q = -(leading principal Hankel det)
NORMALIZATION_MONIC = "monic"       # rescaled so the top denominator coefficient is 1


@dataclass
class Reconstruction:
    """Certified output (P, Q) with its data window and normalization tag."""

    r0: int
    P: UPoly
    Q: UPoly
    verified_to: int
    witness_shift: int | None
    normalization: str
    system_det: object | None = None   # the r0 x r0 Hankel determinant, when r0 >= 1

    def to_report(self) -> dict:
        return {
            "r0": self.r0,
            "P": str(self.P),
            "Q": str(self.Q),
            "verified_to": self.verified_to,
            "witness_shift": self.witness_shift,
            "normalization": self.normalization,
        }


@dataclass
class NotRationalWithinWindow:
    """Finding: no order r <= r_max has all testable Hankel minors zero."""

    r_max: int
    order: int

    def to_report(self) -> dict:
        return {
            "finding": "NotRationalWithinWindow",
            "r_max": self.r_max,
            "order": self.order,
        }


def _coeff_ring_one(series: TruncSeries):
    return series.coeffs[0].ring_one()


def reconstruct(
    series: TruncSeries,
    r_max: int = 8,
    certify_margin: int = 8,
) -> Reconstruction | NotRationalWithinWindow:
    """Reconstruct (P, Q) with series * Q = P through index N-1."""
    n = series.order
    if n < 2 * r_max + certify_margin:
        raise InsufficientTruncation(2 * r_max + certify_margin - 1, n, "reconstruction")

    one = _coeff_ring_one(series)
    zero = one.ring_zero()
    var = series.var

    if series.is_zero():
        return Reconstruction(
            r0=0,
            P=UPoly(var, []),
            Q=UPoly(var, [one]),
            verified_to=n - 1,
            witness_shift=None,
            normalization=NORMALIZATION_CLEARED,
        )

    found = minimal_order(series, r_max=r_max, certify_margin=certify_margin)
    if found is None:
        return NotRationalWithinWindow(r_max=r_max, order=n)
    r0 = found.r0

    den_coeffs, sys_det = _cramer_denominator(series, r0)
    q = UPoly(var, den_coeffs)
    if q.is_zero():
        raise VerificationFailed(
            f"order {r0} certified on too small a window: denominator collapsed to zero"
        )

    num_coeffs = []
    for j in range(r0):
        acc = zero
        for i in range(j + 1):
            acc = acc + den_coeffs[j - i] * series.coeffs[i]
        num_coeffs.append(acc)
    p = UPoly(var, num_coeffs)

    # trailing zero den coefficients matter for the shift alignment, so the
    # unstripped length-(r0+1) list is passed rather than the UPoly
    shift_top = n - 1 - r0
    if not verify_recurrence(series, den_coeffs, range(0, shift_top + 1)):
        raise VerificationFailed("linear recurrence check failed on the data window")
    if not verify_product(series, p, q, upto=n - 1):
        raise VerificationFailed("product convolution check failed on the data window")

    return Reconstruction(
        r0=r0,
        P=p,
        Q=q,
        verified_to=n - 1,
        witness_shift=found.witness_shift,
        normalization=NORMALIZATION_CLEARED,
        system_det=sys_det,
    )


def _cramer_denominator(series: TruncSeries, r0: int):
    """Denominator coefficients [q_0..q_r0] by cleared Cramer's rule.

    q_j for j >= 1 is the Cramer numerator determinant for the unknown in
    column r0 - j; q_0 is the negated system determinant.
    """
    builder = DetTableBuilder(series, include_bordered=False)
    sys_det = builder.value(0, r0 - 1)
    rhs = [series.coeff(r0 + i) for i in range(r0)]
    matrix = [[series.coeffs[i + k] for k in range(r0)] for i in range(r0)]
    den = [None] * (r0 + 1)
    den[0] = -sys_det
    for col in range(r0):
        replaced = [
            [rhs[i] if k == col else matrix[i][k] for k in range(r0)]
            for i in range(r0)
        ]
        den[r0 - col] = bareiss_det(replaced)
    return den, sys_det


def _den_coeff_list(q, sample_one) -> list:
    if isinstance(q, UPoly):
        if q.is_zero():
            return [sample_one.ring_zero()]
        return list(q.coeffs)
    return list(q)


def verify_recurrence(series: TruncSeries, q, shifts: Iterable[int]) -> bool:
    """Check sum_{j=0..d} c_{s+j} * q_{d-j} = 0 exactly for each shift s."""
    one = _coeff_ring_one(series)
    coeffs = _den_coeff_list(q, one)
    d = len(coeffs) - 1
    for s in shifts:
        series.require(s + d, "recurrence check")
        acc = one.ring_zero()
        for j in range(d + 1):
            acc = acc + series.coeffs[s + j] * coeffs[d - j]
        if not acc.is_zero():
            return False
    return True


def verify_product(series: TruncSeries, p, q, upto: int) -> bool:
    """Check that every coefficient of series * Q - P vanishes through `upto`."""
    one = _coeff_ring_one(series)
    series.require(upto, "product check")
    qc = _den_coeff_list(q, one)
    if isinstance(p, UPoly):
        pc = list(p.coeffs)
    else:
        pc = list(p)
    zero = one.ring_zero()
    for k in range(upto + 1):
        acc = zero
        for i in range(min(k, len(qc) - 1) + 1):
            acc = acc + qc[i] * series.coeffs[k - i]
        if k < len(pc):
            acc = acc - pc[k]
        if not acc.is_zero():
            return False
    return True


def bm_linear_complexity(series: TruncSeries) -> int:
    """Length of the shortest linear recurrence generating the sequence.

    Berlekamp-Massey over the scalar field; an independent oracle for the
    minimal order of scalar series.
    """
    seq = list(series.coeffs)
    for c in seq:
        if not isinstance(c, GaussRat):
            raise TypeError("linear complexity needs scalar coefficients")
    zero, one = GaussRat(0), GaussRat(1)
    cpoly = [one]
    bpoly = [one]
    length = 0
    m = 1
    b = one
    for n, s_n in enumerate(seq):
        d = s_n
        for i in range(1, length + 1):
            if i < len(cpoly):
                d = d + cpoly[i] * seq[n - i]
        if d.is_zero():
            m += 1
            continue
        if 2 * length <= n:
            old = list(cpoly)
            coef = d / b
            grown = max(len(cpoly), len(bpoly) + m)
            cpoly = cpoly + [zero] * (grown - len(cpoly))
            for i, bc in enumerate(bpoly):
                cpoly[i + m] = cpoly[i + m] - coef * bc
            length = n + 1 - length
            bpoly = old
            b = d
            m = 1
        else:
            coef = d / b
            grown = max(len(cpoly), len(bpoly) + m)
            cpoly = cpoly + [zero] * (grown - len(cpoly))
            for i, bc in enumerate(bpoly):
                cpoly[i + m] = cpoly[i + m] - coef * bc
            m += 1
    return length


@dataclass
class SampleCheck:
    """Per-point denominator evaluations; diagnostic only."""

    points: list
    values: list
    zero_points: list

    def to_report(self) -> dict:
        return {
            "points": [str(p) for p in self.points],
            "values": [str(v) for v in self.values],
            "zero_points": [str(p) for p in self.zero_points],
        }


def denominator_sample_check(q: UPoly, sample_points: Sequence[GaussRat]) -> SampleCheck:
    """Evaluate the denominator at scalar points and flag zeros."""
    values = []
    zeros = []
    for pt in sample_points:
        val = q.eval_at(GaussRat.of(pt))
        values.append(val)
        if val.is_zero():
            zeros.append(pt)
    return SampleCheck(points=list(sample_points), values=values, zero_points=zeros)


def with_monic_denominator(recon: Reconstruction) -> Reconstruction:
    """Rescaled view with the top denominator coefficient equal to 1.

    Only meaningful over a field (scalar or rational-function coefficients);
    the equality class of P/Q is unchanged.
    """
    if recon.Q.is_zero():
        raise ValueError("cannot rescale a zero denominator")
    top = recon.Q.coeffs[-1]
    inv_top = top.ring_one().exact_div(top)
    return Reconstruction(
        r0=recon.r0,
        P=recon.P.map_coeffs(lambda c: c * inv_top),
        Q=recon.Q.map_coeffs(lambda c: c * inv_top),
        verified_to=recon.verified_to,
        witness_shift=recon.witness_shift,
        normalization=NORMALIZATION_MONIC,
        system_det=recon.system_det,
    )
