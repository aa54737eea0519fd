"""Parameter-aware layer: exceptional sets, degree detection, vanishing loci.

Coefficient functions of the parameters are represented as exact polynomials
over QQ(i).  An `ExceptionalSet` is the common zero set of finitely many
parameter polynomials; a union of such sets keeps its components tagged
(concatenating generator lists would intersect, not unite).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import EmptySeries, DuplicateSamplePoint, InconsistentSamples, ZeroGenerator
from .kronecker import Reconstruction
from .mpoly import MPoly, univar_gcd
from .scalars import GaussRat
from .series import ParamSeries, TruncSeries


class AllSpace:
    """Marker: the vanishing locus is the whole parameter space."""

    def __repr__(self):
        return "AllSpace"

    def __eq__(self, other):
        return isinstance(other, AllSpace)

    def __hash__(self):
        return hash("AllSpace")


ALL_SPACE = AllSpace()


@dataclass(frozen=True)
class ExceptionalSet:
    """Common zero set of the generator polynomials in the parameters.

    An empty generator list denotes the empty set.  Zero-polynomial
    generators are forbidden; a locus equal to the whole space must be
    represented by the distinct `AllSpace` marker instead.
    """

    generators: tuple
    description: str = ""

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if not isinstance(g, MPoly):
                raise TypeError("generators must be parameter polynomials")
            if g.is_zero():
                raise ZeroGenerator(f"zero generator in exceptional set ({self.description})")
        object.__setattr__(self, "generators", gens)

    def is_empty_set(self) -> bool:
        if not self.generators:
            return True
        return any(g.is_constant() and not g.constant_value().is_zero() for g in self.generators)

    def contains(self, point: Sequence[GaussRat], params: Sequence[str]) -> bool:
        if not self.generators:
            return False
        assignment = dict(zip(params, (GaussRat.of(p) for p in point)))
        return all(g.eval_all(assignment).is_zero() for g in self.generators)

    def to_report(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "description": self.description,
        }


@dataclass(frozen=True)
class ExceptionalUnion:
    """Union of tagged exceptional components (membership: any component)."""

    components: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def contains(self, point: Sequence[GaussRat], params: Sequence[str]) -> bool:
        return any(c.contains(point, params) for c in self.components)

    def all_generators(self) -> list[MPoly]:
        return [g for c in self.components for g in c.generators]

    def is_empty_set(self) -> bool:
        return all(c.is_empty_set() for c in self.components)

    def to_report(self) -> list:
        return [c.to_report() for c in self.components]


@dataclass
class DegreeBound:
    """Certified polynomial degree bound from a coefficient window."""

    k0: int
    is_zero_function: bool

    def to_report(self) -> dict:
        return {"k0": self.k0, "is_zero_function": self.is_zero_function}


@dataclass
class NotPolynomialWithinWindow:
    """Finding: the last stored coefficient is nonzero, no bound certifiable."""

    order: int

    def to_report(self) -> dict:
        return {"finding": "NotPolynomialWithinWindow", "order": self.order}


def detect_degree_bound(ps: ParamSeries) -> DegreeBound | NotPolynomialWithinWindow:
    """Largest index with a nonzero coefficient, when the tail window is clean."""
    if ps.order == 0:
        raise EmptySeries("cannot bound the degree of an empty series")
    top = None
    for j in range(ps.order - 1, -1, -1):
        if not ps.coeffs[j].is_zero():
            top = j
            break
    if top is None:
        return DegreeBound(k0=0, is_zero_function=True)
    if top == ps.order - 1:
        return NotPolynomialWithinWindow(order=ps.order)
    return DegreeBound(k0=top, is_zero_function=False)


@dataclass
class DegreeProfile:
    """Specialization degrees k(w) at sample points, with bucket counts."""

    samples: list            # (point tuple, degree or None)
    buckets: dict            # degree -> count; None key for identically zero

    def to_report(self) -> dict:
        return {
            "samples": [
                {"point": [str(x) for x in pt], "degree": deg}
                for pt, deg in self.samples
            ],
            "buckets": {str(k): v for k, v in sorted(self.buckets.items(), key=lambda kv: (kv[0] is None, kv[0]))},
        }


def degree_profile(ps: ParamSeries, points: Sequence[Sequence[GaussRat]], workers: int = 1) -> DegreeProfile:
    """Per-point specialization degree: largest j with c_j(point) != 0."""

    def one(point):
        pt = tuple(GaussRat.of(x) for x in point)
        assignment = dict(zip(ps.params, pt))
        deg = None
        for j in range(ps.order - 1, -1, -1):
            if not ps.coeffs[j].eval_all(assignment).is_zero():
                deg = j
                break
        return pt, deg

    if workers > 1 and len(points) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(one, points))
    else:
        samples = [one(p) for p in points]

    buckets: dict = {}
    for _, deg in samples:
        buckets[deg] = buckets.get(deg, 0) + 1
    return DegreeProfile(samples=samples, buckets=buckets)


def interpolate_coefficients(
    samples: Sequence[tuple],
    w_degree_bound: int,
    param: str = "w",
    var: str = "z",
) -> ParamSeries:
    """Fit degree-bounded parameter polynomials through sampled z-polynomials.

    `samples` holds (parameter value, z-coefficient list) pairs.  The first
    w_degree_bound+1 points determine each coefficient by Lagrange
    interpolation; any further points are consistency checks.
    """
    if w_degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    pts: list[GaussRat] = []
    rows: list[list[GaussRat]] = []
    for w_val, coeffs in samples:
        w_val = GaussRat.of(w_val)
        if any(w_val == p for p in pts):
            raise DuplicateSamplePoint(f"sample point {w_val} repeated")
        pts.append(w_val)
        if isinstance(coeffs, TruncSeries):
            coeffs = list(coeffs.coeffs)
        rows.append([GaussRat.of(c) for c in coeffs])
    need = w_degree_bound + 1
    if len(pts) < need:
        raise ValueError(f"need at least {need} sample points, got {len(pts)}")
    width = max((len(r) for r in rows), default=0)
    for r in rows:
        r.extend([GaussRat(0)] * (width - len(r)))

    base_pts = pts[:need]
    basis = _lagrange_basis(base_pts, param)
    coeff_polys: list[MPoly] = []
    for j in range(width):
        acc = MPoly.zero((param,))
        for i in range(need):
            acc = acc + basis[i].scale(rows[i][j])
        coeff_polys.append(acc)

    for extra_idx in range(need, len(pts)):
        assignment = {param: pts[extra_idx]}
        for j in range(width):
            fitted = coeff_polys[j].eval_all(assignment)
            if fitted != rows[extra_idx][j]:
                raise InconsistentSamples(
                    f"sample at {pts[extra_idx]} contradicts degree-{w_degree_bound} fit "
                    f"for coefficient {j}: expected {rows[extra_idx][j]}, fitted {fitted}"
                )
    return ParamSeries(var, (param,), coeff_polys)


def _lagrange_basis(points: Sequence[GaussRat], param: str) -> list[MPoly]:
    w = MPoly.var(param)
    basis = []
    for i, xi in enumerate(points):
        num = MPoly.const(1, (param,))
        den = GaussRat(1)
        for j, xj in enumerate(points):
            if i == j:
                continue
            num = num * (w - MPoly.const(xj, (param,)))
            den = den * (xi - xj)
        basis.append(num.scale(den.inverse()))
    return basis


def vanishing_locus(ps: ParamSeries) -> ExceptionalSet | AllSpace:
    """Complement of the set where some coefficient survives.

    One parameter: the single generator is the monic GCD of all coefficients.
    Several parameters: the nonzero coefficients themselves generate.  When
    every coefficient is the zero polynomial the locus is the whole space.
    """
    nonzero = [c for c in ps.coeffs if not c.is_zero()]
    if not nonzero:
        return ALL_SPACE
    if len(ps.params) == 1:
        p = ps.params[0]
        g = nonzero[0]
        lead = g.leading_coeff()
        g = g.scale(lead.inverse())
        for c in nonzero[1:]:
            g = univar_gcd(g, c, p)
            if g.is_constant():
                break
        return ExceptionalSet((g,), description="common vanishing of all coefficients")
    return ExceptionalSet(tuple(nonzero), description="common vanishing of all coefficients")


def exceptional_set(ps: ParamSeries, recon: Reconstruction) -> ExceptionalSet:
    """Parameter locus where the reconstructed denominator degenerates.

    Single generator: the series constant term when r0 = 1, else the r0 x r0
    leading principal Hankel determinant used by the solver.  An empty set is
    returned when the generator is a nonzero constant; the zero series (r0=0)
    has no exceptional locus at all.
    """
    if recon.r0 == 0:
        return ExceptionalSet((), description="zero series, empty locus")
    if recon.r0 == 1:
        gen = ps.coeffs[0]
        desc = "constant-term locus (order 1)"
    else:
        gen = recon.system_det
        desc = f"leading principal Hankel determinant locus (order {recon.r0})"
        if gen is None:
            raise ValueError("reconstruction lacks its system determinant")
    if not isinstance(gen, MPoly):
        gen = MPoly.const(gen, ps.params)
    if gen.is_zero():
        raise ZeroGenerator("generator vanished identically: certified order was not minimal")
    if gen.is_constant() and not gen.constant_value().is_zero():
        return ExceptionalSet((), description=f"{desc}: nonzero constant, empty set")
    return ExceptionalSet((gen,), description=desc)


@dataclass
class NontrivialityReport:
    """Denominator specializations at points outside the exceptional set."""

    checked: list       # (point, in_set, nontrivial)
    violations: list    # points outside the set whose denominator collapsed

    def ok(self) -> bool:
        return not self.violations

    def to_report(self) -> dict:
        return {
            "checked": [
                {"point": [str(x) for x in pt], "in_exceptional_set": ins, "denominator_nonzero": nz}
                for pt, ins, nz in self.checked
            ],
            "violations": [[str(x) for x in pt] for pt in self.violations],
        }


def nontriviality_check(
    recon: Reconstruction,
    exc: ExceptionalSet | ExceptionalUnion,
    points: Sequence[Sequence[GaussRat]],
    params: Sequence[str],
) -> NontrivialityReport:
    """Outside the exceptional set, some denominator coefficient must survive."""
    checked = []
    violations = []
    for point in points:
        pt = tuple(GaussRat.of(x) for x in point)
        ins = exc.contains(pt, params)
        assignment = dict(zip(params, pt))
        nontrivial = False
        for c in recon.Q.coeffs:
            if isinstance(c, MPoly):
                val = c.eval_all(assignment)
            else:
                val = c
            if not val.is_zero():
                nontrivial = True
                break
        checked.append((pt, ins, nontrivial))
        if not ins and not nontrivial:
            violations.append(pt)
    return NontrivialityReport(checked=checked, violations=violations)
