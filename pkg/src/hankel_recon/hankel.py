"""Hankel matrices, exact determinant tables, and the minimal-order search.

For a series with coefficients c_0..c_{N-1} in an exact coefficient ring,
the Hankel matrix of shift s and size m is the (m+1) x (m+1) matrix with
entry (i, j) = c_{s+i+j}.  Its determinant is written A(s, m).  Two boundary
conventions close the recursions: A(s, -1) = 1 and A(s, 0) = c_s, and the
shift s = -1 denotes the bordered matrix whose corner entry is 1 (virtual
coefficient c_{-1} = 1).

Determinants are computed two ways, which must agree bit-exactly:

* fraction-free (Bareiss) elimination, whose divisions are exact in any
  integral domain, and
* condensation via the identity
      A(s, m-1) * A(s+2, m-1) - A(s+1, m-1)^2 = A(s, m) * A(s+2, m-2)
  solved for A(s, m) whenever the divisor A(s+2, m-2) is nonzero, with
  fallback to fraction-free elimination on a zero divisor.

The minimal order r0 of a series is the smallest r such that every testable
A(s, r) vanishes.  With finitely many coefficients this is certified only on
the window s <= N-1-2r; callers record that window with the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import EmptySeries, InsufficientTruncation
from .series import TruncSeries


def hankel_matrix(series: TruncSeries, shift: int, size: int) -> list[list]:
    """The (size+1) x (size+1) matrix with entry (i, j) = c_{shift+i+j}."""
    if shift < 0 or size < 0:
        raise ValueError("shift and size must be nonnegative")
    top = shift + 2 * size
    series.require(top, f"Hankel matrix shift={shift} size={size}")
    return [
        [series.coeffs[shift + i + j] for j in range(size + 1)]
        for i in range(size + 1)
    ]


def bordered_matrix(series: TruncSeries, size: int) -> list[list]:
    """Shift -1 variant: first row/column [1, c_0, ..., c_{size-1}]."""
    if size < 0:
        raise ValueError("size must be nonnegative")
    one = _ring_one(series)
    if size == 0:
        return [[one]]
    top = 2 * size - 1
    series.require(top, f"bordered Hankel matrix size={size}")

    def entry(i: int, j: int):
        k = i + j - 1
        return one if k < 0 else series.coeffs[k]

    return [[entry(i, j) for j in range(size + 1)] for i in range(size + 1)]


def bareiss_det(rows: list[list]):
    """Fraction-free determinant over any integral domain with exact_div."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    m = [list(r) for r in rows]
    sample = m[0][0]
    one = sample.ring_one()
    zero = sample.ring_zero()
    sign = 1
    prev = one
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - lead * row_k[j]
                row_i[j] = num.exact_div(prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def cofactor_det(rows: list[list]):
    """Reference determinant by cofactor expansion; exponential, oracle use only."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    zero = rows[0][0].ring_zero()
    total = zero
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def hankel_det(series: TruncSeries, shift: int, size: int):
    """Exact determinant A(shift, size) by fraction-free elimination."""
    return bareiss_det(hankel_matrix(series, shift, size))


def extended_det(series: TruncSeries, size: int):
    """Exact determinant A(-1, size) of the bordered matrix."""
    return bareiss_det(bordered_matrix(series, size))


def _ring_one(series: TruncSeries):
    if not series.coeffs:
        raise EmptySeries("series has no coefficients")
    return series.coeffs[0].ring_one()


CONDENSATION = "condensation"
FRACTION_FREE = "fraction-free"


@dataclass
class DetTable:
    """Determinant table A(s, m) for -1 <= s, 0 <= m, within truncation."""

    source_order: int
    entries: dict = field(default_factory=dict)   # (s, m) -> ring element
    methods: dict = field(default_factory=dict)   # (s, m) -> method tag

    def value(self, shift: int, size: int):
        key = (shift, size)
        if key not in self.entries:
            raise KeyError(f"A({shift},{size}) not in table")
        return self.entries[key]

    def method(self, shift: int, size: int) -> str:
        return self.methods[(shift, size)]

    def rows(self, s_max: int | None = None, m_max: int | None = None) -> Iterator[tuple]:
        """(s, m, value, method) sorted by (m, s), optionally filtered."""
        for (s, m) in sorted(self.entries, key=lambda k: (k[1], k[0])):
            if s_max is not None and s > s_max:
                continue
            if m_max is not None and m > m_max:
                continue
            yield s, m, self.entries[(s, m)], self.methods[(s, m)]


class DetTableBuilder:
    """Incremental condensation table over a fixed series."""

    def __init__(self, series: TruncSeries, include_bordered: bool = True):
        if series.order == 0:
            raise EmptySeries("cannot tabulate determinants of an empty series")
        self.series = series
        self.order = series.order
        self.include_bordered = include_bordered
        self._one = _ring_one(series)
        self._levels: dict[int, dict[int, object]] = {}
        self._methods: dict[tuple, str] = {}

    def shift_range(self, size: int) -> range:
        lo = -1 if self.include_bordered else 0
        return range(lo, self.order - 2 * size)

    def level(self, size: int) -> dict[int, object]:
        if size in self._levels:
            return self._levels[size]
        if size == 0:
            row = {}
            for s in self.shift_range(0):
                row[s] = self._one if s == -1 else self.series.coeffs[s]
                self._methods[(s, 0)] = FRACTION_FREE
            self._levels[0] = row
            return row
        prev = self.level(size - 1)
        below = self.level(size - 2) if size >= 2 else None
        row = {}
        for s in self.shift_range(size):
            divisor = self._one if size == 1 else below[s + 2]
            if divisor.is_zero():
                if s == -1:
                    row[s] = extended_det(self.series, size)
                else:
                    row[s] = hankel_det(self.series, s, size)
                self._methods[(s, size)] = FRACTION_FREE
            else:
                num = prev[s] * prev[s + 2] - prev[s + 1] * prev[s + 1]
                row[s] = num.exact_div(divisor)
                self._methods[(s, size)] = CONDENSATION
        self._levels[size] = row
        return row

    def value(self, shift: int, size: int):
        if size == -1:
            return self._one
        row = self.level(size)
        if shift not in row:
            needed = 2 * size - 1 if shift == -1 else shift + 2 * size
            raise InsufficientTruncation(needed, self.order, f"A({shift},{size})")
        return row[shift]

    def table(self, m_max: int) -> DetTable:
        t = DetTable(source_order=self.order)
        for m in range(m_max + 1):
            if not self.shift_range(m):
                break
            row = self.level(m)
            for s, v in row.items():
                t.entries[(s, m)] = v
                t.methods[(s, m)] = self._methods[(s, m)]
        return t


def det_table(series: TruncSeries, m_max: int, s_max: int | None = None) -> DetTable:
    """Condensation determinant table up to size m_max.

    All shifts the truncation supports are computed (the recursion needs
    them); `s_max` only filters the reporting helpers.
    """
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    top_needed = 2 * m_max - 1  # the bordered entry at the deepest level
    if top_needed > series.order - 1:
        raise InsufficientTruncation(top_needed, series.order, "determinant table")
    builder = DetTableBuilder(series)
    table = builder.table(m_max)
    if s_max is not None:
        table.entries = {k: v for k, v in table.entries.items() if k[0] <= s_max}
        table.methods = {k: v for k, v in table.methods.items() if k[0] <= s_max}
    return table


@dataclass
class MinimalOrder:
    """Certified minimal order, with its witness and data window."""

    r0: int
    witness_shift: int | None
    max_shift_tested: int

    def to_report(self) -> dict:
        return {
            "r0": self.r0,
            "witness_shift": self.witness_shift,
            "max_shift_tested": self.max_shift_tested,
        }


def minimal_order(series: TruncSeries, r_max: int, certify_margin: int = 8) -> MinimalOrder | None:
    """Smallest r in 1..r_max with A(s, r) = 0 for every testable shift.

    Returns None when no such r exists within the window ("not found").  The
    result records a witness shift s with A(s, r0-1) != 0 when one exists, and
    the largest shift whose vanishing was actually tested.  Levels whose
    testable shift range is empty cannot be certified and are skipped.
    """
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    if certify_margin < 0:
        raise ValueError("certify_margin must be nonnegative")
    need = 2 * r_max + certify_margin
    if series.order < need:
        raise InsufficientTruncation(need - 1, series.order, "minimal order search")
    builder = DetTableBuilder(series, include_bordered=False)
    for r in range(1, r_max + 1):
        smax = series.order - 1 - 2 * r
        if smax < 0:
            continue
        row = builder.level(r)
        if all(row[s].is_zero() for s in range(0, smax + 1)):
            witness = None
            prev_row = builder.level(r - 1)
            for s in range(0, series.order - 2 * (r - 1)):
                if not prev_row[s].is_zero():
                    witness = s
                    break
            return MinimalOrder(r0=r, witness_shift=witness, max_shift_tested=smax)
    return None
