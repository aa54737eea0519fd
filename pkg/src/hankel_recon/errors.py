"""Exception types shared across the package.

Mathematical *findings* (e.g. "not rational within the data window") are not
exceptions; they are returned as result objects by the operation concerned.
Everything here signals bad input, insufficient data, or an internal
inconsistency that must abort the computation.
"""

from __future__ import annotations


class HankelReconError(Exception):
    """Base class for all package errors."""


class InsufficientTruncation(HankelReconError):
    """A computation needs a series coefficient beyond the stored order."""

    def __init__(self, needed_index: int, available: int, context: str = ""):
        self.needed_index = needed_index
        self.available = available
        msg = f"need coefficient index {needed_index}, only {available} stored"
        if context:
            msg = f"{context}: {msg}"
        super().__init__(msg)


class DenominatorSingularAtOrigin(HankelReconError):
    """Series expansion requested where the denominator is not invertible."""


class ExactDivisionError(HankelReconError):
    """A ring division that was expected to be exact left a remainder."""


class VerificationFailed(HankelReconError):
    """Internal consistency check failed; no certificate is emitted."""


class EmptySeries(HankelReconError):
    """An operation received a series with no coefficients."""


class DuplicateSamplePoint(HankelReconError):
    """Interpolation received the same sample point twice."""


class InconsistentSamples(HankelReconError):
    """An extra interpolation sample contradicts the fitted coefficients."""


class ZeroDenominatorPolynomial(HankelReconError):
    """A clearing base or rational-function denominator is the zero polynomial."""


class ZeroGenerator(HankelReconError):
    """An exceptional-set generator came out as the zero polynomial."""


class ExprParseError(HankelReconError):
    """Malformed polynomial / rational expression text."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (column {position + 1})"
        super().__init__(message)


class SpecParseError(HankelReconError):
    """Malformed job specification."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
