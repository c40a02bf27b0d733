"""Exception hierarchy shared by every layer of the package.

Each error carries a stable ``code`` (the class name) so the HTTP facade
can map failures onto structured JSON bodies without string matching.
"""

from __future__ import annotations


class BenchError(Exception):
    """Base class for all package errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# -- dataset / CSV -----------------------------------------------------------

class MalformedCsv(BenchError):
    pass


class NonMonotonicTimestamps(BenchError):
    pass


class DuplicateSeriesName(BenchError):
    pass


class InvalidDataset(BenchError):
    pass


class InvalidProfile(BenchError):
    pass


# -- operator preconditions --------------------------------------------------

class OutOfRange(BenchError):
    pass


class EmptyInput(BenchError):
    pass


class EmptyMatrix(BenchError):
    pass


class LengthMismatch(BenchError):
    pass


class LabelMismatch(BenchError):
    pass


class AllMissingColumn(BenchError):
    pass


class EmptyCollection(BenchError):
    pass


class UnknownSeries(BenchError):
    pass


# -- engines / runner / service ----------------------------------------------

class UnknownDataset(BenchError):
    pass


class UnknownEngine(BenchError):
    pass


class UnknownOperator(BenchError):
    pass


class DuplicateDataset(BenchError):
    pass


class EngineUnavailable(BenchError):
    pass


class UnsupportedMode(BenchError):
    pass


class InvalidParameter(BenchError):
    pass


class NoResults(BenchError):
    pass


class OperatorError(BenchError):
    """Wraps a failure raised while an engine executed an operator."""

    def __init__(self, message: str, cause: Exception | None = None):
        super().__init__(message)
        self.cause = cause

    @property
    def code(self) -> str:
        if isinstance(self.cause, BenchError):
            return self.cause.code
        return "OperatorError"
