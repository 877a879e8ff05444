"""Exception hierarchy shared by every stage of the computation."""

from __future__ import annotations


class MilnorError(Exception):
    """Base class for all errors raised by :mod:`milnorfib`."""


class SingularMatrix(MilnorError):
    pass


class NonIntegralSolution(MilnorError):
    pass


class NonPositiveMultiplicity(MilnorError):
    pass


class DivisionByZero(MilnorError, ZeroDivisionError):
    pass


class FieldMismatch(MilnorError):
    pass


class UnsupportedDegree(MilnorError):
    pass


class TruncationExhausted(MilnorError):
    pass


class IdenticalBranches(MilnorError):
    pass


class NotVanishingAtOrigin(MilnorError):
    pass


class NotSquareFree(MilnorError):
    pass


class InvalidGerm(MilnorError):
    pass


class InfiniteOrder(MilnorError):
    pass


class PairingFailure(MilnorError):
    pass


class PairingIncomplete(MilnorError):
    pass


class MissingVerticalData(MilnorError):
    pass


class NotBlowDownable(MilnorError):
    pass


class NotAbsorbable(MilnorError):
    pass


class Unsupported(MilnorError):
    pass


class TooLarge(MilnorError):
    pass


class InvalidGraph(MilnorError):
    pass


class SchemaError(MilnorError):
    """Malformed input document (CLI exit code 2)."""


class PipelineError(MilnorError):
    """A computation failure tagged with the pipeline stage that raised it."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause
