"""Exception types shared across the package."""

__all__ = [
    "DefectseqError",
    "ArgumentError",
    "ContractivityError",
    "SizeCapError",
    "TupleFormatError",
    "ConsistencyError",
]


class DefectseqError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(DefectseqError):
    """An argument violates a documented precondition."""


class ContractivityError(DefectseqError):
    """An operation that requires a row contraction received a tuple whose
    row defect has a significantly negative eigenvalue."""


class SizeCapError(DefectseqError):
    """A computation would materialize more data than the configured size
    cap allows."""


class TupleFormatError(DefectseqError):
    """A tuple file or report file is malformed or internally inconsistent."""


class ConsistencyError(DefectseqError):
    """An internal cross-check failed.

    Raised when two quantities that must agree by theorem disagree
    numerically; it signals numerical breakdown or a bug, not bad input.
    """
