"""Exception hierarchy shared by every module of the package."""


class BVError(Exception):
    """Base class for all package errors."""


class DomainError(BVError, ValueError):
    """An evaluation point lies outside the admissible range."""


class ArgumentError(BVError, ValueError):
    """An argument is malformed (c > d, n = 0, negative weight, ...)."""


class ConstructionError(BVError, ValueError):
    """A segment or function violates its construction invariants."""


class PreconditionError(BVError, ValueError):
    """A mathematical precondition (symmetry, CDF shape) does not hold."""


class ConsistencyError(BVError, ArithmeticError):
    """Two routes to the same quantity disagree beyond tolerance."""


class SpecFileError(BVError, ValueError):
    """A JSON function spec could not be parsed.

    ``path`` points at the offending element, e.g. ``segments[2].coeffs``.
    """

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class ChainViolationError(BVError, AssertionError):
    """An inequality chain failed; ``report`` carries the offending values."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
