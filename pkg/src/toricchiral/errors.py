"""Exception hierarchy.

``MathError`` subclasses signal a violated mathematical precondition (CLI exit 1);
``InputError`` subclasses signal unreadable or malformed input (CLI exit 2).
"""


class ToricError(Exception):
    """Base class for all package errors."""


class MathError(ToricError):
    pass


class InputError(ToricError):
    pass


class UnboundedRegion(MathError):
    pass


class MalformedFan(InputError):
    pass


class NonSimplicialCone(MathError):
    pass


class RayNotInCone(MathError):
    pass


class ConeNotInFan(MathError):
    pass


class FanNotComplete(MathError):
    pass


class LengthMismatch(InputError):
    pass


class NotCartier(MathError):
    pass


class NotSemiample(MathError):
    pass


class DegreeNotMultipleOfD(MathError):
    pass


class NonIntegralExponent(MathError):
    pass


class NotDivisible(MathError):
    pass


class NotAnticanonical(MathError):
    pass


class NotBigAndNef(MathError):
    pass


class DegreeMismatch(MathError):
    pass


class DimensionMismatch(MathError):
    pass


class NoSolution(MathError):
    pass


class RecursionDepthExceeded(MathError):
    pass


class GradeMismatch(MathError):
    pass


class GradeOverflow(MathError):
    pass


class UndeterminedProduct(MathError):
    """Raised when the product theorem does not determine a product."""

    def __init__(self, message: str, degrees: tuple = ()):
        super().__init__(message)
        self.degrees = degrees
