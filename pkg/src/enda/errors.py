"""Exception hierarchy shared by every module."""

from __future__ import annotations


class EndaError(Exception):
    """Base class for all library errors."""


class LiteralSyntaxError(EndaError, ValueError):
    """A ring, element, polynomial or matrix literal does not match its grammar."""


class NotIrreducible(EndaError, ValueError):
    pass


class WrongRing(EndaError, TypeError):
    pass


class UnsupportedDomain(EndaError):
    pass


class UnsupportedRing(EndaError):
    pass


class DivisionByZero(EndaError, ZeroDivisionError):
    pass


class NotAUnit(EndaError, ValueError):
    pass


class AlgebraMismatch(EndaError, ValueError):
    pass


class GeneratorOutOfRange(EndaError, ValueError):
    pass


class NonCanonicalCoefficient(EndaError, ValueError):
    pass


class RankNotOne(EndaError, ValueError):
    pass


class NotMatrixUnits(EndaError, ValueError):
    pass


class FactorizationFailed(EndaError):
    pass


class ShapeMismatch(EndaError, ValueError):
    pass


class NotInvertible(EndaError, ValueError):
    pass


class UnsupportedVariety(EndaError):
    pass


class NotFromRecipe(EndaError):
    pass


class NotAnAutomorphism(EndaError, ValueError):
    pass


class IllFormedTwist(EndaError, ValueError):
    """The twist polynomial cannot define a bijection of the algebra."""


class CocycleViolated(IllFormedTwist):
    pass


class NotHomogeneous(IllFormedTwist):
    pass


class NotSymmetric(IllFormedTwist):
    pass


class ScalarIncompatible(IllFormedTwist):
    """Twisted addition is inconsistent with scalar multiplication over K."""


class TwistInCharZero(EndaError, ValueError):
    pass


class WrongDegree(EndaError, ValueError):
    pass


class PrerequisiteFailed(EndaError, ValueError):
    pass
