"""Exception types and the Undecided result marker."""

from dataclasses import dataclass


class GalcohError(Exception):
    """Base class for all library errors."""


class InvalidPermutation(GalcohError):
    pass


class ClosureBoundExceeded(GalcohError):
    pass


class EnumerationBoundExceeded(GalcohError):
    pass


class MismatchedHoms(GalcohError):
    pass


class InconsistentAction(GalcohError):
    pass


class ActionMismatch(GalcohError):
    pass


class EquivarianceViolation(GalcohError):
    pass


class NotStable(GalcohError):
    pass


class NotNormal(GalcohError):
    pass


class NotAbelian(GalcohError):
    pass


class NotCentral(GalcohError):
    pass


class BoundExceeded(GalcohError):
    pass


class NotAnIdeal(GalcohError):
    pass


class NotInvariant(GalcohError):
    pass


class FactorBoundExceeded(GalcohError):
    pass


class MissingRamifiedPrime(GalcohError):
    pass


class NonEuclideanField(GalcohError):
    pass


class NoIsomorphismFound(GalcohError):
    """Raised when absence of an isomorphism is *proven* (with certificate)."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NotMultiplicativelyClosed(GalcohError):
    pass


class ParseError(GalcohError):
    pass


@dataclass(frozen=True)
class Undecided:
    """A bounded search was exhausted without an answer.

    Not an error: callers must treat it as an honest third truth value.
    `bound` records the search bound so the outcome is reproducible.
    """

    bound: int
    detail: str = ""

    def __bool__(self):
        raise TypeError("Undecided has no truth value; test with isinstance")
