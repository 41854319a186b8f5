"""Exception types raised across the package.

Every error derives from :class:`IntersectiveError`, itself a ``ValueError``,
so callers can catch bad input with one clause.
"""


class IntersectiveError(ValueError):
    """Base error. ``index`` is the 1-based family position at fault, if any."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class OutOfRange(IntersectiveError):
    pass


class DisallowedValue(IntersectiveError):
    pass


class NotSquareFree(IntersectiveError):
    pass


class Unfactorable(IntersectiveError):
    pass


class NotPrime(IntersectiveError):
    pass


class NonCoprimeModuli(IntersectiveError):
    pass


class Overflow(IntersectiveError):
    pass


class BasisMissingPrime(IntersectiveError):
    pass


class FamilyError(IntersectiveError):
    pass


class TooFew(FamilyError):
    pass


class TooMany(FamilyError):
    pass


class NotDistinct(FamilyError):
    pass


class Inconclusive(IntersectiveError):
    pass


class NonResidue(IntersectiveError):
    pass


class PreconditionViolated(IntersectiveError):
    pass


class NotOneMod8(IntersectiveError):
    pass


class InvalidCertificate(IntersectiveError):
    pass


class BudgetExceeded(IntersectiveError):
    pass
