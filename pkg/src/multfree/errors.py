"""Exception hierarchy shared by every layer of the toolkit."""

from __future__ import annotations


class MultfreeError(Exception):
    """Base class for all toolkit errors."""


class NonPrime(MultfreeError, ValueError):
    pass


class SizeCapExceeded(MultfreeError):
    pass


class CtxMismatch(MultfreeError, ValueError):
    """Operands live over different fields."""


class DivisionByZero(MultfreeError, ZeroDivisionError):
    pass


class NoSuchRoot(MultfreeError, ValueError):
    """The field has no element of the requested multiplicative order."""


class ShapeMismatch(MultfreeError, ValueError):
    pass


class AmbientMismatch(MultfreeError, ValueError):
    pass


class GroupMismatch(MultfreeError, ValueError):
    pass


class NotASubgroup(MultfreeError, ValueError):
    pass


class NotARepresentation(MultfreeError, ValueError):
    """Matrix images fail the homomorphism property."""


class NotAnAntiInvolution(MultfreeError, ValueError):
    pass


class AlgebraNotClosed(MultfreeError, ValueError):
    pass


class RandomBudgetExhausted(MultfreeError):
    """The randomized irreducibility test ran out of attempts."""


class SplittingFieldInsufficient(MultfreeError):
    """A composition factor is irreducible but not absolutely irreducible.

    ``end_dim`` is the dimension of its endomorphism ring; enlarging the
    extension degree by a multiple of it splits the factor.
    """

    def __init__(self, message: str, end_dim: int = 0, suggested_k: int = 0):
        super().__init__(message)
        self.end_dim = end_dim
        self.suggested_k = suggested_k


class UncertifiedInventory(MultfreeError, ValueError):
    pass


class PreconditionFailed(MultfreeError):
    pass


class SpecParseError(MultfreeError, ValueError):
    """Malformed spec string or scenario file; ``location`` says where."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
