"""Exception hierarchy shared by the whole package."""


class FitkitError(Exception):
    """Base class for all errors raised by fitkit."""


class ParseError(FitkitError):
    """Syntax or semantic error in a polynomial string.

    `position` is the 0-based character offset the error was detected at.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CoefficientError(FitkitError):
    """A coefficient cannot be represented in the requested field."""


class RingMismatchError(FitkitError):
    """An operation was attempted between values of different rings."""


class ShapeError(FitkitError):
    """Matrix or complex shapes are inconsistent with the operation."""


class PointError(FitkitError):
    """An evaluation point is malformed or does not lie on the variety."""


class BudgetExceededError(FitkitError):
    """The Groebner engine exhausted its reduction-step budget."""


class TruncationError(FitkitError):
    """A free resolution was cut off before the degree an operation needs."""


class InputError(FitkitError):
    """A job document violates the input schema."""
