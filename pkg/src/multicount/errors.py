"""Exception hierarchy shared by every module.

The CLI reports the class name of any :class:`MulticountError` verbatim and
exits with a nonzero status, so names are part of the public surface.
"""


class MulticountError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MulticountError, ValueError):
    pass


class OddTotalDegree(MulticountError, ValueError):
    pass


class MissingSupport(MulticountError, ValueError):
    pass


class UnsupportedSupport(MulticountError, ValueError):
    pass


class InfeasibleShift(MulticountError, ValueError):
    pass


class BudgetExceeded(MulticountError, RuntimeError):
    pass


class NotInG0(MulticountError, ValueError):
    pass


class WrongColour(MulticountError, ValueError):
    pass


class InvalidMove(MulticountError, ValueError):
    pass


class ZeroDenominator(MulticountError, ZeroDivisionError):
    pass


class SetOverlap(MulticountError, ValueError):
    pass


class StructuralViolation(MulticountError, ValueError):
    pass


class DivergentBound(MulticountError, ArithmeticError):
    pass


class InvalidBound(MulticountError, ValueError):
    pass


class PreconditionViolation(MulticountError, ValueError):
    pass


class Unachievable(MulticountError, ValueError):
    pass


class ZeroCoefficient(MulticountError, ArithmeticError):
    pass


class UnsupportedEntry(MulticountError, ValueError):
    pass
