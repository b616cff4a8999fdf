"""Exception and warning types shared across the package."""


class FrickeError(Exception):
    """Base class for all errors raised by this package."""


class LevelMismatch(FrickeError, ValueError):
    pass


class NotDivisible(FrickeError, ValueError):
    pass


class NotCoprime(FrickeError, ValueError):
    pass


class CycloZeroDivision(FrickeError, ZeroDivisionError):
    pass


class ZeroLeadingTerm(FrickeError, ZeroDivisionError):
    """Raised when inverting a series that is zero to its certified order."""


class InsufficientOrder(FrickeError, ValueError):
    pass


class SeriesTooLarge(FrickeError, MemoryError):
    """A result would exceed the ``QSERIES_MAX_TERMS`` guard."""


class InvalidVector(FrickeError, ValueError):
    pass


class LevelNotDivisibleBy4(FrickeError, ValueError):
    pass


class PreconditionViolated(FrickeError, ValueError):
    pass


class NotInGamma1Upper(FrickeError, ValueError):
    pass


class KindMismatch(FrickeError, ValueError):
    pass


class NoSolution(FrickeError):
    pass


class NonConstantQuotient(FrickeError):
    pass


class ToleranceExceeded(FrickeError):
    pass


class LatticePoint(FrickeError, ValueError):
    pass


class DivergenceWarning(RuntimeWarning):
    pass


class SlowConvergence(RuntimeWarning):
    pass
