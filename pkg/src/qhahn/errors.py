"""Exception hierarchy.  Every error the library raises on bad input derives
from :class:`QHahnError` so the CLI can map it to exit status 2."""


class QHahnError(Exception):
    pass


class ParameterError(QHahnError, ValueError):
    """Inadmissible parameter set (q a root of unity, alpha1 = 0, ...)."""


class PreconditionError(QHahnError, ValueError):
    """A hypothesis of the coefficient formulas fails, e.g. V(1) = 0."""


class FieldError(QHahnError, ArithmeticError):
    """Mixed field contexts or a square root missing from the active field."""


class PoleError(QHahnError, ZeroDivisionError):
    pass


class ZeroDenominatorError(QHahnError, ZeroDivisionError):
    pass


class TruncationError(QHahnError, ValueError):
    """A truncated matrix is too small for the requested exact region."""
