"""Exception hierarchy shared by all guespec modules."""


class GuespecError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GuespecError, ValueError):
    """Arguments outside the mathematical domain of an operation."""


class AccuracyError(GuespecError, ArithmeticError):
    """Requested accuracy is unreachable at the given precision configuration."""


class AnchoringError(AccuracyError):
    """No admissible anchor point: the boundary series never reaches the
    requested tolerance within the allowed range."""


class SingularTransformationError(GuespecError, ZeroDivisionError):
    """A Bäcklund/Weyl transformation hit a vanishing divisor.

    Carries the offending generator name in ``generator``.
    """

    def __init__(self, generator, message=""):
        self.generator = generator
        super().__init__(message or f"singular transformation at generator {generator!r}")


class SingularRecurrenceError(GuespecError, ZeroDivisionError):
    """A lattice recurrence hit a vanishing entry or difference."""


class PoleEncounteredError(GuespecError, RuntimeError):
    """Adaptive integration underflowed its step near a movable pole.

    ``t_last`` is the last trusted abscissa, ``y_last`` the state there.
    """

    def __init__(self, t_last, y_last=None, message=""):
        self.t_last = t_last
        self.y_last = y_last
        super().__init__(message or f"movable pole encountered near t = {t_last:.6g}")


class SolutionIntegrityError(GuespecError, RuntimeError):
    """A solved trajectory violated its defining residual gate (branch loss)."""

    def __init__(self, location, residual, message=""):
        self.location = location
        self.residual = residual
        super().__init__(
            message
            or f"residual gate violated at t = {location:.6g} (residual {residual:.3e})"
        )
