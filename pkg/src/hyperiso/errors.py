"""Exception hierarchy shared by every module.

Each exception carries a stable ``code`` (its class name) that the command
line tool reports in machine-readable output.
"""


class HyperisoError(Exception):
    """Base class for all library errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ContextMismatch(HyperisoError):
    pass


class NotUnit(HyperisoError):
    pass


class NoSquareRoot(HyperisoError):
    pass


class BadBranch(HyperisoError):
    pass


class NonIntegral(HyperisoError):
    pass


class NonIntegralIntegral(NonIntegral):
    """Raised when a t-integration would need a division by p that is not exact."""


class NotInvertible(HyperisoError):
    pass


class BadInit(HyperisoError):
    pass


class NotSeparable(HyperisoError):
    pass


class BadInitialData(HyperisoError):
    pass


class WeierstrassImage(HyperisoError):
    pass


class SingularReduction(HyperisoError):
    pass


class WeierstrassPoint(HyperisoError):
    pass


class CollidingRoots(HyperisoError):
    pass


class NotRational(HyperisoError):
    pass


class NoSolution(HyperisoError):
    pass


class PoleAtPoint(HyperisoError):
    pass


class SingularH(HyperisoError):
    pass


class InsufficientPrecision(UserWarning):
    """Working precision is below N + floor(log_p n); output digits are not guaranteed."""
