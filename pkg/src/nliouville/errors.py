"""Exception hierarchy shared by every module."""


class LiouvilleError(Exception):
    """Base class for all package errors."""


class DomainError(LiouvilleError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class CriticalPointError(DomainError):
    """The gradient vanishes, so the degenerate operator cannot be assembled."""


class BracketError(LiouvilleError, ValueError):
    """A root-finding bracket does not enclose a sign change."""


class ConvergenceError(LiouvilleError, RuntimeError):
    """Iterative refinement stalled above the requested tolerance.

    ``estimates`` holds the last (at most three) refinement estimates so that
    the failure can be diagnosed without rerunning.
    """

    def __init__(self, message, estimates=()):
        super().__init__(message)
        self.estimates = tuple(estimates)[-3:]
