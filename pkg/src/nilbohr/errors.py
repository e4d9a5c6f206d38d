"""Exception types shared across the package."""


class NilBohrError(Exception):
    """Base class for domain errors raised by this package."""


class BoundExceeded(NilBohrError):
    """An enumeration would exceed its configured size cap."""


class BudgetExceeded(NilBohrError):
    """An exhaustive check would exceed the subset-evaluation budget."""


class EmptyFamily(NilBohrError):
    """A density was requested over an empty interval family."""


class PreconditionViolated(NilBohrError):
    """Inputs are outside the regime where a check is guaranteed."""


class ParseError(NilBohrError):
    """Malformed set file or literal."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class NotFound(NilBohrError):
    """A bounded search finished without producing an object."""


class Stuck(NilBohrError):
    """The avoider recursion has no admissible next term on its window.

    This is a mathematical outcome rather than a failure; ``step`` is the
    index j whose term could not be chosen and ``p`` the terms chosen so far.
    """

    def __init__(self, step, p):
        self.step = step
        self.p = tuple(p)
        super().__init__(f"stuck at step {step} after P={list(self.p)}")


class VerificationFailed(NilBohrError):
    """A post-hoc exact check disagreed with a construction."""
