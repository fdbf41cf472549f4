"""Exception taxonomy shared by the whole package.

The CLI maps these onto exit codes, so library code should raise the most
specific class that applies.
"""


class EotypesError(Exception):
    """Base class for all errors raised by this package."""


class PolyParseError(EotypesError):
    """Malformed polynomial expression (CLI exit code 2)."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ConstraintError(EotypesError):
    """Input violates a mathematical precondition, e.g. p not prime or
    p dividing a degree (CLI exit code 3)."""


class SingularCurveError(EotypesError):
    """The curve fails the smoothness check or a necessary condition for
    smoothness (CLI exit code 4)."""


class InternalInvariantError(EotypesError):
    """A quantity that theory guarantees failed to hold; indicates a bug,
    not bad input (CLI exit code 5)."""
