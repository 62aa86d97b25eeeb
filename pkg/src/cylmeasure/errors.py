"""Exception types shared across the package.

The CLI maps these onto exit codes: ``InputError`` (and its subclasses)
exits with 2, ``NumericError`` with 3.
"""


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class UndecidableError(InputError):
    """A symbolic decision was requested for data that cannot support it.

    Raised when a series-convergence question is asked about a tabulated
    tail: a finite table of values carries no information about the tail,
    so neither verdict would be honest.
    """


class NumericError(RuntimeError):
    """A numeric target could not be met.

    Carries optional keyword context (e.g. ``achieved=...`` for an error
    bound that fell short of the requested tolerance, or ``sample=...``
    for the input that produced a non-finite value).
    """

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context
