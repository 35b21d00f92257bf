"""Exception types shared across the package.

The split mirrors the CLI exit-code contract: malformed input (exit 2)
versus structurally valid input that violates an operation's precondition
(exit 3).
"""


class UltrameasureError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(UltrameasureError):
    """Malformed input: parse failures, foreign elements, domain mismatches."""


class PreconditionError(UltrameasureError):
    """Well-formed input that violates an operation's precondition."""
