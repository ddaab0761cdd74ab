"""Exception types shared across the package.

The split mirrors the CLI exit codes: malformed parameters are an
``InvariantError`` (exit 1), inputs that are well formed but outside an
operation's domain are a ``PreconditionError`` (exit 2).
"""


class InvariantError(ValueError):
    """A parameter record or series violates its type invariants."""


class PreconditionError(ValueError):
    """An operation was called outside the domain where it is defined."""


class NearZeroError(PreconditionError):
    """f(z) is too close to zero for z f'(z)/f(z) to be trusted."""
