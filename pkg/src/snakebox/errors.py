"""Exception types shared across the package."""


class SnakeboxError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SnakeboxError, ValueError):
    """Bad input: malformed graphs, out-of-range sizes, weight inequalities."""


class CapExceededError(SnakeboxError):
    """A hard resource cap was hit (e.g. exhaustive solve above the variable cap)."""
