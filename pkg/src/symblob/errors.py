"""Exception types shared across the package."""


class SymblobError(Exception):
    """Base class for library errors."""


class ConfigurationError(SymblobError):
    """A request cannot be expressed in the configured indeterminates."""


class PoleError(SymblobError, ZeroDivisionError):
    """A denominator vanished under a specialization."""


class PreconditionError(SymblobError, ValueError):
    """An operation was called outside its domain."""


class BudgetError(SymblobError, RuntimeError):
    """An enumeration exceeded its resource budget."""


class VerificationError(SymblobError, AssertionError):
    """A mechanical check failed; ``payload`` carries the counterexample."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload
