"""Exception types shared across the package."""


class TameconfError(Exception):
    """Base class for library errors."""


class InvalidInput(TameconfError, ValueError):
    """An argument violates an operation's precondition."""


class UnsupportedScope(TameconfError, ValueError):
    """The request is well formed but outside what the library handles."""


class ResourceLimit(TameconfError, RuntimeError):
    """A hard size cap was exceeded."""


class PartialResult(TameconfError, RuntimeError):
    """Work stopped with part of the answer undetermined."""

    def __init__(self, message, unresolved=None):
        super().__init__(message)
        self.unresolved = unresolved


class SchemaError(TameconfError, ValueError):
    """A corpus document does not match the expected layout."""

    def __init__(self, message, locator=None):
        if locator is not None:
            message = f"{locator}: {message}"
        super().__init__(message)
        self.locator = locator
