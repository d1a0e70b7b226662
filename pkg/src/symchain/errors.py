"""Exception hierarchy shared by all symchain modules."""


class SymchainError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SymchainError):
    """Malformed or out-of-contract input (bad text, wrong sizes, bad flags)."""


class DomainError(SymchainError):
    """Arguments outside the mathematical domain of an operation."""


class ResourceLimitError(SymchainError):
    """Refusing to run: the instance exceeds a hard cost guard."""


class ConstructionError(SymchainError):
    """A constructive routine could not complete; carries diagnostics."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
