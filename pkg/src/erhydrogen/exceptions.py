"""Exception hierarchy shared across the package."""


class ERHydrogenError(Exception):
    """Base class for all package errors."""


class ConfigurationError(ERHydrogenError):
    """Unknown dataset, malformed config file, or bad option value."""


class DomainError(ERHydrogenError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(ERHydrogenError, ValueError):
    """An input object violates its declared invariants."""


class SolverError(ERHydrogenError, RuntimeError):
    """The radial eigensolver failed to produce a bound spectrum."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})
