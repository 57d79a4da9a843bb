"""Exception types shared across the package."""


class LameBallError(Exception):
    """Base class for package errors."""


class DomainError(LameBallError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class UsageError(LameBallError, ValueError):
    """Inputs are mutually inconsistent (length mismatch, insufficient grid, ...)."""


class NumericalError(LameBallError, ArithmeticError):
    """A numerical procedure failed to converge."""


class ParameterError(DomainError):
    """Lamé constants violate mu > 0 or 2 mu + lambda > 0."""
