"""Exception types shared across the package."""


class QDeformError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QDeformError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class PoleError(QDeformError, ArithmeticError):
    """Evaluation hit a pole. ``where`` carries the offending location."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class ContractError(QDeformError, TypeError):
    """A request does not match the kind of object it was made against."""


class NumericError(QDeformError, RuntimeError):
    """An iterative method failed to converge or produced non-finite data."""
