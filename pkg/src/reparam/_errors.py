"""Shared exception types."""


class ReparamError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ReparamError, ValueError):
    """Input lies outside the (open) domain of a map."""


class ShapeError(ReparamError, ValueError):
    """Input has an incompatible shape or length."""


class NotPositiveDefiniteError(DomainError):
    """Matrix is not positive definite.

    ``index`` is the index of the failing leading minor.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"matrix is not positive definite (leading minor {index})")


class SingularMatrixError(ReparamError, ValueError):
    """Linear system is singular or numerically rank-deficient."""


class ParseError(ReparamError, ValueError):
    """Textual parametrization spec could not be parsed.

    ``position`` is the character offset of the failure.
    """

    def __init__(self, position, message):
        self.position = position
        super().__init__(f"parse error at position {position}: {message}")


class ConvergenceError(ReparamError, RuntimeError):
    """Optimization failed to produce a usable state."""
