"""Exception hierarchy shared by every module in the package."""

from __future__ import annotations


class AlphaFracError(Exception):
    """Base class; ``kind`` is the class name used in CLI diagnostics."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class ParseError(AlphaFracError, ValueError):
    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"{message} (at offset {position})")


class DomainError(AlphaFracError, ArithmeticError):
    """An expression node received an argument outside its domain."""


class NotDifferentiable(AlphaFracError):
    """Symbolic differentiation hit a node without a derivative rule (``abs``)."""


class NonConvergence(AlphaFracError):
    """A limit estimate failed to stabilize.

    The partial estimate is kept on ``estimate`` so callers can still report it.
    """

    def __init__(self, message: str, estimate=None):
        self.estimate = estimate
        super().__init__(message)


class InvalidK(AlphaFracError, ValueError):
    pass


class SingularityError(AlphaFracError, ValueError):
    pass


class BudgetExceeded(AlphaFracError):
    def __init__(self, message: str, result=None):
        self.result = result
        super().__init__(message)


class PreconditionViolation(AlphaFracError, ValueError):
    pass


class NoSignChange(AlphaFracError):
    pass
