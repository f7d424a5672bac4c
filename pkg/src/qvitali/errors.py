"""Exception hierarchy shared by every qvitali module."""


class QError(Exception):
    """Base class for all library errors."""


class DomainError(QError, ValueError):
    """An argument lies outside the domain of a deformed operation."""


class SingularOperand(QError, ZeroDivisionError):
    """The factor ``1 + (1 - q) y`` vanishes."""


class PreconditionViolation(QError, ValueError):
    """Inputs fall outside the range a check or theorem is stated for."""


class LexError(QError):
    def __init__(self, message: str, column: int):
        super().__init__(f"lex error: {message} at column {column}")
        self.column = column


class ParseError(QError):
    def __init__(self, message: str, column: int | None = None):
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"parse error: {message}{where}")
        self.column = column


class ModeError(QError):
    """Exact evaluation met an operation that is not closed over the rationals."""


class ConvergenceWarning(UserWarning):
    """Adaptive quadrature stopped at its depth limit before reaching tolerance."""
