"""Shared exception types."""


class MonodimerError(Exception):
    """Base class for package errors."""


class InvalidGraphError(MonodimerError, ValueError):
    """Malformed graph input (bad size, self-loop, label problems)."""


class EmbeddingError(MonodimerError, ValueError):
    """Coordinates / rotation system do not describe a plane drawing."""


class GeometryError(MonodimerError, ValueError):
    """A cycle does not trace a simple polygon in the drawing."""


class SizeCapError(MonodimerError, ValueError):
    """Instance exceeds the hard cap for exhaustive enumeration."""


class ExactArithmeticError(MonodimerError, ArithmeticError):
    """Exact polynomial division failed (internal invariant violation)."""


class DomainError(MonodimerError, ValueError):
    """Argument outside the mathematical domain of a formula."""
