"""Exception hierarchy shared by every module."""

from __future__ import annotations


class DesignForgeError(Exception):
    """Base class for all errors raised by design_forge."""


class ParameterError(DesignForgeError, ValueError):
    """Parameters are invalid or do not match the requested kind."""


class TrivialParametersError(ParameterError):
    """k lies outside 2..n-2, where every Latin rectangle qualifies trivially."""


class StructuralError(DesignForgeError, ValueError):
    """A grid has the wrong shape or holds a symbol outside its alphabet."""


class BoundsError(DesignForgeError, IndexError):
    """A row, column or symbol index is out of range."""


class PreconditionError(DesignForgeError, ValueError):
    """The input is well formed but violates the operation's precondition."""


class ClassificationError(DesignForgeError, ValueError):
    """An array cannot be classified (for instance it has empty cells)."""


class GuardError(DesignForgeError, RuntimeError):
    """A brute-force routine refused parameters beyond its safety guard."""


class ParseError(DesignForgeError, ValueError):
    """A rectangle file is malformed; ``lineno`` points at the offending line."""

    def __init__(self, message: str, lineno: int | None = None) -> None:
        self.lineno = lineno
        super().__init__(message if lineno is None else f"line {lineno}: {message}")
