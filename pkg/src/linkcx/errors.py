"""Exception types raised by the library."""


class ComplexError(ValueError):
    """A 2-complex description violates a structural invariant."""


class DiagramError(ValueError):
    """A diagram description is inconsistent or not drawable."""


class MoveError(ValueError):
    """A move was applied at a stale or ill-typed site."""


class FormatError(ValueError):
    """A text file failed to parse.  Carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CrossingCapError(RuntimeError):
    """A state sum was requested for more crossings than the configured cap."""
