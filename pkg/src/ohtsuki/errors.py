"""Exception hierarchy."""


class OhtsukiError(Exception):
    """Base class for all errors raised by this package."""


class PrecisionError(OhtsukiError):
    """A series coefficient was requested beyond its known truncation order."""


class NotInvertibleError(OhtsukiError, ZeroDivisionError):
    """Division by a series or ring element that is not a unit."""


class PDParseError(OhtsukiError, ValueError):
    """Malformed or inconsistent planar-diagram input."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DiagramError(OhtsukiError, ValueError):
    """An operation was applied to a diagram that does not satisfy its preconditions."""


class PresentationError(DiagramError):
    """The diagram is not a unit-framed algebraically split link."""


class ResourceLimitError(OhtsukiError):
    """A computation would exceed the configured crossing budget."""


class ConsistencyError(OhtsukiError):
    """An internal mathematical identity failed; indicates a computational fault."""
