"""Exception types shared across the package."""


class DoubleTraceError(Exception):
    """Base class for all package errors."""


class InputError(DoubleTraceError):
    """Malformed input: bad vertex/edge indices, invalid structure."""


class ParseError(InputError):
    """Graph file could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(DoubleTraceError):
    """An operation's stated precondition does not hold (e.g. disconnected input)."""


class CapacityError(DoubleTraceError):
    """Input exceeds a hard size threshold; distinct from a negative verdict."""


class SurgeryInapplicableError(DoubleTraceError):
    """Walk surgery preconditions are not met at the requested vertex."""


class InternalConsistencyError(DoubleTraceError):
    """A guaranteed-to-succeed step failed; indicates a bug, not bad input."""
