"""Exception hierarchy shared by every supctl module."""

from __future__ import annotations


class SupctlError(Exception):
    """Base class for all library errors."""


class InputError(SupctlError, ValueError):
    """Malformed or out-of-domain arguments (unknown events, bad files)."""


class ConsistencyError(SupctlError):
    """Controllable/observable flags disagree on a shared event."""


class InclusionError(SupctlError):
    """A required language inclusion K <= L does not hold.

    ``witness`` is a shortest string of the left language missing from the
    right one.
    """

    def __init__(self, message: str, witness: tuple[str, ...]):
        super().__init__(message)
        self.witness = witness


class BoundError(SupctlError):
    """An exhaustive oracle was asked to work beyond its state bound."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.reason = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TheoremViolation(SupctlError):
    """A sufficient condition held but the promised inclusion failed.

    Raised by :func:`supctl.coordination.compare`; ``diagnostics`` carries the
    full report dictionary so the instance can be replayed.
    """

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics
