"""Exception types shared across the package.

Everything raised on purpose derives from CollatzPathError so callers can
catch one type at the boundary.  Domain/range violations also subclass
ValueError to stay friendly to generic handling.
"""

from __future__ import annotations


class CollatzPathError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CollatzPathError, ValueError):
    """An argument is outside the domain an operation is defined on."""


class RangeError(CollatzPathError, ValueError):
    """An argument or result falls outside a supported finite range."""


class CycleGuardExceeded(CollatzPathError, RuntimeError):
    """An iteration ran past the configured step ceiling.

    The 3x+1 iteration is not known to terminate for every start, so every
    iterating operation takes a step ceiling and fails loudly instead of
    spinning forever.  Hitting the guard means either an astronomically long
    path or a genuinely divergent orbit; the exception reports the start and
    the ceiling so the run can be retried with a higher limit.
    """

    def __init__(self, start: int, limit: int):
        self.start = start
        self.limit = limit
        super().__init__(
            f"step count exceeded the cycle guard ({limit}) iterating from {start}"
        )


class DegenerateFitError(CollatzPathError, ValueError):
    """A least-squares fit was requested on degenerate input."""


class DegenerateStatsError(CollatzPathError, ValueError):
    """Statistics were requested on too few observations."""


class ParseError(CollatzPathError, ValueError):
    """A number expression failed to parse.

    Carries the byte offset of the failure and a short description of what
    was expected there.
    """

    def __init__(self, text: str, offset: int, expected: str):
        self.text = text
        self.offset = offset
        self.expected = expected
        super().__init__(f"offset {offset}: expected {expected} in {text!r}")


class CheckpointError(CollatzPathError):
    """Base class for checkpoint serialization problems."""


class VersionUnsupported(CheckpointError):
    """The checkpoint file declares a format version this code cannot read."""


class ChecksumMismatch(CheckpointError):
    """The checkpoint payload does not match its recorded CRC-32."""


class MalformedField(CheckpointError):
    """A checkpoint line is missing, duplicated, or fails to parse."""


class OriginMismatch(CheckpointError):
    """A checkpoint was written for a different origin expression."""
