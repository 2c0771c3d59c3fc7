"""Exception types shared across the package."""

from __future__ import annotations


class FormatError(ValueError):
    """A text file (graph, colouring, decomposition, ...) is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GuardError(RuntimeError):
    """An enumeration would exceed its configured budget.

    ``projected`` is the estimated number of candidate states, ``limit`` the
    budget that refused it.
    """

    def __init__(self, message: str, projected: int | None = None, limit: int | None = None):
        self.projected = projected
        self.limit = limit
        if projected is not None:
            message = f"{message} (projected {projected}, limit {limit})"
        super().__init__(message)


class DecodeError(ValueError):
    """A vertex set handed to the gadget decoder is not a colourful copy of H."""


class GadgetDefect(AssertionError):
    """Internal consistency of a gadget failed where the construction guarantees it."""
