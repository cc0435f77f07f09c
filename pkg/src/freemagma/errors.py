"""Exception types shared across the package."""

from __future__ import annotations


class FreeMagmaError(Exception):
    """Base class for all package-specific errors."""


class CapacityError(FreeMagmaError):
    """A requested enumeration exceeds the configured size cap."""


class TermParseError(FreeMagmaError, ValueError):
    """Malformed term text or bitstring encoding.

    Carries the offending input and the 0-based position where parsing failed.
    """

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"{reason} at position {position} in {text!r}")


class UnsupportedVariantError(FreeMagmaError, ValueError):
    """The operation is not defined for this generating-family variant."""


class ExactDivisionError(FreeMagmaError, ArithmeticError):
    """Internal error: an integer division that must be exact left a remainder."""
