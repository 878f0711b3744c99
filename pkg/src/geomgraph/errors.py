"""Shared exception types."""

from __future__ import annotations


class InputError(ValueError):
    """Raised when input data violates a documented precondition.

    The message always says which object and which rule failed; parsers
    additionally name the offending line of the input file.
    """
