"""Exception types shared across the package."""

from __future__ import annotations


class BlowupsError(Exception):
    """Base class for domain errors raised by this package."""


class SchemaError(BlowupsError):
    """A JSON document does not match its declared file format."""


class NotContractibleError(BlowupsError):
    """A tensor admits no final component at some nonempty stage."""


class SearchLimitError(BlowupsError):
    """An enumeration or search exceeded its guard limit."""
