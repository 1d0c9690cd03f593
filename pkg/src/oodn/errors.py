"""Shared exception base for the oodn package."""


class OodnError(Exception):
    """Base class for all errors raised by oodn."""
