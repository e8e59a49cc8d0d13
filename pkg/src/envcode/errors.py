"""Exception taxonomy shared by all envcode modules."""


class EnvcodeError(Exception):
    """Base class for all envcode errors."""


class DomainError(EnvcodeError, ValueError):
    """An argument is outside an operation's domain (bad symbol, bad parameter)."""


class ResourceLimitError(EnvcodeError, RuntimeError):
    """A configured resource budget would be exceeded; the message names the budget."""


class DecodeError(EnvcodeError, ValueError):
    """A bit stream or container cannot be decoded (truncated or malformed)."""


class FormatError(DecodeError):
    """A container fails structural validation (magic, version, mode)."""
