"""Exception hierarchy shared by every zdg module."""

from __future__ import annotations


class ZdgError(Exception):
    """Base class for all library errors."""


class ParseError(ZdgError, ValueError):
    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f" in {text!r}"
        super().__init__(message)


class UnsupportedConstruction(ParseError):
    pass


class MalformedDescriptor(ZdgError, ValueError):
    pass


class OrderCapExceeded(ZdgError):
    pass


class NotUnital(ZdgError):
    pass


class EmptyGraph(ZdgError, ValueError):
    pass


class EmptySubset(ZdgError, ValueError):
    pass


class TooLarge(ZdgError):
    pass


class UnsupportedFormat(ZdgError, ValueError):
    pass


class EnumerationTruncated(ZdgError):
    pass


class UnknownCheck(ZdgError, KeyError):
    pass


class ResourceCap(ZdgError):
    pass


class IntegrityConflict(ZdgError):
    pass


class IoFailure(ZdgError, OSError):
    pass
