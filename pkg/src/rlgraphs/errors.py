"""Exception types raised across the package."""

from __future__ import annotations


class GraphError(Exception):
    """Base class for every error raised by rlgraphs."""


class IndexOutOfRange(GraphError, IndexError):
    pass


class LoopEdge(GraphError, ValueError):
    pass


class SameVertex(GraphError, ValueError):
    pass


class SizeMismatch(GraphError, ValueError):
    pass


class InvalidParameter(GraphError, ValueError):
    pass


class InvalidParameterWarning(UserWarning):
    """Emitted when a construction parameter is degenerate but still usable."""


class ResourceLimit(GraphError):
    """A request exceeds a configured size or time budget."""


class Overflow(ResourceLimit, ValueError):
    pass


class TooLarge(ResourceLimit, ValueError):
    pass


class Timeout(ResourceLimit):
    pass


class MalformedGraph6(GraphError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class CertificateFailed(GraphError):
    pass
