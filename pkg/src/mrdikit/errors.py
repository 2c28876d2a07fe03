"""Exception hierarchy shared by every mrdikit module."""

from __future__ import annotations


class MrdiError(Exception):
    """Base class for all errors raised by mrdikit."""


class DocumentError(MrdiError, ValueError):
    """A document is malformed; ``path`` points at the offending node."""

    def __init__(self, path: str, message: str):
        self.path = path or "/"
        self.message = message
        super().__init__(f"{self.path}: {message}")


class ReferenceCycleError(DocumentError):
    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("/_refs", "reference cycle: " + " -> ".join(cycle))


class SchemaError(MrdiError, ValueError):
    """A schema could not be compiled."""


class AlgebraError(MrdiError, ValueError):
    """An algebraic object violates its invariants."""


class ParentMismatchError(AlgebraError, TypeError):
    """Operands do not live in the same (identical) parent ring."""


class SerializationError(MrdiError):
    """A value could not be saved or a document could not be loaded."""


class UpgradeError(MrdiError):
    pass


class CompressionError(MrdiError, ValueError):
    pass
