"""Read, write, validate and upgrade ``.mrdi`` files of exact algebraic data."""

from .document import (
    NO_DATA,
    Metadata,
    MrdiDocument,
    RefEntry,
    TypeDescriptor,
    collect_uuid_mentions,
    emit_document,
    parse_document,
    ref_dependency_order,
)
from .errors import (
    AlgebraError,
    CompressionError,
    DocumentError,
    MrdiError,
    ParentMismatchError,
    ReferenceCycleError,
    SchemaError,
    SerializationError,
    UpgradeError,
)
from .interop import (
    DEFAULT_UPGRADES,
    UpgradeRegistry,
    UpgradeScript,
    compress_subtree,
    decompress_subtree,
    file_version,
    foreign_namespaces,
    upgrade,
)
from .schema import Violation, builtin_mrdi_schema, compile_schema, validate
from .session import Session, load, register_codec, save, save_tuple, seeded_uuid_factory

__all__ = [
    "NO_DATA",
    "Metadata",
    "MrdiDocument",
    "RefEntry",
    "TypeDescriptor",
    "collect_uuid_mentions",
    "emit_document",
    "parse_document",
    "ref_dependency_order",
    "AlgebraError",
    "CompressionError",
    "DocumentError",
    "MrdiError",
    "ParentMismatchError",
    "ReferenceCycleError",
    "SchemaError",
    "SerializationError",
    "UpgradeError",
    "DEFAULT_UPGRADES",
    "UpgradeRegistry",
    "UpgradeScript",
    "compress_subtree",
    "decompress_subtree",
    "file_version",
    "foreign_namespaces",
    "upgrade",
    "Violation",
    "builtin_mrdi_schema",
    "compile_schema",
    "validate",
    "Session",
    "load",
    "register_codec",
    "save",
    "save_tuple",
    "seeded_uuid_factory",
]

__version__ = "0.1.0"
