"""The ``.mrdi`` document model: parsing, canonical emission and the
reference dependency graph."""

from __future__ import annotations

import graphlib
import re
from dataclasses import dataclass, field
from typing import Iterator

from .errors import DocumentError, ReferenceCycleError
from .tree import (
    ValueTree,
    emit_json,
    is_uuid,
    join_path,
    parse_json,
    walk,
)

__all__ = [
    "NO_DATA",
    "TypeDescriptor",
    "RefEntry",
    "Metadata",
    "MrdiDocument",
    "parse_document",
    "emit_document",
    "document_from_tree",
    "document_to_tree",
    "collect_uuid_mentions",
    "dependency_graph",
    "ref_dependency_order",
]

ORCID_RE = re.compile(r"^\d{4}-\d{4}-\d{4}-\d{3}[\dX]$")
TOP_LEVEL_KEYS = ("_ns", "_type", "data", "_refs", "_meta")


class _NoData:
    """Marker for an absent ``data`` key (distinct from JSON ``null``)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NO_DATA"

    def __bool__(self):
        return False


NO_DATA = _NoData()


@dataclass(frozen=True)
class TypeDescriptor:
    name: str
    params: ValueTree = None  # None means "no params"; JSON null is rejected

    @classmethod
    def from_tree(cls, tree: ValueTree, path: str = "/_type") -> "TypeDescriptor":
        if isinstance(tree, str):
            return cls(tree)
        if not isinstance(tree, dict):
            raise DocumentError(path, "type descriptor must be a string or an object")
        unknown = set(tree) - {"name", "params"}
        if unknown:
            raise DocumentError(path, f"unexpected keys {sorted(unknown)}")
        name = tree.get("name")
        if not isinstance(name, str):
            raise DocumentError(join_path(path, "name"), "type name must be a string")
        if "params" not in tree:
            return cls(name)
        params = tree["params"]
        if not isinstance(params, (str, list, dict)):
            raise DocumentError(
                join_path(path, "params"), "params must be an object, string or array"
            )
        return cls(name, params)

    def to_tree(self) -> ValueTree:
        if self.params is None:
            return self.name
        return {"name": self.name, "params": self.params}


@dataclass(frozen=True)
class RefEntry:
    type_desc: TypeDescriptor
    data: ValueTree = NO_DATA
    extra: dict = field(default_factory=dict)

    def to_tree(self) -> dict:
        out: dict = {"_type": self.type_desc.to_tree()}
        if self.data is not NO_DATA:
            out["data"] = self.data
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class Metadata:
    name: str | None = None
    author_orcid: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.author_orcid is not None and not ORCID_RE.match(self.author_orcid):
            raise DocumentError("/_meta/author_orcid", f"not an ORCID: {self.author_orcid!r}")

    def to_tree(self) -> dict:
        out: dict = {}
        if self.name is not None:
            out["name"] = self.name
        if self.author_orcid is not None:
            out["author_orcid"] = self.author_orcid
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class MrdiDocument:
    """One serialized object together with its full construction context.

    ``ns`` maps namespace names to ``(url, version)``; ``None`` means the
    document has no ``_ns`` key.  ``extra`` holds foreign top-level keys,
    which are carried along untouched.
    """

    type_desc: TypeDescriptor
    data: ValueTree = NO_DATA
    ns: dict[str, tuple[str, str]] | None = None
    refs: dict[str, RefEntry] = field(default_factory=dict)
    meta: Metadata | None = None
    extra: dict = field(default_factory=dict)

    @property
    def has_data(self) -> bool:
        return self.data is not NO_DATA


def _parse_ns(tree: ValueTree) -> dict[str, tuple[str, str]]:
    if not isinstance(tree, dict):
        raise DocumentError("/_ns", "namespace table must be an object")
    out = {}
    for name, entry in tree.items():
        path = join_path("/_ns", name)
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, str) for x in entry)
        ):
            raise DocumentError(path, "namespace entry must be [url, version]")
        out[name] = (entry[0], entry[1])
    return out


def _parse_ref(uuid: str, tree: ValueTree) -> RefEntry:
    path = join_path("/_refs", uuid)
    if not isinstance(tree, dict):
        raise DocumentError(path, "reference entry must be an object")
    if "_type" not in tree:
        raise DocumentError(path, "missing required key '_type'")
    if "_refs" in tree:
        raise DocumentError(join_path(path, "_refs"), "nested reference tables are not allowed")
    extra = {k: v for k, v in tree.items() if k not in ("_type", "data")}
    return RefEntry(
        TypeDescriptor.from_tree(tree["_type"], join_path(path, "_type")),
        tree.get("data", NO_DATA),
        extra,
    )


def _parse_meta(tree: ValueTree) -> Metadata:
    if not isinstance(tree, dict):
        raise DocumentError("/_meta", "metadata must be an object")
    for key in ("name", "author_orcid"):
        if key in tree and not isinstance(tree[key], str):
            raise DocumentError(join_path("/_meta", key), "must be a string")
    extra = {k: v for k, v in tree.items() if k not in ("name", "author_orcid")}
    return Metadata(tree.get("name"), tree.get("author_orcid"), extra)


def _mentions(tree: ValueTree, path: str) -> Iterator[tuple[str, str]]:
    for p, node in walk(tree, path):
        if is_uuid(node):
            yield p, node


def collect_uuid_mentions(tree: ValueTree) -> set[str]:
    """Every string in ``tree`` that has UUID format."""
    return {u for _, u in _mentions(tree, "")}


def _entry_mentions(uuid: str, entry: RefEntry) -> Iterator[tuple[str, str]]:
    path = join_path("/_refs", uuid)
    yield from _mentions(entry.type_desc.to_tree(), join_path(path, "_type"))
    if entry.data is not NO_DATA:
        yield from _mentions(entry.data, join_path(path, "data"))


def dependency_graph(doc: MrdiDocument) -> dict[str, set[str]]:
    """Map each ref UUID to the UUIDs its type params and data mention."""
    return {
        u: {m for _, m in _entry_mentions(u, entry)} for u, entry in doc.refs.items()
    }


def ref_dependency_order(doc: MrdiDocument) -> list[str]:
    """Ref UUIDs ordered so that every UUID follows everything it mentions."""
    sorter = graphlib.TopologicalSorter(dependency_graph(doc))
    try:
        order = list(sorter.static_order())
    except graphlib.CycleError as exc:
        raise ReferenceCycleError(list(exc.args[1])) from None
    # mentions of unknown UUIDs show up as extra nodes; keep only real refs
    return [u for u in order if u in doc.refs]


def _check_references(doc: MrdiDocument) -> None:
    mentions = list(_mentions(doc.type_desc.to_tree(), "/_type"))
    if doc.data is not NO_DATA:
        mentions.extend(_mentions(doc.data, "/data"))
    for uuid, entry in doc.refs.items():
        mentions.extend(_entry_mentions(uuid, entry))
    for path, uuid in mentions:
        if uuid not in doc.refs:
            raise DocumentError(path, f"dangling reference {uuid}")
    ref_dependency_order(doc)


def document_from_tree(tree: ValueTree) -> MrdiDocument:
    """Build a document from an already parsed tree, checking all invariants."""
    if not isinstance(tree, dict):
        raise DocumentError("/", "document must be a JSON object")
    if "_type" not in tree:
        raise DocumentError("/", "missing required key '_type'")
    refs_tree = tree.get("_refs", {})
    if not isinstance(refs_tree, dict):
        raise DocumentError("/_refs", "reference table must be an object")
    refs = {}
    for uuid, entry in refs_tree.items():
        if not is_uuid(uuid):
            raise DocumentError(join_path("/_refs", uuid), f"key {uuid!r} is not a UUID")
        refs[uuid] = _parse_ref(uuid, entry)
    doc = MrdiDocument(
        type_desc=TypeDescriptor.from_tree(tree["_type"]),
        data=tree.get("data", NO_DATA),
        ns=_parse_ns(tree["_ns"]) if "_ns" in tree else None,
        refs=refs,
        meta=_parse_meta(tree["_meta"]) if "_meta" in tree else None,
        extra={k: v for k, v in tree.items() if k not in TOP_LEVEL_KEYS},
    )
    _check_references(doc)
    return doc


def document_to_tree(doc: MrdiDocument) -> dict:
    out: dict = {}
    if doc.ns is not None:
        out["_ns"] = {name: [url, version] for name, (url, version) in doc.ns.items()}
    out["_type"] = doc.type_desc.to_tree()
    if doc.data is not NO_DATA:
        out["data"] = doc.data
    if doc.refs:
        out["_refs"] = {u: entry.to_tree() for u, entry in doc.refs.items()}
    if doc.meta is not None:
        out["_meta"] = doc.meta.to_tree()
    out.update(doc.extra)
    return out


def parse_document(text: str) -> MrdiDocument:
    return document_from_tree(parse_json(text))


def emit_document(doc: MrdiDocument, pretty: bool = True) -> str:
    return emit_json(document_to_tree(doc), pretty=pretty)
