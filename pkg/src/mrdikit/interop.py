"""Version upgrades, foreign namespaces and subtree compression."""

from __future__ import annotations

import base64
import binascii
import zlib
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .document import MrdiDocument, document_from_tree, document_to_tree
from .errors import CompressionError, DocumentError, UpgradeError
from .schema import builtin_mrdi_schema, validate
from .tree import ValueTree, emit_json, get_at, parse_json, replace_at, split_path, walk

__all__ = [
    "TOOL_NAMESPACE",
    "UpgradeScript",
    "UpgradeRegistry",
    "DEFAULT_UPGRADES",
    "file_version",
    "upgrade",
    "foreign_namespaces",
    "compress_subtree",
    "decompress_subtree",
    "decompress_all",
    "is_compressed",
]

TOOL_NAMESPACE = ("mrdikit", "urn:mrdikit", "1")
COMPRESSED_TYPE = "CompressedTree"
COMPRESSION_CODEC = "deflate"


def file_version(doc: MrdiDocument, namespace: str) -> str:
    if not doc.ns or namespace not in doc.ns:
        raise UpgradeError(f"namespace {namespace!r} is not declared in _ns")
    return doc.ns[namespace][1]


def foreign_namespaces(doc: MrdiDocument, known: Iterable[str]) -> list[str]:
    """Namespaces declared by ``doc`` that are not in ``known``."""
    known = set(known)
    return [name for name in (doc.ns or {}) if name not in known]


# upgrades ----------------------------------------------------------------------


@dataclass(frozen=True)
class UpgradeScript:
    namespace: str
    from_version: str
    to_version: str
    transform: Callable[[dict], dict]


class UpgradeRegistry:
    """Upgrade scripts keyed by (namespace, from, to).

    Versions are opaque labels: a chain is found by shortest path over the
    registered edges, never by comparing version strings.
    """

    def __init__(self, scripts: Iterable[UpgradeScript] = ()):
        self._edges: dict[tuple[str, str], list[UpgradeScript]] = {}
        for script in scripts:
            self.register(script)

    def register(self, script: UpgradeScript) -> None:
        edges = self._edges.setdefault((script.namespace, script.from_version), [])
        if any(s.to_version == script.to_version for s in edges):
            raise UpgradeError(
                f"duplicate upgrade script {script.namespace} {script.from_version} -> {script.to_version}"
            )
        edges.append(script)

    def chain(self, namespace: str, source: str, target: str) -> list[UpgradeScript]:
        if source == target:
            return []
        previous: dict[str, UpgradeScript] = {}
        queue = deque([source])
        seen = {source}
        while queue:
            version = queue.popleft()
            for script in self._edges.get((namespace, version), ()):
                if script.to_version in seen:
                    continue
                seen.add(script.to_version)
                previous[script.to_version] = script
                if script.to_version == target:
                    out = []
                    v = target
                    while v != source:
                        out.append(previous[v])
                        v = previous[v].from_version
                    return out[::-1]
                queue.append(script.to_version)
        raise UpgradeError(f"no upgrade path for {namespace} from {source} to {target}")


def upgrade(
    doc: MrdiDocument,
    namespace: str,
    target_version: str,
    registry: UpgradeRegistry | None = None,
) -> MrdiDocument:
    """Apply the registered chain of scripts bringing ``namespace`` to ``target_version``."""
    registry = DEFAULT_UPGRADES if registry is None else registry
    chain = registry.chain(namespace, file_version(doc, namespace), target_version)
    if not chain:
        return doc
    tree = document_to_tree(doc)
    for script in chain:
        tree = script.transform(tree)
        ns = tree.get("_ns") if isinstance(tree, dict) else None
        if not isinstance(ns, dict) or namespace not in ns:
            raise UpgradeError(f"script {script.from_version} -> {script.to_version} dropped _ns")
        tree["_ns"] = {**ns, namespace: [ns[namespace][0], script.to_version]}
    violations = validate(tree, builtin_mrdi_schema())
    if violations:
        raise UpgradeError("upgraded document fails the schema: " + "; ".join(map(str, violations)))
    try:
        return document_from_tree(tree)
    except DocumentError as exc:
        raise UpgradeError(f"upgraded document is malformed: {exc}") from None


def _map_nodes(tree: ValueTree, fn: Callable[[dict], dict]) -> ValueTree:
    """Apply ``fn`` bottom-up to every object in the tree."""
    if isinstance(tree, list):
        return [_map_nodes(v, fn) for v in tree]
    if isinstance(tree, dict):
        return fn({k: _map_nodes(v, fn) for k, v in tree.items()})
    return tree


_LEGACY_NAMES = {
    "MPolyElem": "MPolyRingElem",
    "PolyElem": "PolyRingElem",
    "GaloisField": "fpField",
    "gfp_elem": "fpFieldElem",
    "FqNmodFiniteField": "fqPolyRepField",
    "fq_nmod": "fqPolyRepFieldElem",
}


def _rename_types(tree: dict) -> dict:
    def fix(node: dict) -> dict:
        t = node.get("_type")
        if isinstance(t, str) and t in _LEGACY_NAMES:
            node["_type"] = _LEGACY_NAMES[t]
        elif isinstance(t, dict) and t.get("name") in _LEGACY_NAMES:
            node["_type"] = {**t, "name": _LEGACY_NAMES[t["name"]]}
        if "name" in node and "params" in node and node["name"] in _LEGACY_NAMES:
            node["name"] = _LEGACY_NAMES[node["name"]]
        return node

    return _map_nodes(tree, fix)


def _split_symbols(tree: dict) -> dict:
    def fix(node: dict) -> dict:
        data = node.get("data")
        if node.get("_type") in ("PolyRing", "MPolyRing") and isinstance(data, dict):
            symbols = data.get("symbols")
            if isinstance(symbols, str):
                node["data"] = {**data, "symbols": symbols.split(",")}
        return node

    return _map_nodes(tree, fix)


# Legacy layouts of this toolkit's own early file versions: 0.11.0 used
# older type names, 0.12.0 wrote ring symbols as one comma-joined string.
DEFAULT_UPGRADES = UpgradeRegistry(
    [
        UpgradeScript("Oscar", "0.11.0", "0.12.0", _rename_types),
        UpgradeScript("Oscar", "0.12.0", "0.13.0-DEV", _split_symbols),
    ]
)


# compression -------------------------------------------------------------------


def is_compressed(node: ValueTree) -> bool:
    if not isinstance(node, dict):
        return False
    t = node.get("_type")
    return isinstance(t, dict) and t.get("name") == COMPRESSED_TYPE


def _compress_node(subtree: ValueTree) -> dict:
    deflate = zlib.compressobj(9, zlib.DEFLATED, -15)
    raw = deflate.compress(emit_json(subtree, pretty=False).encode("utf-8")) + deflate.flush()
    name, url, version = TOOL_NAMESPACE
    return {
        "_ns": {name: [url, version]},
        "_type": {"name": COMPRESSED_TYPE, "params": {"codec": COMPRESSION_CODEC}},
        "data": base64.b64encode(raw).decode("ascii"),
    }


def _expand_node(node: dict, path: str) -> ValueTree:
    params = node["_type"].get("params")
    codec = params.get("codec") if isinstance(params, dict) else None
    if codec != COMPRESSION_CODEC:
        raise CompressionError(f"{path}: unsupported compression codec {codec!r}")
    payload = node.get("data")
    if not isinstance(payload, str):
        raise CompressionError(f"{path}: compressed payload must be a string")
    try:
        raw = base64.b64decode(payload, validate=True)
        text = zlib.decompress(raw, -15).decode("utf-8")
    except (binascii.Error, zlib.error, UnicodeDecodeError) as exc:
        raise CompressionError(f"{path}: corrupt compressed payload: {exc}") from None
    try:
        return parse_json(text)
    except DocumentError as exc:
        raise CompressionError(f"{path}: corrupt compressed payload: {exc.message}") from None


def _rebuild(tree: ValueTree, err: type[Exception]) -> MrdiDocument:
    try:
        doc = document_from_tree(tree)
    except DocumentError as exc:
        raise err(f"result is not a valid document: {exc}") from None
    violations = validate(tree, builtin_mrdi_schema())
    if violations:
        raise err("result fails the schema: " + "; ".join(map(str, violations)))
    return doc


def compress_subtree(doc: MrdiDocument, path: str) -> MrdiDocument:
    """Replace the subtree at ``path`` by a deflated, base64 encoded node."""
    if not split_path(path):
        raise CompressionError("cannot compress the document root")
    tree = document_to_tree(doc)
    try:
        subtree = get_at(tree, path)
    except DocumentError as exc:
        raise CompressionError(f"bad path: {exc}") from None
    return _rebuild(replace_at(tree, path, _compress_node(subtree)), CompressionError)


def decompress_subtree(doc: MrdiDocument, path: str) -> MrdiDocument:
    tree = document_to_tree(doc)
    try:
        node = get_at(tree, path)
    except DocumentError as exc:
        raise CompressionError(f"bad path: {exc}") from None
    if not is_compressed(node):
        raise CompressionError(f"{path}: not a compressed subtree")
    return _rebuild(replace_at(tree, path, _expand_node(node, path)), CompressionError)


def _expand_all(tree: ValueTree, path: str) -> ValueTree:
    if is_compressed(tree):
        return _expand_all(_expand_node(tree, path), path)
    if isinstance(tree, dict):
        return {k: _expand_all(v, f"{path}/{k}") for k, v in tree.items()}
    if isinstance(tree, list):
        return [_expand_all(v, f"{path}/{i}") for i, v in enumerate(tree)]
    return tree


def decompress_all(doc: MrdiDocument) -> MrdiDocument:
    """Expand every compressed subtree; returns ``doc`` itself if there are none."""
    tree = document_to_tree(doc)
    if not any(is_compressed(node) for _, node in walk(tree)):
        return doc
    return _rebuild(_expand_all(tree, ""), CompressionError)
