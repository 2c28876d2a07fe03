"""A small JSON Schema validator and the built-in ``.mrdi`` schema.

Only the keyword subset needed for the file format is implemented:
``type``, ``properties``, ``patternProperties``, ``propertyNames``,
``required``, ``oneOf``, ``$ref``, ``$defs`` and ``format`` (``uuid``).
Other keywords are ignored and reported in :attr:`Schema.warnings`.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field

from .errors import SchemaError
from .tree import Number, UUID_RE, ValueTree, join_path, split_path

__all__ = [
    "Violation",
    "Schema",
    "compile_schema",
    "validate",
    "builtin_mrdi_schema",
    "BUILTIN_SCHEMA_TREE",
]

_ANNOTATIONS = {"$id", "$schema", "$comment", "title", "description", "$defs"}
_KEYWORDS = {
    "type",
    "properties",
    "patternProperties",
    "propertyNames",
    "required",
    "oneOf",
    "$ref",
    "format",
}
_TYPES = {
    "object": lambda v: isinstance(v, dict),
    "array": lambda v: isinstance(v, list),
    "string": lambda v: isinstance(v, str),
    "number": lambda v: isinstance(v, Number),
    "integer": lambda v: isinstance(v, Number) and v.is_integer(),
    "boolean": lambda v: isinstance(v, bool),
    "null": lambda v: v is None,
}
_FORMATS = {"uuid": lambda s: UUID_RE.match(s) is not None}


@dataclass(frozen=True)
class Violation:
    path: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.path or '/'}: {self.rule}: {self.message}"


@dataclass(eq=False)
class _Node:
    always: bool | None = None  # boolean schema
    type: str | None = None
    properties: dict[str, "_Node"] = field(default_factory=dict)
    pattern_properties: list[tuple[re.Pattern, "_Node"]] = field(default_factory=list)
    property_names: "_Node | None" = None
    required: tuple[str, ...] = ()
    one_of: list["_Node"] = field(default_factory=list)
    ref: "_Node | None" = None
    format: str | None = None


@dataclass(frozen=True)
class Schema:
    root: _Node
    warnings: tuple[str, ...] = ()
    id: str | None = None


class _Compiler:
    def __init__(self, tree: ValueTree):
        self.tree = tree
        self.memo: dict[str, _Node] = {}
        self.warnings: list[str] = []

    def resolve(self, ref: str, where: str) -> _Node:
        if ref != "#" and not ref.startswith("#/"):
            raise SchemaError(f"{where}: only local $ref is supported, got {ref!r}")
        pointer = ref[1:]
        node = self.tree
        for token in split_path(pointer):
            if isinstance(node, dict) and token in node:
                node = node[token]
            elif isinstance(node, list) and token.isdigit() and int(token) < len(node):
                node = node[int(token)]
            else:
                raise SchemaError(f"{where}: unresolvable $ref {ref!r}")
        return self.compile(node, pointer)

    def compile(self, tree: ValueTree, pointer: str) -> _Node:
        if pointer in self.memo:
            return self.memo[pointer]
        node = _Node()
        self.memo[pointer] = node
        where = pointer or "#"
        if isinstance(tree, bool):
            node.always = tree
            return node
        if not isinstance(tree, dict):
            raise SchemaError(f"{where}: schema must be an object or boolean")
        for key in tree:
            if key not in _KEYWORDS and key not in _ANNOTATIONS:
                self.warnings.append(f"{where}: unsupported keyword {key!r} ignored")
        if "type" in tree:
            if tree["type"] not in _TYPES:
                raise SchemaError(f"{where}: unsupported type {tree['type']!r}")
            node.type = tree["type"]
        for name, sub in tree.get("properties", {}).items():
            node.properties[name] = self.compile(
                sub, join_path(join_path(pointer, "properties"), name)
            )
        for pattern, sub in tree.get("patternProperties", {}).items():
            try:
                regex = re.compile(pattern)
            except re.error as exc:
                raise SchemaError(f"{where}: invalid regex {pattern!r}: {exc}") from None
            node.pattern_properties.append(
                (regex, self.compile(sub, join_path(join_path(pointer, "patternProperties"), pattern)))
            )
        if "propertyNames" in tree:
            node.property_names = self.compile(
                tree["propertyNames"], join_path(pointer, "propertyNames")
            )
        node.required = tuple(tree.get("required", ()))
        for i, sub in enumerate(tree.get("oneOf", ())):
            node.one_of.append(self.compile(sub, join_path(join_path(pointer, "oneOf"), i)))
        if "format" in tree:
            if tree["format"] in _FORMATS:
                node.format = tree["format"]
            else:
                self.warnings.append(f"{where}: unknown format {tree['format']!r} ignored")
        if "$defs" in tree:
            for name, sub in tree["$defs"].items():
                self.compile(sub, join_path(join_path(pointer, "$defs"), name))
        if "$ref" in tree:
            node.ref = self.resolve(tree["$ref"], where)
        return node


def compile_schema(tree: ValueTree) -> Schema:
    """Compile a schema tree, resolving every ``$ref`` up front."""
    compiler = _Compiler(tree)
    root = compiler.compile(tree, "")
    schema_id = tree.get("$id") if isinstance(tree, dict) else None
    return Schema(root, tuple(compiler.warnings), schema_id)


def _check(node: _Node, value: ValueTree, path: str, out: list[Violation]) -> None:
    if node.always is not None:
        if not node.always:
            out.append(Violation(path, "false", "no value is allowed here"))
        return
    if node.ref is not None:
        _check(node.ref, value, path, out)
    if node.type is not None and not _TYPES[node.type](value):
        out.append(Violation(path, "type", f"expected {node.type}"))
        return
    if node.format is not None and isinstance(value, str):
        if not _FORMATS[node.format](value):
            out.append(Violation(path, "format", f"{value!r} is not a {node.format}"))
    if isinstance(value, dict):
        for name in node.required:
            if name not in value:
                out.append(Violation(path, "required", f"missing property {name!r}"))
        for key, child in value.items():
            child_path = join_path(path, key)
            if node.property_names is not None:
                found: list[Violation] = []
                _check(node.property_names, key, child_path, found)
                for v in found:
                    out.append(Violation(child_path, v.rule, f"property name {v.message}"))
            if key in node.properties:
                _check(node.properties[key], child, child_path, out)
            for regex, sub in node.pattern_properties:
                if regex.search(key):
                    _check(sub, child, child_path, out)
    if node.one_of:
        matches = 0
        for branch in node.one_of:
            found = []
            _check(branch, value, path, found)
            matches += not found
        if matches != 1:
            out.append(
                Violation(path, "oneOf", f"{matches} of {len(node.one_of)} alternatives match")
            )


def validate(tree: ValueTree, schema: Schema) -> list[Violation]:
    """All violations of ``schema`` by ``tree``; empty iff it conforms."""
    out: list[Violation] = []
    _check(schema.root, tree, "", out)
    return out


_UUID_PATTERN = UUID_RE.pattern

BUILTIN_SCHEMA_TREE: dict = {
    "$id": "urn:mrdikit:schema:mrdi",
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "_ns": {
            "type": "object",
            "patternProperties": {"^.*$": {"type": "array"}},
        },
        "_type": {"$ref": "#/$defs/type"},
        "data": {},
        "_refs": {
            "type": "object",
            "propertyNames": {"format": "uuid"},
            "patternProperties": {_UUID_PATTERN: {"$ref": "#/$defs/entry"}},
        },
        "_meta": {
            "type": "object",
            "properties": {
                "name": {"type": "string"},
                "author_orcid": {"type": "string"},
            },
        },
        "id": {"type": "string", "format": "uuid"},
    },
    "required": ["_type"],
    "$defs": {
        "type": {
            "oneOf": [
                {"type": "string"},
                {
                    "type": "object",
                    "properties": {
                        "name": {"type": "string"},
                        "params": {"$ref": "#/$defs/params"},
                    },
                    "required": ["name"],
                },
            ]
        },
        "params": {
            "oneOf": [{"type": "object"}, {"type": "string"}, {"type": "array"}]
        },
        # a reference entry: the root layout without its own _ns/_refs
        "entry": {
            "type": "object",
            "properties": {
                "_type": {"$ref": "#/$defs/type"},
                "data": {},
            },
            "required": ["_type"],
        },
    },
}


@functools.lru_cache(maxsize=None)
def builtin_mrdi_schema() -> Schema:
    return compile_schema(BUILTIN_SCHEMA_TREE)
