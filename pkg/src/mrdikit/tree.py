"""Generic JSON value trees with exact number text.

A value tree is made of plain Python values: ``None``, ``bool``, ``str``,
:class:`Number`, ``list`` and ``dict`` (insertion ordered).  Numbers keep
their source token verbatim so that arbitrarily long integers survive a
round trip without ever touching floating point.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Iterator, Union

from .errors import DocumentError

__all__ = [
    "Number",
    "ValueTree",
    "UUID_RE",
    "is_uuid",
    "parse_json",
    "emit_json",
    "tree_identical",
    "walk",
    "split_path",
    "join_path",
    "get_at",
    "replace_at",
]

UUID_RE = re.compile(r"^[0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12}$")
_NUMBER_RE = re.compile(r"-?(?:0|[1-9][0-9]*)(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?")


def is_uuid(value: object) -> bool:
    return isinstance(value, str) and UUID_RE.match(value) is not None


@dataclass(frozen=True)
class Number:
    """A JSON number token, kept as text."""

    text: str

    def __post_init__(self):
        if not isinstance(self.text, str) or not _NUMBER_RE.fullmatch(self.text):
            raise ValueError(f"not a JSON number token: {self.text!r}")

    def __str__(self) -> str:
        return self.text

    def is_integer(self) -> bool:
        return self.text.lstrip("-").isdigit()


ValueTree = Union[None, bool, str, Number, list, dict]


def _no_duplicates(pairs: list[tuple[str, Any]]) -> dict:
    out: dict = {}
    for key, value in pairs:
        if key in out:
            raise DocumentError("/", f"duplicate key {key!r}")
        out[key] = value
    return out


def _bad_constant(name: str):
    raise DocumentError("/", f"non-standard JSON constant {name}")


def parse_json(text: str) -> ValueTree:
    """Parse JSON text into a value tree; raises DocumentError if malformed."""
    try:
        return json.loads(
            text,
            parse_int=Number,
            parse_float=Number,
            parse_constant=_bad_constant,
            object_pairs_hook=_no_duplicates,
        )
    except json.JSONDecodeError as exc:
        raise DocumentError("/", f"malformed JSON: {exc}") from None


def _emit(node: ValueTree, out: list[str], indent: int | None, level: int) -> None:
    if node is None:
        out.append("null")
    elif node is True:
        out.append("true")
    elif node is False:
        out.append("false")
    elif isinstance(node, Number):
        out.append(node.text)
    elif isinstance(node, str):
        out.append(json.dumps(node, ensure_ascii=False))
    elif isinstance(node, (list, dict)):
        opener, closer = ("[", "]") if isinstance(node, list) else ("{", "}")
        if not node:
            out.append(opener + closer)
            return
        if indent is None:
            sep, inner, outer = ",", "", ""
        else:
            inner = "\n" + " " * (indent * (level + 1))
            outer = "\n" + " " * (indent * level)
            sep = ","
        out.append(opener)
        first = True
        items = node.items() if isinstance(node, dict) else ((None, v) for v in node)
        for key, value in items:
            if not first:
                out.append(sep)
            first = False
            out.append(inner)
            if key is not None:
                out.append(json.dumps(key, ensure_ascii=False))
                out.append(": " if indent is not None else ":")
            _emit(value, out, indent, level + 1)
        out.append(outer)
        out.append(closer)
    else:
        raise TypeError(f"not a value tree node: {type(node).__name__}")


def emit_json(tree: ValueTree, pretty: bool = True) -> str:
    """Emit a tree deterministically; pretty output uses 2-space indentation."""
    out: list[str] = []
    _emit(tree, out, 2 if pretty else None, 0)
    return "".join(out)


def tree_identical(a: ValueTree, b: ValueTree) -> bool:
    """Structural identity including map key order and exact number text."""
    if type(a) is not type(b):
        return False
    if isinstance(a, dict):
        if list(a) != list(b):
            return False
        return all(tree_identical(a[k], b[k]) for k in a)
    if isinstance(a, list):
        return len(a) == len(b) and all(tree_identical(x, y) for x, y in zip(a, b))
    return a == b


def walk(tree: ValueTree, path: str = "") -> Iterator[tuple[str, ValueTree]]:
    """Yield ``(path, node)`` for every node, parents before children."""
    yield path, tree
    if isinstance(tree, dict):
        for key, value in tree.items():
            yield from walk(value, join_path(path, key))
    elif isinstance(tree, list):
        for i, value in enumerate(tree):
            yield from walk(value, join_path(path, i))


def join_path(path: str, key: str | int) -> str:
    token = str(key).replace("~", "~0").replace("/", "~1")
    return f"{path}/{token}"


def split_path(path: str) -> list[str]:
    if path in ("", "/"):
        return []
    if not path.startswith("/"):
        raise DocumentError(path, "path must start with '/'")
    return [t.replace("~1", "/").replace("~0", "~") for t in path[1:].split("/")]


def _step(node: ValueTree, token: str, path: str) -> Any:
    if isinstance(node, dict):
        if token not in node:
            raise DocumentError(path, f"no key {token!r}")
        return token
    if isinstance(node, list):
        if not token.isdigit() or int(token) >= len(node):
            raise DocumentError(path, f"no index {token!r}")
        return int(token)
    raise DocumentError(path, "cannot descend into a scalar")


def get_at(tree: ValueTree, path: str) -> ValueTree:
    node = tree
    for token in split_path(path):
        node = node[_step(node, token, path)]
    return node


def replace_at(tree: ValueTree, path: str, new: ValueTree) -> ValueTree:
    """Return a copy of ``tree`` with the node at ``path`` replaced."""
    tokens = split_path(path)
    if not tokens:
        return new

    def rec(node, i):
        key = _step(node, tokens[i], path)
        child = new if i == len(tokens) - 1 else rec(node[key], i + 1)
        if isinstance(node, dict):
            return {k: (child if k == key else v) for k, v in node.items()}
        copy = list(node)
        copy[key] = child
        return copy

    return rec(tree, 0)
