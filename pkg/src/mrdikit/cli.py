"""``mrdikit`` command line interface.

Exit codes: 0 success, 1 semantic failure (validation, equality, load
errors), 2 I/O or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .algebra import Matrix, Vector, equals
from .document import (
    MrdiDocument,
    dependency_graph,
    document_from_tree,
    emit_document,
    ref_dependency_order,
)
from .errors import MrdiError
from .interop import compress_subtree, decompress_subtree, upgrade
from .schema import BUILTIN_SCHEMA_TREE, builtin_mrdi_schema, compile_schema, validate
from .session import OSCAR_NAMESPACE, Session, default_uuid_factory
from .tree import Number, emit_json, parse_json

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2


class _IOFailure(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text + "\n")
        return
    try:
        Path(path).write_text(text + "\n", encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror or exc}") from None


def _load_doc(path: str) -> MrdiDocument:
    return document_from_tree(parse_json(_read(path)))


def _session(args) -> Session:
    return Session(namespace=tuple(args.ns) if args.ns else OSCAR_NAMESPACE, uuid_factory=default_uuid_factory())


def _emit(args, doc: MrdiDocument) -> None:
    _write(args.out, emit_document(doc, pretty=not args.compact))


# commands --------------------------------------------------------------------


def cmd_validate(args) -> int:
    if args.schema:
        schema = compile_schema(parse_json(_read(args.schema)))
        for warning in schema.warnings:
            print(f"warning: {warning}", file=sys.stderr)
    else:
        schema = builtin_mrdi_schema()
    status = EXIT_OK
    for path in args.paths:
        text = _read(path)
        try:
            tree = parse_json(text)
        except MrdiError as exc:
            print(f"/: json: {exc}")
            print(f"{path}: invalid", file=sys.stderr)
            status = EXIT_FAIL
            continue
        problems = [str(v) for v in validate(tree, schema)]
        if not problems:
            try:
                document_from_tree(tree)
            except MrdiError as exc:
                problems.append(f"{exc.path}: structure: {exc.message}")
        for line in problems:
            print(line)
        print(f"{path}: {'ok' if not problems else f'{len(problems)} violation(s)'}", file=sys.stderr)
        if problems:
            status = EXIT_FAIL
    return status


def _skeleton(node, indent: str, depth: int, lines: list[str], label: str) -> None:
    if isinstance(node, list):
        lines.append(f"{indent}{label}array({len(node)})")
        children = list(enumerate(node))
    elif isinstance(node, dict):
        lines.append(f"{indent}{label}object({len(node)})")
        children = list(node.items())
    else:
        text = node.text if isinstance(node, Number) else repr(node)
        if len(text) > 40:
            text = text[:37] + "..."
        lines.append(f"{indent}{label}{text}")
        return
    if depth == 0:
        return
    for key, child in children[:5]:
        _skeleton(child, indent + "  ", depth - 1, lines, f"[{key}] " if isinstance(key, int) else f"{key}: ")
    if len(children) > 5:
        lines.append(f"{indent}  ... {len(children) - 5} more")


def _short(text: str) -> str:
    return text[:8]


def render_tree(doc: MrdiDocument) -> list[str]:
    lines = []
    if doc.ns is not None:
        entries = "; ".join(f"{n} ({url}, {v})" for n, (url, v) in doc.ns.items())
        lines.append(f"_ns: {entries}")
    desc = doc.type_desc
    if desc.params is None:
        lines.append(f"_type: {desc.name}")
    elif isinstance(desc.params, str):
        lines.append(f"_type: {desc.name} [params: {_short(desc.params)}]")
    else:
        lines.append(f"_type: {desc.name}")
        _skeleton(desc.params, "  ", 3, lines, "params: ")
    if doc.has_data:
        _skeleton(doc.data, "", 2, lines, "data: ")
    if doc.refs:
        graph = dependency_graph(doc)
        lines.append(f"_refs ({len(doc.refs)}, dependency order)")
        for i, uid in enumerate(ref_dependency_order(doc), 1):
            deps = sorted(_short(u) for u in graph[uid])
            arrow = f" -> {', '.join(deps)}" if deps else ""
            lines.append(f"  {i}. {_short(uid)} {doc.refs[uid].type_desc.name}{arrow}")
    if doc.meta is not None:
        meta = doc.meta.to_tree()
        lines.append("_meta: " + ", ".join(f"{k}={v}" for k, v in meta.items()))
    for key in doc.extra:
        lines.append(f"{key}: (foreign)")
    return lines


def cmd_show(args) -> int:
    doc = _load_doc(args.path)
    _write(None, "\n".join(render_tree(doc)))
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    first = Session(uuid_factory=default_uuid_factory()).load(_load_doc(args.path))
    # the fresh session binds the loaded rings while saving, so the reload
    # must hand back values over the very same parent objects
    session = _session(args)
    doc = session.save(first)
    second = session.load(document_from_tree(parse_json(emit_document(doc))))
    ok = equals(second, first)
    print("roundtrip: " + ("equal" if ok else "NOT equal"), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mulmv(args) -> int:
    session = _session(args)
    matrix = session.load(_load_doc(args.matrix))
    vector = session.load(_load_doc(args.vector))
    if not isinstance(matrix, Matrix) or not isinstance(vector, Vector):
        print("error: expected a Matrix file and a Vector file", file=sys.stderr)
        return EXIT_FAIL
    if matrix.base is not vector.base:
        print(
            "error: the matrix and vector rings are not recognized as the same ring; "
            "the files do not share ring UUIDs, so the common context is missing",
            file=sys.stderr,
        )
        return EXIT_FAIL
    _emit(args, session.save(matrix @ vector))
    return EXIT_OK


def cmd_upgrade(args) -> int:
    _emit(args, upgrade(_load_doc(args.path), args.namespace, args.to))
    return EXIT_OK


def cmd_compress(args) -> int:
    _emit(args, compress_subtree(_load_doc(args.path), args.tree_path))
    return EXIT_OK


def cmd_decompress(args) -> int:
    _emit(args, decompress_subtree(_load_doc(args.path), args.tree_path))
    return EXIT_OK


def cmd_schema(args) -> int:
    if not args.print:
        print("error: nothing to do (use --print)", file=sys.stderr)
        return EXIT_IO
    _write(args.out, emit_json(BUILTIN_SCHEMA_TREE, pretty=not args.compact))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--compact", action="store_true", help="compact JSON output")
    common.add_argument(
        "--ns", nargs=3, metavar=("NAME", "URL", "VERSION"), help="namespace written into saved files"
    )

    parser = argparse.ArgumentParser(prog="mrdikit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check files against the schema")
    p.add_argument("paths", nargs="+")
    p.add_argument("--schema", help="JSON schema file overriding the built-in one")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("show", parents=[common], help="print the annotated tree of a file")
    p.add_argument("path")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("roundtrip", parents=[common], help="load, save and reload a file")
    p.add_argument("path")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("mulmv", parents=[common], help="multiply a saved matrix by a saved vector")
    p.add_argument("matrix")
    p.add_argument("vector")
    p.set_defaults(func=cmd_mulmv)

    p = sub.add_parser("upgrade", parents=[common], help="apply upgrade scripts")
    p.add_argument("path")
    p.add_argument("--to", required=True, help="target version")
    p.add_argument("--namespace", default=OSCAR_NAMESPACE[0])
    p.set_defaults(func=cmd_upgrade)

    for name, func in (("compress", cmd_compress), ("decompress", cmd_decompress)):
        p = sub.add_parser(name, parents=[common], help=f"{name} the subtree at TREE_PATH")
        p.add_argument("path")
        p.add_argument("tree_path", help="slash-separated path, e.g. /data")
        p.set_defaults(func=func)

    p = sub.add_parser("schema", parents=[common], help="built-in schema")
    p.add_argument("--print", action="store_true", help="print the built-in schema")
    p.set_defaults(func=cmd_schema)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except MrdiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
