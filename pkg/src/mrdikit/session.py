"""Saving values to documents and loading them back.

A :class:`Session` binds ring objects to UUIDs.  Within one session the
same ring always gets the same UUID, and loading a document that mentions
an already bound UUID hands back the existing ring object.  This is what
lets two files written together be recombined later.
"""

from __future__ import annotations

import os
import random
import uuid as uuidlib
from typing import Any, Callable, Iterable

from .algebra import Ring, ring_equals
from .codecs import BUILTIN_CODECS, Codec, ElementCodec, RingCodec, malformed
from .document import (
    NO_DATA,
    Metadata,
    MrdiDocument,
    RefEntry,
    TypeDescriptor,
    document_from_tree,
    document_to_tree,
    ref_dependency_order,
)
from .errors import DocumentError, SerializationError
from .interop import TOOL_NAMESPACE, decompress_all
from .tree import ValueTree, is_uuid, join_path

OSCAR_NAMESPACE = ("Oscar", "https://github.com/oscar-system/Oscar.jl", "0.13.0-DEV")
UUID_SEED_ENV = "MRDIKIT_UUID_SEED"


def random_uuid() -> str:
    return str(uuidlib.uuid4())


def seeded_uuid_factory(seed: int | str) -> Callable[[], str]:
    """Reproducible version-4 UUIDs, for golden files and tests."""
    rng = random.Random(seed)

    def factory() -> str:
        return str(uuidlib.UUID(int=rng.getrandbits(128), version=4))

    return factory


def default_uuid_factory() -> Callable[[], str]:
    seed = os.environ.get(UUID_SEED_ENV)
    return random_uuid if seed is None else seeded_uuid_factory(seed)


class _Context:
    """State of one save or load call."""

    def __init__(self, session: "Session", doc: MrdiDocument | None = None):
        self.session = session
        self.doc = doc
        self.refs: dict[str, RefEntry] = {}
        self.pending: dict[str, Ring] = {}

    # dispatch --------------------------------------------------------------

    def codec_for_value(self, value: Any) -> Codec:
        return self.session.codec_for_value(value)

    def type_desc(self, value: Any) -> TypeDescriptor:
        codec = self.codec_for_value(value)
        if isinstance(codec, RingCodec) and codec.by_reference:
            raise SerializationError(f"{codec.type_name} can only be saved at the top level")
        return codec.type_desc(value, self)

    def decode_type_params(self, tree: ValueTree, path: str) -> tuple[Codec, Any]:
        try:
            desc = TypeDescriptor.from_tree(tree, path)
        except DocumentError as exc:
            raise SerializationError(str(exc)) from None
        codec = self.session.codec_for_name(desc.name, path)
        return codec, codec.decode_params(desc.params, self, join_path(path, "params"))

    # rings -------------------------------------------------------------------

    def encode_ring(self, ring: Ring) -> ValueTree:
        codec = self.session.codec_for_value(ring)
        if not isinstance(codec, RingCodec):
            raise SerializationError(f"{ring!r} is not a ring")
        if not codec.by_reference:
            return self.encode_node(ring)
        uid = self.session.uuid_of(ring)
        if uid not in self.refs:
            self.refs[uid] = None  # reserve the slot so dependents come after
            data = codec.encode_data(ring, self)
            self.refs[uid] = RefEntry(TypeDescriptor(codec.type_name), data)
        return uid

    def decode_ring(self, tree: ValueTree, path: str) -> Ring:
        if isinstance(tree, str) and is_uuid(tree):
            ring = self.pending.get(tree) or self.session.object_of_uuid.get(tree)
            if ring is None:
                raise malformed(path, f"reference {tree} is not resolved")
            return ring
        ring = self.decode_node(tree, path)
        if not isinstance(ring, Ring):
            raise malformed(path, "expected a ring")
        return ring

    # typed nodes ---------------------------------------------------------------

    def encode_node(self, value: Any) -> dict:
        codec = self.codec_for_value(value)
        out: dict = {"_type": codec.type_desc(value, self).to_tree()}
        data = codec.encode_data(value, self)
        if data is not NO_DATA:
            out["data"] = data
        return out

    def decode_node(self, tree: ValueTree, path: str) -> Any:
        if not isinstance(tree, dict) or "_type" not in tree:
            raise malformed(path, "expected an object with a '_type'")
        codec, params = self.decode_type_params(tree["_type"], join_path(path, "_type"))
        return codec.decode_data(tree.get("data", NO_DATA), params, self, join_path(path, "data"))

    # elements ----------------------------------------------------------------

    def elem_type_desc(self, parent: Ring) -> TypeDescriptor:
        codec = self.session.elem_codec_for(parent)
        return TypeDescriptor(codec.type_name, codec.parent_params(parent, self))

    def decode_elem_type(self, tree: ValueTree, path: str) -> Ring:
        codec, parent = self.decode_type_params(tree, path)
        if not isinstance(codec, ElementCodec):
            raise malformed(path, f"{codec.type_name} is not an element type")
        return parent

    def encode_elem(self, parent: Ring, value: Any) -> ValueTree:
        return self.session.elem_codec_for(parent).encode_elem(value, self)

    def decode_elem(self, parent: Ring, data: ValueTree, path: str) -> Any:
        return self.session.elem_codec_for(parent).decode_elem(data, parent, self, path)


class Session:
    """UUID registry and codec table for one save/load session."""

    def __init__(
        self,
        namespace: tuple[str, str, str] = OSCAR_NAMESPACE,
        uuid_factory: Callable[[], str] | None = None,
        codecs: Iterable[Codec] | None = None,
        strict: bool = False,
    ):
        # strict: refuse to load extension fields with a reducible modulus
        self.strict = strict
        self.namespace = tuple(namespace)
        self.uuid_factory = uuid_factory or random_uuid
        self.uuid_of_object: dict[Ring, str] = {}
        self.object_of_uuid: dict[str, Ring] = {}
        self.codecs: dict[str, Codec] = {}
        self._names: dict[str, Codec] = {}
        for codec in codecs if codecs is not None else (cls() for cls in BUILTIN_CODECS):
            self.register_codec(codec)

    @property
    def known_namespaces(self) -> set[str]:
        return {self.namespace[0], TOOL_NAMESPACE[0]}

    # registry --------------------------------------------------------------

    def register_codec(self, codec: Codec) -> None:
        for name in (codec.type_name, *codec.aliases):
            if name in self._names:
                raise SerializationError(f"a codec for {name!r} is already registered")
        self.codecs[codec.type_name] = codec
        for name in (codec.type_name, *codec.aliases):
            self._names[name] = codec

    def codec_for_name(self, name: str, path: str = "/_type") -> Codec:
        try:
            return self._names[name]
        except KeyError:
            raise malformed(path, f"unknown type name {name!r}") from None

    def codec_for_value(self, value: Any) -> Codec:
        for codec in self.codecs.values():
            if codec.handles(value):
                return codec
        raise SerializationError(f"no codec registered for {type(value).__name__}")

    def elem_codec_for(self, parent: Ring) -> ElementCodec:
        for codec in self.codecs.values():
            if isinstance(codec, ElementCodec) and type(parent) is codec.parent_type:
                return codec
        raise SerializationError(f"no element codec registered for parent {parent!r}")

    # identity ----------------------------------------------------------------

    def uuid_of(self, ring: Ring) -> str:
        """The ring's UUID in this session, minting one on first use."""
        uid = self.uuid_of_object.get(ring)
        if uid is None:
            uid = self.uuid_factory()
            if uid in self.object_of_uuid:
                raise SerializationError(f"UUID source produced a duplicate: {uid}")
            self._bind(uid, ring)
        return uid

    def _bind(self, uid: str, ring: Ring) -> None:
        self.uuid_of_object[ring] = uid
        self.object_of_uuid[uid] = ring

    # save / load -------------------------------------------------------------

    def save(self, value: Any, meta: Metadata | None = None) -> MrdiDocument:
        ctx = _Context(self)
        codec = self.codec_for_value(value)
        extra = {}
        if isinstance(codec, RingCodec) and codec.by_reference:
            extra["id"] = self.uuid_of(value)
        desc = codec.type_desc(value, ctx)
        data = codec.encode_data(value, ctx)
        ns_name, url, version = self.namespace
        doc = MrdiDocument(
            type_desc=desc,
            data=data,
            ns={ns_name: (url, version)},
            refs=dict(ctx.refs),
            meta=meta,
            extra=extra,
        )
        # re-check the invariants a parser would enforce
        return document_from_tree(document_to_tree(doc))

    def save_tuple(self, entries: Iterable[Any], meta: Metadata | None = None) -> MrdiDocument:
        return self.save(tuple(entries), meta)

    def load(self, doc: MrdiDocument) -> Any:
        doc = decompress_all(doc)
        ctx = _Context(self, doc)
        for uid in ref_dependency_order(doc):
            entry = doc.refs[uid]
            path = join_path("/_refs", uid)
            codec = self.codec_for_name(entry.type_desc.name, join_path(path, "_type"))
            if not isinstance(codec, RingCodec):
                raise malformed(path, f"{codec.type_name} cannot be a reference")
            ring = codec.decode_data(entry.data, None, ctx, join_path(path, "data"))
            self._reconcile(ctx, uid, ring, path)

        codec, params = ctx.decode_type_params(doc.type_desc.to_tree(), "/_type")
        data = doc.data
        value = codec.decode_data(data, params, ctx, "/data")
        if isinstance(codec, RingCodec) and codec.by_reference and is_uuid(doc.extra.get("id")):
            value = self._reconcile(ctx, doc.extra["id"], value, "/id")
        for uid, ring in ctx.pending.items():
            self._bind(uid, ring)
        return value

    def _reconcile(self, ctx: _Context, uid: str, ring: Ring, path: str) -> Ring:
        existing = self.object_of_uuid.get(uid)
        if existing is None:
            ctx.pending[uid] = ring
            return ring
        if not ring_equals(existing, ring):
            raise malformed(path, f"UUID {uid} is already bound to a different ring {existing!r}")
        return existing


def save(session: Session, value: Any, meta: Metadata | None = None) -> MrdiDocument:
    return session.save(value, meta)


def load(session: Session, doc: MrdiDocument) -> Any:
    return session.load(doc)


def save_tuple(session: Session, entries: Iterable[Any]) -> MrdiDocument:
    return session.save_tuple(entries)


def register_codec(session: Session, codec: Codec) -> None:
    session.register_codec(codec)
