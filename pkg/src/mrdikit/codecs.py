"""Type-specific encoders and decoders.

A codec translates between one kind of value and the ``params``/``data``
parts of a serialized node.  Codecs never touch UUIDs themselves: parent
rings go through ``ctx.encode_ring`` / ``ctx.decode_ring``, which decide
between a reference into ``_refs`` and an inline node.
"""

from __future__ import annotations

import re
import warnings
from fractions import Fraction
from typing import Any

from .algebra import (
    QQ,
    ZZ,
    FqField,
    IntegerRing,
    Matrix,
    MPolyRing,
    PrimeField,
    RationalField,
    Ring,
    UnivPoly,
    UnivPolyRing,
    Vector,
)
from .document import NO_DATA, TypeDescriptor
from .errors import AlgebraError, SerializationError
from .tree import Number, ValueTree, join_path

_INT_RE = re.compile(r"-?[0-9]+")


class ReducibleModulusWarning(UserWarning):
    """A loaded extension field's defining polynomial is reducible."""


def malformed(path: str, message: str) -> SerializationError:
    return SerializationError(f"{path or '/'}: {message}")


def int_from_tree(tree: ValueTree, path: str, minimum: int | None = None) -> int:
    """Integers are written as decimal strings; bare JSON integers are tolerated."""
    if isinstance(tree, Number) and tree.is_integer():
        text = tree.text
    elif isinstance(tree, str) and _INT_RE.fullmatch(tree):
        text = tree
    else:
        raise malformed(path, f"expected an integer, got {tree!r}")
    value = int(text)
    if minimum is not None and value < minimum:
        raise malformed(path, f"expected an integer >= {minimum}, got {value}")
    return value


def list_from_tree(tree: ValueTree, path: str, length: int | None = None) -> list:
    if not isinstance(tree, list):
        raise malformed(path, f"expected an array, got {type(tree).__name__}")
    if length is not None and len(tree) != length:
        raise malformed(path, f"expected {length} entries, got {len(tree)}")
    return tree


def map_from_tree(tree: ValueTree, path: str, *keys: str) -> dict:
    if not isinstance(tree, dict):
        raise malformed(path, f"expected an object, got {type(tree).__name__}")
    for key in keys:
        if key not in tree:
            raise malformed(path, f"missing key {key!r}")
    return tree


class Codec:
    """Base class for all codecs.

    Subclasses set ``type_name`` and override the four hooks.  ``handles``
    decides which in-memory values this codec saves.
    """

    type_name: str = ""
    aliases: tuple[str, ...] = ()

    def handles(self, value: Any) -> bool:
        return False

    def encode_params(self, value: Any, ctx) -> ValueTree:
        return None

    def decode_params(self, params: ValueTree, ctx, path: str) -> Any:
        return None

    def encode_data(self, value: Any, ctx) -> ValueTree:
        return NO_DATA

    def decode_data(self, data: ValueTree, params: Any, ctx, path: str) -> Any:
        raise NotImplementedError

    def type_desc(self, value: Any, ctx) -> TypeDescriptor:
        return TypeDescriptor(self.type_name, self.encode_params(value, ctx))


class RingCodec(Codec):
    """Codec for a parent object.  Rings with ``by_reference`` are stored
    once in ``_refs`` and mentioned by UUID; the others are written inline."""

    ring_type: type = Ring
    by_reference = False

    def handles(self, value):
        return type(value) is self.ring_type


class ElementCodec(Codec):
    """Codec for elements whose parent is an instance of ``parent_type``."""

    parent_type: type = Ring

    def handles(self, value):
        return getattr(value, "parent", None) is not None and type(value.parent) is self.parent_type

    def parent_params(self, parent: Ring, ctx) -> ValueTree:
        return ctx.encode_ring(parent)

    def encode_params(self, value, ctx):
        return self.parent_params(value.parent, ctx)

    def decode_params(self, params, ctx, path):
        parent = ctx.decode_ring(params, path)
        if type(parent) is not self.parent_type:
            raise malformed(path, f"{self.type_name} needs a {self.parent_type.__name__} parent")
        return parent

    def encode_data(self, value, ctx):
        return self.encode_elem(value, ctx)

    def decode_data(self, data, parent, ctx, path):
        return self.decode_elem(data, parent, ctx, path)

    def encode_elem(self, value, ctx) -> ValueTree:
        raise NotImplementedError

    def decode_elem(self, data: ValueTree, parent: Ring, ctx, path: str) -> Any:
        raise NotImplementedError


# rings ---------------------------------------------------------------------


class QQFieldCodec(RingCodec):
    type_name = "QQField"
    ring_type = RationalField

    def decode_data(self, data, params, ctx, path):
        return QQ


class FpFieldCodec(RingCodec):
    type_name = "fpField"
    aliases = ("Nemo.fpField",)
    ring_type = PrimeField

    def encode_data(self, ring, ctx):
        return str(ring.p)

    def decode_data(self, data, params, ctx, path):
        try:
            return PrimeField(int_from_tree(data, path, minimum=2))
        except AlgebraError as exc:
            raise malformed(path, str(exc)) from None


class PolyRingCodec(RingCodec):
    type_name = "PolyRing"
    ring_type = UnivPolyRing
    by_reference = True

    def encode_data(self, ring, ctx):
        return {"base_ring": ctx.encode_ring(ring.base_ring), "symbols": [ring.symbol]}

    def decode_data(self, data, params, ctx, path):
        data = map_from_tree(data, path, "base_ring", "symbols")
        base = ctx.decode_ring(data["base_ring"], join_path(path, "base_ring"))
        symbols = list_from_tree(data["symbols"], join_path(path, "symbols"), length=1)
        if not isinstance(symbols[0], str) or not symbols[0]:
            raise malformed(join_path(path, "symbols"), "symbol must be a nonempty string")
        return UnivPolyRing(base, symbols[0])


class FqFieldCodec(RingCodec):
    type_name = "fqPolyRepField"
    ring_type = FqField
    by_reference = True

    def encode_data(self, ring, ctx):
        return {"def_pol": ctx.encode_node(ring.def_pol)}

    def decode_data(self, data, params, ctx, path):
        data = map_from_tree(data, path, "def_pol")
        def_pol = ctx.decode_node(data["def_pol"], join_path(path, "def_pol"))
        if not isinstance(def_pol, UnivPoly):
            raise malformed(join_path(path, "def_pol"), "defining polynomial must be a PolyRingElem")
        try:
            field = FqField(def_pol, check=ctx.session.strict)
        except AlgebraError as exc:
            raise malformed(path, str(exc)) from None
        if field.is_field is False:
            warnings.warn(
                f"{path}: {field!r} is defined by the reducible polynomial {def_pol!r}; "
                "it was loaded as a quotient ring, not a field",
                ReducibleModulusWarning,
                stacklevel=2,
            )
        return field


class MPolyRingCodec(RingCodec):
    type_name = "MPolyRing"
    ring_type = MPolyRing
    by_reference = True

    def encode_data(self, ring, ctx):
        return {"base_ring": ctx.encode_ring(ring.base_ring), "symbols": list(ring.symbols)}

    def decode_data(self, data, params, ctx, path):
        data = map_from_tree(data, path, "base_ring", "symbols")
        base = ctx.decode_ring(data["base_ring"], join_path(path, "base_ring"))
        symbols = list_from_tree(data["symbols"], join_path(path, "symbols"))
        if not all(isinstance(s, str) for s in symbols):
            raise malformed(join_path(path, "symbols"), "symbols must be strings")
        try:
            return MPolyRing(base, symbols)
        except AlgebraError as exc:
            raise malformed(path, str(exc)) from None


# elements --------------------------------------------------------------------


class ZZRingElemCodec(ElementCodec):
    type_name = "ZZRingElem"
    parent_type = IntegerRing

    def handles(self, value):
        return isinstance(value, int) and not isinstance(value, bool)

    def parent_params(self, parent, ctx):
        return None

    def encode_params(self, value, ctx):
        return None

    def decode_params(self, params, ctx, path):
        return ZZ

    def encode_elem(self, value, ctx):
        return str(value)

    def decode_elem(self, data, parent, ctx, path):
        return int_from_tree(data, path)


class QQFieldElemCodec(ElementCodec):
    type_name = "QQFieldElem"
    parent_type = RationalField

    def handles(self, value):
        return isinstance(value, Fraction)

    def parent_params(self, parent, ctx):
        return None

    def encode_params(self, value, ctx):
        return None

    def decode_params(self, params, ctx, path):
        return QQ

    def encode_elem(self, value, ctx):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}//{value.denominator}"

    def decode_elem(self, data, parent, ctx, path):
        if isinstance(data, str) and "//" in data:
            num, _, den = data.partition("//")
            n = int_from_tree(num, path)
            d = int_from_tree(den, path, minimum=1)
            return Fraction(n, d)
        return Fraction(int_from_tree(data, path))


class FpFieldElemCodec(ElementCodec):
    type_name = "fpFieldElem"
    parent_type = PrimeField

    def encode_elem(self, value, ctx):
        return str(value.value)

    def decode_elem(self, data, parent, ctx, path):
        value = int_from_tree(data, path)
        if not 0 <= value < parent.p:
            raise malformed(path, f"{value} is not a canonical residue mod {parent.p}")
        return parent(value)


class FqFieldElemCodec(ElementCodec):
    type_name = "fqPolyRepFieldElem"
    parent_type = FqField

    def encode_elem(self, value, ctx):
        return [[str(i), str(c.value)] for i, c in value.rep]

    def decode_elem(self, data, parent, ctx, path):
        terms = []
        for i, term in enumerate(list_from_tree(data, path)):
            tpath = join_path(path, i)
            power, coeff = list_from_tree(term, tpath, length=2)
            power = int_from_tree(power, join_path(tpath, 0), minimum=0)
            if power >= parent.degree:
                raise malformed(tpath, f"power {power} exceeds field degree {parent.degree}")
            value = int_from_tree(coeff, join_path(tpath, 1))
            if not 0 <= value < parent.p:
                raise malformed(join_path(tpath, 1), f"{value} is not a canonical residue mod {parent.p}")
            terms.append((power, value))
        return parent.from_terms(terms)


class PolyRingElemCodec(ElementCodec):
    type_name = "PolyRingElem"
    parent_type = UnivPolyRing

    def encode_elem(self, value, ctx):
        base = value.parent.base_ring
        return [[str(d), ctx.encode_elem(base, c)] for d, c in value.terms]

    def decode_elem(self, data, parent, ctx, path):
        terms = []
        for i, term in enumerate(list_from_tree(data, path)):
            tpath = join_path(path, i)
            degree, coeff = list_from_tree(term, tpath, length=2)
            terms.append(
                (
                    int_from_tree(degree, join_path(tpath, 0), minimum=0),
                    ctx.decode_elem(parent.base_ring, coeff, join_path(tpath, 1)),
                )
            )
        return parent.from_terms(terms)


class MPolyRingElemCodec(ElementCodec):
    type_name = "MPolyRingElem"
    parent_type = MPolyRing

    def encode_elem(self, value, ctx):
        base = value.parent.base_ring
        return [[[str(e) for e in exps], ctx.encode_elem(base, c)] for exps, c in value.terms]

    def decode_elem(self, data, parent, ctx, path):
        terms = []
        for i, term in enumerate(list_from_tree(data, path)):
            tpath = join_path(path, i)
            exps, coeff = list_from_tree(term, tpath, length=2)
            epath = join_path(tpath, 0)
            exps = list_from_tree(exps, epath, length=parent.nvars)
            terms.append(
                (
                    tuple(int_from_tree(e, join_path(epath, j), minimum=0) for j, e in enumerate(exps)),
                    ctx.decode_elem(parent.base_ring, coeff, join_path(tpath, 1)),
                )
            )
        return parent.from_terms(terms)


# containers ------------------------------------------------------------------


def as_vector(value) -> Vector:
    """Plain lists are saved as vectors when all entries share one parent."""
    if isinstance(value, Vector):
        return value
    try:
        return Vector.of(value)
    except AlgebraError as exc:
        raise SerializationError(f"cannot save list as a Vector: {exc}") from None


class VectorCodec(Codec):
    """``params`` is the one type descriptor shared by all entries."""

    type_name = "Vector"

    def handles(self, value):
        return isinstance(value, (Vector, list))

    def encode_params(self, value, ctx):
        return ctx.elem_type_desc(as_vector(value).base).to_tree()

    def decode_params(self, params, ctx, path):
        return ctx.decode_elem_type(params, path)

    def encode_data(self, value, ctx):
        value = as_vector(value)
        return [ctx.encode_elem(value.base, e) for e in value]

    def decode_data(self, data, parent, ctx, path):
        entries = [
            ctx.decode_elem(parent, e, join_path(path, i))
            for i, e in enumerate(list_from_tree(data, path))
        ]
        return Vector(parent, entries)


class MatrixCodec(Codec):
    """Row-major: ``data`` is an array of rows."""

    type_name = "Matrix"

    def handles(self, value):
        return isinstance(value, Matrix)

    def encode_params(self, value, ctx):
        return ctx.elem_type_desc(value.base).to_tree()

    def decode_params(self, params, ctx, path):
        return ctx.decode_elem_type(params, path)

    def encode_data(self, value, ctx):
        return [[ctx.encode_elem(value.base, e) for e in row] for row in value.rows()]

    def decode_data(self, data, parent, ctx, path):
        rows = []
        for i, row in enumerate(list_from_tree(data, path)):
            rpath = join_path(path, i)
            row = list_from_tree(row, rpath, length=len(rows[0]) if rows else None)
            rows.append([ctx.decode_elem(parent, e, join_path(rpath, j)) for j, e in enumerate(row)])
        return Matrix(parent, rows)


class TupleCodec(Codec):
    """``params`` holds one type descriptor per entry, ``data`` one payload each."""

    type_name = "Tuple"

    def handles(self, value):
        return isinstance(value, tuple)

    def encode_params(self, value, ctx):
        return [ctx.type_desc(e).to_tree() for e in value]

    def decode_params(self, params, ctx, path):
        params = list_from_tree(params, path)
        return [
            ctx.decode_type_params(p, join_path(path, i)) for i, p in enumerate(params)
        ]

    def encode_data(self, value, ctx):
        out = []
        for e in value:
            data = ctx.codec_for_value(e).encode_data(e, ctx)
            out.append(None if data is NO_DATA else data)
        return out

    def decode_data(self, data, entries, ctx, path):
        data = list_from_tree(data, path, length=len(entries))
        return tuple(
            codec.decode_data(d, params, ctx, join_path(path, i))
            for i, ((codec, params), d) in enumerate(zip(entries, data))
        )


BUILTIN_CODECS: tuple[type[Codec], ...] = (
    QQFieldCodec,
    ZZRingElemCodec,
    QQFieldElemCodec,
    FpFieldCodec,
    FpFieldElemCodec,
    PolyRingCodec,
    PolyRingElemCodec,
    FqFieldCodec,
    FqFieldElemCodec,
    MPolyRingCodec,
    MPolyRingElemCodec,
    VectorCodec,
    TupleCodec,
    MatrixCodec,
)
