"""Exact arithmetic kernel: prime fields, extension fields, polynomial rings
and homogeneous containers."""

from __future__ import annotations

from ..errors import AlgebraError, ParentMismatchError
from .base import QQ, ZZ, IntegerRing, RationalField, Ring, RingElement, element_key, parent_of, ring_equals
from .containers import HETEROGENEOUS_HINT, Matrix, Vector
from .fields import (
    FqElem,
    FqField,
    PrimeField,
    PrimeFieldElem,
    enumerate_field,
    is_irreducible_bruteforce,
    is_prime,
    make_fq_field,
    make_prime_field,
)
from .poly import MPoly, MPolyRing, UnivPoly, UnivPolyRing

__all__ = [
    "QQ",
    "ZZ",
    "IntegerRing",
    "RationalField",
    "Ring",
    "RingElement",
    "PrimeField",
    "PrimeFieldElem",
    "FqField",
    "FqElem",
    "UnivPolyRing",
    "UnivPoly",
    "MPolyRing",
    "MPoly",
    "Vector",
    "Matrix",
    "HETEROGENEOUS_HINT",
    "make_prime_field",
    "make_poly_ring",
    "make_fq_field",
    "make_mpoly_ring",
    "enumerate_field",
    "is_prime",
    "is_irreducible_bruteforce",
    "parent_of",
    "ring_equals",
    "structurally_equal",
    "add",
    "mul",
    "neg",
    "equals",
    "is_zero",
]


def make_poly_ring(base: Ring, symbol: str = "x") -> UnivPolyRing:
    return UnivPolyRing(base, symbol)


def make_mpoly_ring(base: Ring, symbols) -> MPolyRing:
    return MPolyRing(base, symbols)


def _container_parent(x):
    if isinstance(x, (Vector, Matrix)):
        return x.base
    return parent_of(x)


def _same_parent(a, b) -> None:
    pa, pb = _container_parent(a), _container_parent(b)
    if pa is not pb:
        raise ParentMismatchError(f"operands live in different parents: {pa!r} and {pb!r}")


def add(a, b):
    """Sum of two values over the identical parent; never coerces."""
    _same_parent(a, b)
    return a + b


def mul(a, b):
    """Product over the identical parent; includes matrix times vector."""
    _same_parent(a, b)
    if isinstance(a, Matrix):
        return a @ b
    if isinstance(a, Vector) or isinstance(b, (Vector, Matrix)):
        raise AlgebraError(f"cannot multiply {type(a).__name__} by {type(b).__name__}")
    return a * b


def neg(a):
    return -a


def equals(a, b) -> bool:
    """Equality of two values; raises if their parents differ."""
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(equals(x, y) for x, y in zip(a, b))
    _same_parent(a, b)
    return a == b


def is_zero(a) -> bool:
    if isinstance(a, (Vector, Matrix)):
        return a.is_zero()
    return not a


def _structure_of(x):
    if isinstance(x, tuple):
        return ("tuple", tuple(_structure_of(e) for e in x))
    if isinstance(x, Vector):
        return ("vector", x.base.structure(), tuple(element_key(e) for e in x))
    if isinstance(x, Matrix):
        return ("matrix", x.base.structure(), x.nrows, x.ncols, tuple(element_key(e) for e in x.entries))
    if isinstance(x, Ring):
        return ("ring", x.structure())
    return ("elem", parent_of(x).structure(), element_key(x))


def structurally_equal(a, b) -> bool:
    """Equality that ignores ring identity, comparing constructions instead."""
    return _structure_of(a) == _structure_of(b)
