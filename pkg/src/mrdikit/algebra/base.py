"""Ring and element base classes.

Rings compare by identity: two rings built from equal arguments are
different objects, and elements of one never silently mix with elements
of the other.  Structural comparison is available separately through
:func:`ring_equals`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from ..errors import AlgebraError, ParentMismatchError


class Ring:
    """Base class for parent objects.  Equality and hashing are by identity."""

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __call__(self, value: Any):
        raise NotImplementedError

    def structure(self) -> tuple:
        """A hashable description of the construction, ignoring identity."""
        raise NotImplementedError


class IntegerRing(Ring):
    """The integers; elements are plain Python ints."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __call__(self, value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParentMismatchError(f"cannot convert {value!r} to an integer")
        return value

    def structure(self) -> tuple:
        return ("ZZ",)

    def __repr__(self):
        return "ZZ"


class RationalField(Ring):
    """The field of rationals, a singleton; elements are Fractions."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __call__(self, value):
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise ParentMismatchError(f"cannot convert {value!r} to a rational")
        return Fraction(value)

    def structure(self) -> tuple:
        return ("QQ",)

    def __repr__(self):
        return "QQ"


ZZ = IntegerRing()
QQ = RationalField()


def parent_of(x: Any) -> Ring:
    if isinstance(x, RingElement):
        return x.parent
    if isinstance(x, bool):
        raise AlgebraError("booleans are not ring elements")
    if isinstance(x, int):
        return ZZ
    if isinstance(x, Fraction):
        return QQ
    raise AlgebraError(f"{type(x).__name__} is not a ring element")


def ring_equals(a: Ring, b: Ring) -> bool:
    """Structural equality of two rings, regardless of identity."""
    return a.structure() == b.structure()


def element_key(x: Any) -> Any:
    """Parent-free hashable value of an element."""
    if isinstance(x, RingElement):
        return x._key()
    return x


class RingElement:
    """Common arithmetic plumbing; subclasses define ``_add``, ``_mul``,
    ``_neg``, ``_key`` and ``is_zero`` on operands of the same parent."""

    __slots__ = ("parent",)
    parent: Ring

    def _coerce(self, other):
        if isinstance(other, RingElement) and other.parent is self.parent:
            return other
        try:
            return self.parent(other)
        except ParentMismatchError:
            return None

    def _binary(self, other, op, reflected=False):
        value = self._coerce(other)
        if value is None:
            if not reflected and type(other) is not type(self):
                return NotImplemented
            raise ParentMismatchError(
                f"operands live in different parents: {self.parent!r} and "
                f"{getattr(other, 'parent', type(other).__name__)!r}"
            )
        return op(value, self) if reflected else op(self, value)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a._add(b))

    def __radd__(self, other):
        return self._binary(other, lambda a, b: a._add(b), reflected=True)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a._add(b._neg()))

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: a._add(b._neg()), reflected=True)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a._mul(b))

    def __rmul__(self, other):
        return self._binary(other, lambda a, b: a._mul(b), reflected=True)

    def __neg__(self):
        return self._neg()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.parent.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        raise AlgebraError(f"{type(self).__name__} has no inverse operation")

    def __truediv__(self, other):
        value = self._coerce(other)
        if value is None:
            raise ParentMismatchError("division across different parents")
        return self * value.inverse()

    def __eq__(self, other):
        if isinstance(other, RingElement) and other.parent is not self.parent:
            return False
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self._key() == value._key()

    def __hash__(self):
        return hash((id(self.parent), self._key()))

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self) -> bool:
        raise NotImplementedError

    def _key(self):
        raise NotImplementedError

    def _add(self, other):
        raise NotImplementedError

    def _mul(self, other):
        raise NotImplementedError

    def _neg(self):
        raise NotImplementedError
