"""Homogeneous vectors and matrices over a single parent ring."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import AlgebraError, ParentMismatchError
from .base import Ring, element_key, parent_of

HETEROGENEOUS_HINT = (
    "all entries must share one parent ring; "
    "save heterogeneous collections as a tuple instead"
)


def _check_entries(base: Ring, entries: Iterable) -> tuple:
    out = tuple(entries)
    for i, e in enumerate(out):
        if parent_of(e) is not base:
            raise ParentMismatchError(f"entry {i} lives in {parent_of(e)!r}, not {base!r}: {HETEROGENEOUS_HINT}")
    return out


class Vector(Sequence):
    """Entries all live in the same parent object ``base``."""

    def __init__(self, base: Ring, entries: Iterable = ()):
        self.base = base
        self.entries = _check_entries(base, entries)

    @classmethod
    def of(cls, entries: Sequence) -> "Vector":
        """Infer the common parent from the entries (which must be nonempty)."""
        if not entries:
            raise AlgebraError("cannot infer the parent of an empty vector")
        return cls(parent_of(entries[0]), entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.base is other.base and self.entries == other.entries

    def __hash__(self):
        return hash((id(self.base), tuple(element_key(e) for e in self.entries)))

    def _same(self, other: "Vector"):
        if not isinstance(other, Vector) or other.base is not self.base:
            raise ParentMismatchError("vectors live over different parent rings")
        if len(other) != len(self):
            raise AlgebraError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._same(other)
        return Vector(self.base, (a + b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return Vector(self.base, (-a for a in self.entries))

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"Vector({self.base!r}, {list(self.entries)!r})"


class Matrix:
    """A rows x cols matrix stored row-major."""

    def __init__(self, base: Ring, rows: Sequence[Sequence]):
        rows = [tuple(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise AlgebraError("matrix rows have different lengths")
        self.base = base
        self.nrows = len(rows)
        self.ncols = ncols
        self.entries = _check_entries(base, (e for r in rows for e in r))

    @classmethod
    def identity(cls, base: Ring, n: int) -> "Matrix":
        return cls(base, [[base.one() if i == j else base.zero() for j in range(n)] for i in range(n)])

    def rows(self) -> list[tuple]:
        c = self.ncols
        return [self.entries[i * c : (i + 1) * c] for i in range(self.nrows)]

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.entries[i * self.ncols + j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.base is other.base
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((id(self.base), self.nrows, self.ncols, tuple(element_key(e) for e in self.entries)))

    def __add__(self, other):
        if not isinstance(other, Matrix) or other.base is not self.base:
            raise ParentMismatchError("matrices live over different parent rings")
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise AlgebraError("dimension mismatch")
        c = self.ncols
        flat = [a + b for a, b in zip(self.entries, other.entries)]
        return Matrix(self.base, [flat[i * c : (i + 1) * c] for i in range(self.nrows)])

    def __neg__(self):
        return Matrix(self.base, [[-e for e in r] for r in self.rows()])

    def __matmul__(self, other):
        if isinstance(other, Vector):
            if other.base is not self.base:
                raise ParentMismatchError("matrix and vector live over different parent rings")
            if len(other) != self.ncols:
                raise AlgebraError(
                    f"dimension mismatch: {self.nrows}x{self.ncols} matrix times vector of length {len(other)}"
                )
            return Vector(self.base, (_dot(self.base, r, other.entries) for r in self.rows()))
        if isinstance(other, Matrix):
            if other.base is not self.base:
                raise ParentMismatchError("matrices live over different parent rings")
            if other.nrows != self.ncols:
                raise AlgebraError("dimension mismatch")
            cols = list(zip(*other.rows())) if other.nrows else [()] * other.ncols
            return Matrix(self.base, [[_dot(self.base, r, c) for c in cols] for r in self.rows()])
        return NotImplemented

    __mul__ = __matmul__

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        return f"Matrix({self.base!r}, {self.rows()!r})"


def _dot(base: Ring, a: Sequence, b: Sequence):
    acc = base.zero()
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc
