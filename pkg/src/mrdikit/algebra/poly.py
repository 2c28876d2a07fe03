"""Sparse univariate and multivariate polynomials over any base ring."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import AlgebraError, ParentMismatchError
from .base import Ring, RingElement, element_key


def _coerce_coeff(base: Ring, c):
    if isinstance(c, RingElement) and c.parent is not base:
        try:
            return base(c)
        except ParentMismatchError:
            raise ParentMismatchError(
                f"coefficient {c!r} does not belong to the base ring {base!r}"
            ) from None
    return base(c)


class UnivPolyRing(Ring):
    def __init__(self, base_ring: Ring, symbol: str = "x"):
        if not isinstance(symbol, str) or not symbol:
            raise AlgebraError("polynomial ring symbol must be a nonempty string")
        self.base_ring = base_ring
        self.symbol = symbol

    def __repr__(self):
        return f"{self.base_ring!r}[{self.symbol}]"

    def structure(self) -> tuple:
        return ("PolyRing", self.base_ring.structure(), self.symbol)

    def from_terms(self, terms: Iterable[tuple[int, object]]) -> "UnivPoly":
        """Build a polynomial from ``(degree, coeff)`` pairs in any order."""
        acc: dict[int, object] = {}
        for degree, coeff in terms:
            if isinstance(degree, bool) or not isinstance(degree, int) or degree < 0:
                raise AlgebraError(f"invalid degree {degree!r}")
            coeff = _coerce_coeff(self.base_ring, coeff)
            acc[degree] = acc[degree] + coeff if degree in acc else coeff
        return UnivPoly(self, tuple((d, c) for d, c in sorted(acc.items()) if c))

    def from_coeffs(self, coeffs: Sequence) -> "UnivPoly":
        """Dense constructor: ``coeffs[i]`` multiplies ``x**i``."""
        return self.from_terms(enumerate(coeffs))

    def gen(self) -> "UnivPoly":
        return self.from_terms([(1, self.base_ring.one())])

    def __call__(self, value):
        if isinstance(value, UnivPoly) and value.parent is self:
            return value
        return self.from_terms([(0, _coerce_coeff(self.base_ring, value))])


class UnivPoly(RingElement):
    """``terms`` holds ``(degree, coeff)`` pairs, strictly ascending, no zeros."""

    __slots__ = ("terms",)

    def __init__(self, parent: UnivPolyRing, terms: tuple):
        self.parent = parent
        self.terms = terms

    @property
    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else -1

    def coeff(self, degree: int):
        for d, c in self.terms:
            if d == degree:
                return c
        return self.parent.base_ring.zero()

    def is_zero(self) -> bool:
        return not self.terms

    def _key(self):
        return tuple((d, element_key(c)) for d, c in self.terms)

    def _add(self, other):
        return self.parent.from_terms(self.terms + other.terms)

    def _neg(self):
        return UnivPoly(self.parent, tuple((d, -c) for d, c in self.terms))

    def _mul(self, other):
        return self.parent.from_terms(
            (d1 + d2, c1 * c2) for d1, c1 in self.terms for d2, c2 in other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        x = self.parent.symbol
        parts = []
        for d, c in reversed(self.terms):
            mono = "" if d == 0 else (x if d == 1 else f"{x}^{d}")
            parts.append(f"({c!r})*{mono}" if mono else f"({c!r})")
        return " + ".join(parts)


def _deglex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MPolyRing(Ring):
    def __init__(self, base_ring: Ring, symbols: Sequence[str]):
        symbols = tuple(symbols)
        if not symbols:
            raise AlgebraError("a multivariate polynomial ring needs at least one symbol")
        if any(not isinstance(s, str) or not s for s in symbols):
            raise AlgebraError("symbols must be nonempty strings")
        if len(set(symbols)) != len(symbols):
            raise AlgebraError(f"duplicate symbols in {symbols}")
        self.base_ring = base_ring
        self.symbols = symbols

    @property
    def nvars(self) -> int:
        return len(self.symbols)

    def __repr__(self):
        return f"{self.base_ring!r}[{', '.join(self.symbols)}]"

    def structure(self) -> tuple:
        return ("MPolyRing", self.base_ring.structure(), self.symbols)

    def from_terms(self, terms: Iterable[tuple[Sequence[int], object]]) -> "MPoly":
        """Build a polynomial from ``(exponents, coeff)`` pairs in any order."""
        acc: dict[tuple[int, ...], object] = {}
        for exps, coeff in terms:
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise AlgebraError(
                    f"exponent vector {exps} has length {len(exps)}, ring has {self.nvars} variables"
                )
            if any(isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in exps):
                raise AlgebraError(f"invalid exponent vector {exps}")
            coeff = _coerce_coeff(self.base_ring, coeff)
            acc[exps] = acc[exps] + coeff if exps in acc else coeff
        ordered = sorted(
            ((e, c) for e, c in acc.items() if c),
            key=lambda t: _deglex_key(t[0]),
            reverse=True,
        )
        return MPoly(self, tuple(ordered))

    def gens(self) -> list["MPoly"]:
        one = self.base_ring.one()
        return [
            self.from_terms([(tuple(int(i == j) for j in range(self.nvars)), one)])
            for i in range(self.nvars)
        ]

    def __call__(self, value):
        if isinstance(value, MPoly) and value.parent is self:
            return value
        return self.from_terms([((0,) * self.nvars, _coerce_coeff(self.base_ring, value))])


class MPoly(RingElement):
    """``terms`` holds ``(exponents, coeff)`` pairs in decreasing degree-lex order."""

    __slots__ = ("terms",)

    def __init__(self, parent: MPolyRing, terms: tuple):
        self.parent = parent
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def _key(self):
        return tuple((e, element_key(c)) for e, c in self.terms)

    def _add(self, other):
        return self.parent.from_terms(self.terms + other.terms)

    def _neg(self):
        return MPoly(self.parent, tuple((e, -c) for e, c in self.terms))

    def _mul(self, other):
        return self.parent.from_terms(
            (tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
            for e1, c1 in self.terms
            for e2, c2 in other.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms:
            mono = "*".join(
                s if e == 1 else f"{s}^{e}" for s, e in zip(self.parent.symbols, exps) if e
            )
            parts.append(f"({c!r})*{mono}" if mono else f"({c!r})")
        return " + ".join(parts)
