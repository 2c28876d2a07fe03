"""Prime fields GF(p) and extension fields GF(p)[x]/<f>."""

from __future__ import annotations

import itertools

from ..errors import AlgebraError, ParentMismatchError
from .base import Ring, RingElement
from .poly import UnivPoly, UnivPolyRing

PRIMALITY_BOUND = 2**31
IRREDUCIBILITY_BOUND = 10**6
ENUMERATION_BOUND = 10**6


def is_prime(n: int) -> bool:
    """Trial division; meant for moduli below PRIMALITY_BOUND."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField(Ring):
    """Z/pZ.  ``checked`` is False when p was too large to test for primality."""

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, int) or p < 2:
            raise AlgebraError(f"invalid prime field modulus {p!r}")
        self.p = p
        self.checked = p < PRIMALITY_BOUND
        if self.checked and not is_prime(p):
            raise AlgebraError(f"{p} is not prime")

    @property
    def order(self) -> int:
        return self.p

    characteristic = order

    def __repr__(self):
        return f"GF({self.p})"

    def structure(self) -> tuple:
        return ("fpField", self.p)

    def __call__(self, value):
        if isinstance(value, PrimeFieldElem):
            if value.parent is self:
                return value
            raise ParentMismatchError(f"{value!r} belongs to a different copy of GF({value.parent.p})")
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParentMismatchError(f"cannot convert {value!r} into {self!r}")
        return PrimeFieldElem(self, value % self.p)


class PrimeFieldElem(RingElement):
    __slots__ = ("value",)

    def __init__(self, parent: PrimeField, value: int):
        self.parent = parent
        self.value = value

    def is_zero(self) -> bool:
        return self.value == 0

    def _key(self):
        return self.value

    def _add(self, other):
        return PrimeFieldElem(self.parent, (self.value + other.value) % self.parent.p)

    def _neg(self):
        return PrimeFieldElem(self.parent, -self.value % self.parent.p)

    def _mul(self, other):
        return PrimeFieldElem(self.parent, self.value * other.value % self.parent.p)

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError("zero has no inverse")
        return PrimeFieldElem(self.parent, pow(self.value, -1, self.parent.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return str(self.value)


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of dense coefficient lists (ascending) over GF(p)."""
    num = num[:]
    inv_lead = pow(den[-1], -1, p)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] * inv_lead % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return num[:dd] if dd else []


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(num: list[int], den: list[int], p: int) -> tuple[list[int], list[int]]:
    num = _trim(num[:])
    den = _trim(den[:])
    inv_lead = pow(den[-1], -1, p)
    quot = [0] * max(len(num) - len(den) + 1, 0)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] * inv_lead % p
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] = (num[i + j] - c * d) % p
    return quot, _trim(num)


def _poly_inverse_mod(a: list[int], m: list[int], p: int) -> list[int] | None:
    """Inverse of ``a`` modulo ``m`` over GF(p) by the extended Euclidean
    algorithm; None when gcd(a, m) is not constant."""
    r0, r1 = _trim(m[:]), _trim(a[:])
    s0, s1 = [], [1]
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        prod = [0] * (len(q) + len(s1))
        for i, x in enumerate(q):
            for j, y in enumerate(s1):
                prod[i + j] += x * y
        width = max(len(s0), len(prod))
        s_next = [((s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)) % p for i in range(width)]
        r0, r1, s0, s1 = r1, r, s1, _trim(s_next)
    if len(r0) != 1:
        return None
    c = pow(r0[0], -1, p)
    return [x * c % p for x in s0]


def is_irreducible_bruteforce(coeffs: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree up to deg/2."""
    n = len(coeffs) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(coeffs, list(low) + [1], p)):
                return False
    return True


class FqField(Ring):
    """The quotient GF(p)[x]/<def_pol> for a monic ``def_pol``.

    With ``check=True`` a reducible ``def_pol`` is rejected.  Without it the
    quotient ring is still built (loaders need this to read whatever a file
    says) and ``is_field`` records the outcome: True, False, or None when the
    field is too large to check.
    """

    def __init__(self, def_pol: UnivPoly, var: str = "a", check: bool = True):
        ring = def_pol.parent
        if not isinstance(ring, UnivPolyRing) or not isinstance(ring.base_ring, PrimeField):
            raise AlgebraError("defining polynomial must lie in a polynomial ring over a prime field")
        if def_pol.degree < 1:
            raise AlgebraError("defining polynomial must have degree at least 1")
        if def_pol.coeff(def_pol.degree).value != 1:
            raise AlgebraError("defining polynomial must be monic")
        self.def_pol = def_pol
        self.var = var
        self.prime_field: PrimeField = ring.base_ring
        self.p = self.prime_field.p
        self.degree = def_pol.degree
        self._modulus = [def_pol.coeff(i).value for i in range(self.degree + 1)]
        # True/False when verified, None when too large to check
        self.is_field: bool | None = None
        if self.prime_field.checked and self.order <= IRREDUCIBILITY_BOUND:
            self.is_field = is_irreducible_bruteforce(self._modulus, self.p)
        if check and self.is_field is False:
            raise AlgebraError(f"defining polynomial {def_pol!r} is reducible over GF({self.p})")

    @property
    def checked(self) -> bool:
        return self.is_field is not None

    @property
    def order(self) -> int:
        return self.p**self.degree

    @property
    def characteristic(self) -> int:
        return self.p

    def __repr__(self):
        if self.is_field is False:
            return f"GF({self.p})[x]/<{self.def_pol!r}>"
        return f"GF({self.p}^{self.degree})"

    def structure(self) -> tuple:
        return ("fqPolyRepField", self.def_pol.parent.structure(), self.def_pol._key())

    def from_coeffs(self, coeffs) -> "FqElem":
        """Element sum(coeffs[i] * a**i), reduced modulo the defining polynomial."""
        values = []
        for c in coeffs:
            if isinstance(c, PrimeFieldElem):
                c = self.prime_field(c).value
            elif isinstance(c, bool) or not isinstance(c, int):
                raise ParentMismatchError(f"cannot use {c!r} as a coefficient of {self!r}")
            values.append(c % self.p)
        if len(values) > self.degree:
            values = _poly_mod(values, self._modulus, self.p)
        values += [0] * (self.degree - len(values))
        return FqElem(self, tuple(values))

    def from_terms(self, terms) -> "FqElem":
        """Element from ``(power, coeff)`` pairs; powers must be below the degree."""
        values = [0] * self.degree
        for power, c in terms:
            if isinstance(power, bool) or not isinstance(power, int) or not 0 <= power < self.degree:
                raise AlgebraError(f"power {power!r} out of range for {self!r}")
            values[power] += self.prime_field(c).value
        return self.from_coeffs(values)

    def gen(self) -> "FqElem":
        return self.from_coeffs([0, 1])

    def __call__(self, value):
        if isinstance(value, FqElem):
            if value.parent is self:
                return value
            raise ParentMismatchError(f"{value!r} belongs to a different field")
        if isinstance(value, PrimeFieldElem) or (isinstance(value, int) and not isinstance(value, bool)):
            return self.from_coeffs([value])
        raise ParentMismatchError(f"cannot convert {value!r} into {self!r}")


class FqElem(RingElement):
    """Dense coefficients with respect to 1, a, ..., a^(deg-1)."""

    __slots__ = ("coeffs",)

    def __init__(self, parent: FqField, coeffs: tuple[int, ...]):
        self.parent = parent
        self.coeffs = coeffs

    @property
    def rep(self) -> list[tuple[int, PrimeFieldElem]]:
        """Sparse ``(power, coeff)`` pairs, ascending, zeros omitted."""
        F = self.parent.prime_field
        return [(i, F(c)) for i, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _key(self):
        return self.coeffs

    def _add(self, other):
        p = self.parent.p
        return FqElem(self.parent, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def _neg(self):
        p = self.parent.p
        return FqElem(self.parent, tuple(-a % p for a in self.coeffs))

    def _mul(self, other):
        p = self.parent.p
        prod = [0] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return self.parent.from_coeffs([c % p for c in prod])

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        K = self.parent
        inv = _poly_inverse_mod(list(self.coeffs), K._modulus, K.p)
        if inv is None:
            raise ZeroDivisionError(f"{self!r} is a zero divisor in {K!r}")
        return K.from_coeffs(inv)

    def __repr__(self):
        v = self.parent.var
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c:
                mono = "" if i == 0 else (v if i == 1 else f"{v}^{i}")
                parts.append(mono if c == 1 and mono else f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts) or "0"


def enumerate_field(field: PrimeField | FqField) -> list:
    """All elements of a finite field of order at most ENUMERATION_BOUND."""
    if field.order > ENUMERATION_BOUND:
        raise AlgebraError(f"{field!r} has {field.order} elements, too many to enumerate")
    if isinstance(field, PrimeField):
        return [field(i) for i in range(field.p)]
    return [FqElem(field, c) for c in itertools.product(range(field.p), repeat=field.degree)]


def make_prime_field(p: int) -> PrimeField:
    return PrimeField(p)


def make_fq_field(def_pol: UnivPoly, var: str = "a") -> FqField:
    """Extension field; raises if ``def_pol`` is reducible at checkable scale."""
    return FqField(def_pol, var, check=True)
