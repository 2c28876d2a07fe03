"""Shared builders, random generators and independent oracles for the tests."""

from __future__ import annotations

import copy
import random
import re
from fractions import Fraction
from pathlib import Path

from mrdikit.algebra import (
    QQ,
    FqField,
    Matrix,
    MPolyRing,
    PrimeField,
    PrimeFieldElem,
    UnivPolyRing,
    Vector,
    is_irreducible_bruteforce,
)
from mrdikit.document import document_from_tree, document_to_tree
from mrdikit.tree import Number, UUID_RE

FIXTURES = Path(__file__).parent / "fixtures"

POLY_UUID = "a7029443-b1d3-4708-a66d-f68eb6616fcf"
FIELD_UUID = "23f25330-83f7-43a0-ac74-da6f2caa7eb8"
UNIV_UUID = "f2b7cb6b-535a-4a52-a0cc-75f8e93a6719"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


# GF(7)[x]/<x^2+x+1> and the bivariate example polynomial over it -------------


def gf7_quotient(check: bool = False) -> FqField:
    F = PrimeField(7)
    Rx = UnivPolyRing(F, "x")
    return FqField(Rx.from_coeffs([1, 1, 1]), check=check)


def example_polynomial(K: FqField | None = None):
    """2y^3z^4 + (a+3)z^2 + 5ay + 1 over K[y, z]."""
    K = K or gf7_quotient()
    R = MPolyRing(K, ["y", "z"])
    a = K.gen()
    y, z = R.gens()
    return 2 * y**3 * z**4 + R(a + 3) * z**2 + R(5 * a) * y + 1


def gf49() -> FqField:
    """A genuine field of 49 elements: GF(7)[x]/<x^2+1> (x^2+1 has no root mod 7)."""
    F = PrimeField(7)
    return FqField(UnivPolyRing(F, "x").from_coeffs([1, 0, 1]))


# independent quotient arithmetic on coefficient pairs -----------------------


def quadratic_mul(u: tuple[int, int], v: tuple[int, int], c0: int, c1: int, p: int) -> tuple[int, int]:
    """(u0 + u1 a)(v0 + v1 a) with a^2 = -c1 a - c0, over GF(p)."""
    low = u[0] * v[0]
    mid = u[0] * v[1] + u[1] * v[0]
    high = u[1] * v[1]
    return ((low - c0 * high) % p, (mid - c1 * high) % p)


def quadratic_table(c0: int, c1: int, p: int) -> dict:
    pairs = [(i, j) for i in range(p) for j in range(p)]
    return {(u, v): quadratic_mul(u, v, c0, c1, p) for u in pairs for v in pairs}


# random values ---------------------------------------------------------------


def random_quadratic_field(rng: random.Random, p: int) -> FqField:
    F = PrimeField(p)
    Rx = UnivPolyRing(F, "x")
    while True:
        c0, c1 = rng.randrange(p), rng.randrange(p)
        if is_irreducible_bruteforce([c0, c1, 1], p):
            return FqField(Rx.from_coeffs([c0, c1, 1]))


def random_fq_elem(rng: random.Random, K: FqField):
    return K.from_coeffs([rng.randrange(K.p) for _ in range(K.degree)])


def random_mpoly(rng: random.Random, R: MPolyRing, nterms: int = 5, max_exp: int = 4):
    K = R.base_ring
    terms = [
        ([rng.randrange(max_exp + 1) for _ in range(R.nvars)], random_fq_elem(rng, K))
        for _ in range(nterms)
    ]
    return R.from_terms(terms)


def random_coeff(rng: random.Random, base):
    if base is QQ:
        return Fraction(rng.randint(-50, 50), rng.randint(1, 20))
    if isinstance(base, PrimeField):
        return base(rng.randrange(base.p))
    return random_fq_elem(rng, base)


def random_univ(rng: random.Random, R: UnivPolyRing, max_deg: int = 6):
    return R.from_terms([(rng.randrange(max_deg + 1), random_coeff(rng, R.base_ring)) for _ in range(rng.randrange(5))])


def random_value(rng: random.Random, kind: str | None = None):
    """One random saveable value; kinds mirror the round-trip criterion."""
    kind = kind or rng.choice(["mpoly", "univ", "vector", "tuple", "matrix"])
    p = rng.choice([3, 5, 7, 11])
    K = random_quadratic_field(rng, p)
    if kind == "mpoly":
        R = MPolyRing(K, rng.choice([["y", "z"], ["x"], ["u", "v", "w"]]))
        return random_mpoly(rng, R, rng.randrange(7))
    if kind == "univ":
        base = rng.choice([K, PrimeField(p), QQ])
        return random_univ(rng, UnivPolyRing(base, "t"))
    R = MPolyRing(K, ["y", "z"])
    if kind == "vector":
        return Vector(R, [random_mpoly(rng, R, 3) for _ in range(rng.randint(1, 4))])
    if kind == "matrix":
        base = rng.choice([K, R])
        make = (lambda: random_fq_elem(rng, K)) if base is K else (lambda: random_mpoly(rng, R, 2))
        return Matrix(base, [[make() for _ in range(3)] for _ in range(3)])
    S = MPolyRing(random_quadratic_field(rng, rng.choice([3, 5, 7, 11])), ["s"])
    return (random_mpoly(rng, R, 3), random_mpoly(rng, S, 2), random_fq_elem(rng, K))


def random_tree(rng: random.Random, depth: int = 3):
    """Random JSON-like value tree, including awkward strings and long numbers."""
    leaves = [
        lambda: None,
        lambda: rng.choice([True, False]),
        lambda: rng.choice(["", "plain", "quote\"back\\slash", "tab\tnl\n", "ünïcødé ∑", "\x01ctl", "/~1~0"]),
        lambda: Number(str(rng.randint(-(10**30), 10**30))),
        lambda: Number(rng.choice(["0", "-0", "1.5", "2e10", "-3.25E-7", "1" * 200])),
    ]
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(leaves)()
    if rng.random() < 0.5:
        return [random_tree(rng, depth - 1) for _ in range(rng.randrange(4))]
    keys = rng.sample(["a", "b", "_x", "name", "k~/", "ü", "data", "params", "0"], rng.randrange(5))
    return {k: random_tree(rng, depth - 1) for k in keys}


def normalize_uuids(text: str) -> str:
    """Rename UUIDs by order of first appearance so documents from different
    sessions can be compared byte for byte."""
    names: dict[str, str] = {}

    def rename(m: re.Match) -> str:
        return names.setdefault(m.group(0), f"uuid-{len(names)}")

    return re.sub(UUID_RE.pattern.strip("^$"), rename, text)


# schema mutations ------------------------------------------------------------

MUTATIONS = ("drop_type", "malform_uuid", "params_type")


def _mangle_uuid(rng: random.Random, u: str) -> str:
    how = rng.randrange(5)
    if how == 0:
        return u.upper() if u != u.upper() else u + "0"
    if how == 1:
        return u[:-1]
    if how == 2:
        return u.replace("-", "")
    if how == 3:
        i = rng.randrange(len(u))
        return u[:i] + "g" + u[i + 1 :]
    return u + "0"


def mutate(rng: random.Random, tree: dict, kind: str) -> dict:
    """Copy of a saved document tree with one defect of the given kind."""
    tree = copy.deepcopy(tree)
    refs = tree.get("_refs", {})
    if kind == "drop_type":
        target = rng.choice([tree, *refs.values()])
        del target["_type"]
    elif kind == "malform_uuid":
        old = rng.choice(list(refs))
        tree["_refs"] = {(_mangle_uuid(rng, k) if k == old else k): v for k, v in refs.items()}
    elif kind == "params_type":
        target = rng.choice([tree, *refs.values()])
        t = target["_type"]
        name = t if isinstance(t, str) else t["name"]
        target["_type"] = {"name": name, "params": rng.choice([Number("3"), Number("-1.5"), True, False, None])}
    else:
        raise ValueError(kind)
    return tree


# exhaustive field axioms -----------------------------------------------------


def field_index(x) -> int:
    if isinstance(x, PrimeFieldElem):
        return x.value
    return sum(c * x.parent.p**i for i, c in enumerate(x.coeffs))


def field_tables(elements: list):
    """Addition and multiplication tables computed by the kernel, as index arrays."""
    import numpy as np

    n = len(elements)
    index = {field_index(x): i for i, x in enumerate(elements)}
    assert len(index) == n
    A = np.empty((n, n), dtype=np.int32)
    M = np.empty((n, n), dtype=np.int32)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            A[i, j] = index[field_index(x + y)]
            M[i, j] = index[field_index(x * y)]
    return A, M


def field_axiom_failures(elements: list) -> list[str]:
    """Every field axiom checked on all pairs and triples; returns what fails."""
    import numpy as np

    A, M = field_tables(elements)
    n = len(elements)
    idx = np.arange(n)
    zero = int(np.flatnonzero([x.is_zero() for x in elements])[0])
    one = int(np.flatnonzero([field_index(x) == 1 for x in elements])[0])
    failures = []
    if zero == one:
        failures.append("0 == 1")
    for name, T in (("addition", A), ("multiplication", M)):
        if not (T == T.T).all():
            failures.append(f"{name} not commutative")
        for a in range(n):
            # (a op b) op c == a op (b op c) for all b, c
            if not (T[T[a, :], :] == T[a, T]).all():
                failures.append(f"{name} not associative")
                break
    if not ((A[zero] == idx).all() and (M[one] == idx).all()):
        failures.append("identity")
    if not ((A == zero).sum(axis=1) == 1).all():
        failures.append("additive inverses not unique")
    nonzero = idx[idx != zero]
    if not ((M[nonzero] == one).sum(axis=1) == 1).all():
        failures.append("multiplicative inverse missing or not unique")
    for a in range(n):
        # a(b + c) == ab + ac for all b, c
        if not (M[a, A] == A[M[a, :][:, None], M[a, :][None, :]]).all():
            failures.append("not distributive")
            break
    return failures


def first_irreducible(p: int, k: int):
    """Smallest monic degree-k polynomial over GF(p) without a factor, by trial division."""
    import itertools

    for low in itertools.product(range(p), repeat=k):
        coeffs = list(low) + [1]
        if is_irreducible_bruteforce(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


def small_fields(max_order: int = 343) -> list:
    fields = [PrimeField(p) for p in range(2, 14) if all(p % q for q in range(2, p))]
    for p in (2, 3, 5, 7, 11, 13, 17):
        k = 2
        while p**k <= max_order:
            coeffs = first_irreducible(p, k)
            fields.append(FqField(UnivPolyRing(PrimeField(p), "x").from_coeffs(coeffs)))
            k += 1
    return fields


# legacy fixtures -------------------------------------------------------------

LEGACY_NAMES = {
    "MPolyRingElem": "MPolyElem",
    "PolyRingElem": "PolyElem",
    "fpField": "GaloisField",
    "fpFieldElem": "gfp_elem",
    "fqPolyRepField": "FqNmodFiniteField",
    "fqPolyRepFieldElem": "fq_nmod",
}


def downgrade(doc, version: str):
    """Hand-written inverse of the upgrade scripts, used to build legacy fixtures."""

    def rewrite(node):
        if isinstance(node, list):
            return [rewrite(v) for v in node]
        if not isinstance(node, dict):
            return node
        node = {k: rewrite(v) for k, v in node.items()}
        t = node.get("_type")
        if t in ("PolyRing", "MPolyRing") and isinstance(node.get("data"), dict):
            node["data"] = {**node["data"], "symbols": ",".join(node["data"]["symbols"])}
        if version == "0.11.0":
            if isinstance(t, str) and t in LEGACY_NAMES:
                node["_type"] = LEGACY_NAMES[t]
            elif isinstance(t, dict) and t.get("name") in LEGACY_NAMES:
                node["_type"] = {**t, "name": LEGACY_NAMES[t["name"]]}
        return node

    tree = rewrite(document_to_tree(doc))
    tree["_ns"]["Oscar"][1] = version
    return document_from_tree(tree)
