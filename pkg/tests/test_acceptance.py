"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import random
import warnings

import pytest

from mrdikit import (
    Session,
    builtin_mrdi_schema,
    compress_subtree,
    decompress_subtree,
    emit_document,
    parse_document,
    upgrade,
    validate,
)
from mrdikit.algebra import (
    HETEROGENEOUS_HINT,
    Matrix,
    MPolyRing,
    Vector,
    enumerate_field,
    equals,
    is_zero,
    parent_of,
)
from mrdikit.cli import main
from mrdikit.codecs import ReducibleModulusWarning
from mrdikit.document import document_to_tree
from mrdikit.errors import SerializationError
from mrdikit.tree import emit_json, tree_identical, walk

from helpers import (
    MUTATIONS,
    downgrade,
    field_axiom_failures,
    fixture_text,
    gf49,
    mutate,
    quadratic_table,
    random_fq_elem,
    random_tree,
    random_value,
    small_fields,
)

KINDS = ("mpoly", "univ", "vector", "tuple", "matrix")


@pytest.fixture
def report(capsys):
    """Print one line per criterion straight to the terminal, then assert."""

    def emit(number: int, title: str, failures: list[str]) -> None:
        status = "PASS" if not failures else "FAIL"
        line = f"CRITERION {number} [{status}] {title}"
        if failures:
            line += ": " + "; ".join(failures[:5])
        with capsys.disabled():
            print("\n" + line)
        assert not failures, line

    return emit


def reload(session: Session, doc):
    return session.load(parse_document(emit_document(doc)))


def same_parents(loaded, original) -> bool:
    if isinstance(original, tuple):
        return all(same_parents(a, b) for a, b in zip(loaded, original))
    if isinstance(original, (Vector, Matrix)):
        return loaded.base is original.base
    return parent_of(loaded) is parent_of(original)


def count_units(elements) -> int:
    one = elements[0].parent.one()
    return sum(any(x * y == one for y in elements) for x in elements)


# 1 ---------------------------------------------------------------------------------


def test_criterion_1_example_fixture(report):
    failures = []
    doc = parse_document(fixture_text("example_polynomial.mrdi"))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        f = Session().load(doc)
    R = f.parent
    K = R.base_ring
    a = K.gen()
    y, z = R.gens()
    expected = 2 * y**3 * z**4 + R(a + 3) * z**2 + R(5 * a) * y + 1
    if not equals(f, expected):
        failures.append(f"loaded {f!r} differs from 2y^3z^4 + (a+3)z^2 + 5ay + 1")
    if len(f.terms) != 4:
        failures.append(f"{len(f.terms)} terms, expected 4")
    elements = enumerate_field(K)
    if K.order != 49 or len({x.coeffs for x in elements}) != 49:
        failures.append(f"coefficient ring has {K.order} elements, expected 49")
    if not is_zero(a**2 + a + 1):
        failures.append("generator does not satisfy a^2 + a + 1 = 0")
    units = count_units(elements)
    if K.is_field is not True or units != 48:
        roots = [r for r in range(7) if (r * r + r + 1) % 7 == 0]
        failures.append(
            f"not a field: x^2+x+1 has roots {roots} mod 7, so the quotient has {units} units, not 48"
        )
    if any(issubclass(w.category, ReducibleModulusWarning) for w in caught) != (K.is_field is False):
        failures.append("reducible modulus not reported")
    report(1, "example fixture: equal to the bivariate polynomial, 4 terms, 49-element field", failures)


# 2 ---------------------------------------------------------------------------------


def test_criterion_2_round_trip(report):
    rng = random.Random(2024)
    session = Session()
    failures = []
    for i in range(500):
        kind = KINDS[i % len(KINDS)]
        v = random_value(rng, kind)
        w = reload(session, session.save(v))
        if not equals(w, v):
            failures.append(f"value {i} ({kind}) not equal after round trip")
        elif not same_parents(w, v):
            failures.append(f"value {i} ({kind}) came back over a different parent object")
    report(2, "500 random values round-trip with parent identity", failures)


# 3 ---------------------------------------------------------------------------------


def test_criterion_3_schema(report):
    rng = random.Random(3)
    schema = builtin_mrdi_schema()
    session = Session()
    failures = []
    trees = []
    for i in range(100):
        trees.append(document_to_tree(session.save(random_value(rng, KINDS[i % len(KINDS)]))))
    K = gf49()
    for value in (K, MPolyRing(K, ["y"]), 17, K.gen(), (K.one(), 3)):
        trees.append(document_to_tree(session.save(value)))
    for i, tree in enumerate(trees):
        if validate(tree, schema):
            failures.append(f"saved document {i} fails the schema: {validate(tree, schema)[0]}")
    accepted = 0
    for i in range(500):
        kind = MUTATIONS[i % len(MUTATIONS)]
        bad = mutate(rng, trees[i % 100], kind)
        if not validate(bad, schema):
            accepted += 1
            failures.append(f"mutation {i} ({kind}) accepted")
    report(3, f"{len(trees)} saved documents conform; 500 mutants rejected ({accepted} false accepts)", failures)


# 4 ---------------------------------------------------------------------------------


def test_criterion_4_vector_tuple(report):
    failures = []
    session = Session()
    K = gf49()
    R1, R2 = MPolyRing(K, ["y", "z"]), MPolyRing(K, ["y", "z"])
    p, q = R1.gens()[0], R2.gens()[0]
    try:
        session.save([p, q])
        failures.append("vector over distinct parents was saved")
    except SerializationError as exc:
        if HETEROGENEOUS_HINT not in str(exc):
            failures.append(f"error does not point to tuples: {exc}")
    tup = document_to_tree(session.save_tuple([p, q]))
    params = tup["_type"]["params"]
    if not (isinstance(params, list) and len(params) == 2 and all(isinstance(d, dict) and "name" in d for d in params)):
        failures.append(f"tuple params {params!r} is not two type descriptors")
    vec = document_to_tree(session.save(Vector(R1, [p, p * p])))
    vparams = vec["_type"]["params"]
    if not (isinstance(vparams, dict) and set(vparams) == {"name", "params"}):
        failures.append(f"vector params {vparams!r} is not exactly one type descriptor")
    w = reload(session, session.save_tuple([p, q]))
    if not (w[0].parent is R1 and w[1].parent is R2):
        failures.append("tuple entries lost their parents")
    report(4, "heterogeneous vector rejected, tuple carries 2 descriptors, vector 1", failures)


# 5 ---------------------------------------------------------------------------------


def test_criterion_5_continuation(report, tmp_path, capsys):
    failures = []
    rng = random.Random(5)
    K = gf49()
    table = quadratic_table(1, 0, 7)
    for x in enumerate_field(K):
        for y in enumerate_field(K):
            if tuple((x * y).coeffs) != table[(tuple(x.coeffs), tuple(y.coeffs))]:
                failures.append(f"kernel product {x!r}*{y!r} disagrees with the table")
    M = Matrix(K, [[random_fq_elem(rng, K) for _ in range(3)] for _ in range(3)])
    v = Vector(K, [random_fq_elem(rng, K) for _ in range(3)])
    alice = Session()
    mpath, vpath, out = tmp_path / "M.mrdi", tmp_path / "v.mrdi", tmp_path / "Mv.mrdi"
    mpath.write_text(emit_document(alice.save(M)))
    vpath.write_text(emit_document(alice.save(v)))
    if main(["mulmv", str(mpath), str(vpath), "--out", str(out)]) != 0:
        failures.append("mulmv failed: " + capsys.readouterr().err.strip())
    else:
        bob = Session()
        M2 = bob.load(parse_document(mpath.read_text()))
        v2 = bob.load(parse_document(vpath.read_text()))
        w = bob.load(parse_document(out.read_text()))
        if not (M2.base is v2.base is w.base):
            failures.append("ring not unified by UUID")
        if w != M2 @ v2:
            failures.append("product differs from in-memory multiplication")
        for i, row in enumerate(M.rows()):
            acc = (0, 0)
            for a, b in zip(row, v):
                t = table[(tuple(a.coeffs), tuple(b.coeffs))]
                acc = ((acc[0] + t[0]) % 7, (acc[1] + t[1]) % 7)
            if tuple(w[i].coeffs) != acc:
                failures.append(f"entry {i} differs from the table computation")
    # negative case: same data written by two unrelated sessions
    mpath.write_text(emit_document(Session().save(M)))
    vpath.write_text(emit_document(Session().save(v)))
    code = main(["mulmv", str(mpath), str(vpath)])
    err = capsys.readouterr().err
    if code == 0 or "not recognized as the same ring" not in err:
        failures.append(f"unrelated sessions were not rejected (exit {code})")
    report(5, "matrix and vector files continue a computation; unrelated files rejected", failures)


# 6 ---------------------------------------------------------------------------------


def test_criterion_6_field_axioms(report):
    failures = []
    fields = small_fields(343)
    orders = sorted(f.order for f in fields)
    expected_orders = sorted(
        [2, 3, 5, 7, 11, 13, 4, 8, 16, 32, 64, 128, 256, 9, 27, 81, 243, 25, 125, 49, 343, 121, 169, 289]
    )
    if orders != expected_orders:
        failures.append(f"field list {orders} incomplete")
    for field in fields:
        problems = field_axiom_failures(enumerate_field(field))
        if problems:
            failures.append(f"{field!r}: {', '.join(problems)}")
    elements = enumerate_field(gf49())
    nonzero = [x for x in elements if not x.is_zero()]
    if count_units(elements) != 48 or len(nonzero) != 48:
        failures.append("multiplicative group of GF(49) does not have order 48")
    report(6, f"field axioms hold on all {len(fields)} fields of order <= 343; |GF(49)*| = 48", failures)


# 7 ---------------------------------------------------------------------------------


def test_criterion_7_upgrade_foreign_compress(report):
    failures = []
    rng = random.Random(7)
    session = Session()
    for i in range(25):
        v = random_value(rng, KINDS[i % len(KINDS)])
        native = session.save(v)
        legacy = downgrade(native, "0.11.0")
        up = upgrade(legacy, "Oscar", "0.13.0-DEV")
        if emit_document(up) != emit_document(native):
            failures.append(f"upgraded value {i} differs from the native file")
        if not equals(reload(session, up), v):
            failures.append(f"upgraded value {i} does not load equal")

    base = document_to_tree(session.save(random_value(rng, "mpoly")))
    base["_ns"]["Maxima"] = ["https://maxima.sourceforge.io", "5.47"]
    for i in range(10):
        payload = random_tree(rng, 5)
        tree = {**base, "maxima": payload}
        expected = emit_json(payload)
        text = emit_json(tree)
        for _ in range(100):
            doc = parse_document(text)
            text = emit_document(doc)
            if emit_json(doc.extra["maxima"]) != expected:
                failures.append(f"foreign payload {i} changed")
                break

    done = 0
    while done < 100:
        doc = session.save(random_value(rng))
        tree = document_to_tree(doc)
        regions = ["/data"] + [f"/_refs/{u}/data" for u in doc.refs]
        paths = [p for p, _ in walk(tree) if any(p == r or p.startswith(r + "/") for r in regions)]
        path = rng.choice(paths)
        back = document_to_tree(decompress_subtree(compress_subtree(doc, path), path))
        if not tree_identical(back, tree):
            failures.append(f"compress/decompress at {path} not exact")
        done += 1
    report(7, "two-hop upgrade matches native, foreign payloads stable, compression exact", failures)
