import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ZOO_CASES, zoo
from hopftrace.fileformat import (Balancing, DefinitionError, DefinitionFile, dumps, export_family, from_triples,
                                  loads, parse_scalar, to_triples)
from hopftrace.hopf import check_hopf
from hopftrace.linalg import GF, QQ, LinearMap
from hopftrace.zoo import sweedler_h4


@pytest.mark.parametrize("label", sorted(ZOO_CASES))
def test_zoo_export_round_trips_byte_identically(label):
    text = dumps(export_family(zoo(label)))
    again = loads(text)
    assert dumps(again) == text
    assert check_hopf(again.get("H")).ok


def test_balancing_entries_round_trip():
    doc = export_family(sweedler_h4(), balancings=True)
    text = dumps(doc)
    back = loads(text)
    betas = back.of_kind("balancing")
    assert betas and all(isinstance(b, Balancing) for b in betas.values())
    assert dumps(back) == text


def test_loaded_objects_equal_originals():
    h = sweedler_h4()
    doc = export_family(h)
    back = loads(dumps(doc))
    assert back.get("H") == h
    assert back.get("comod H").coaction == doc.get("comod H").coaction
    assert back.get("alg H~").mul == h.mul
    assert back.get("bimod H~:H~").left_action == doc.get("bimod H~:H~").left_action


def test_output_is_valid_json_with_sorted_keys():
    text = dumps(export_family(zoo("kZ2_QQ")))
    raw = json.loads(text)
    assert list(raw) == ["field", "objects"]
    assert list(raw["objects"]) == sorted(raw["objects"])
    assert json.loads(text) == json.loads(json.dumps(raw))


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(lambda f: f != 0)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3),
       st.dictionaries(st.tuples(st.integers(0, 8), st.integers(0, 8)), coeffs, max_size=10))
def test_triples_round_trip(a, b, c, raw):
    rows, cols = a * b, c
    entries = {(r % rows, k % cols): v for (r, k), v in raw.items()}
    m = LinearMap.from_entries(QQ, rows, cols, entries)
    triples = to_triples(m, (c,), (a, b))
    assert all(len(t) == 4 for t in triples)
    assert from_triples(QQ, json.loads(json.dumps(triples)), (c,), (a, b), "m") == m


@given(st.fractions(max_denominator=50))
def test_rational_scalars_are_exact(q):
    from hopftrace.fileformat import format_scalar
    text = format_scalar(QQ, q)
    assert Fraction(parse_scalar(QQ, text, "s")) == q
    if q.denominator == 1:
        assert isinstance(text, int)
    else:
        assert text == f"{q.numerator}/{q.denominator}"


def test_prime_field_scalars():
    F = GF(7)
    assert parse_scalar(F, "1/3", "s") == 5 and parse_scalar(F, -1, "s") == 6
    with pytest.raises(DefinitionError):
        parse_scalar(F, "1/7", "s")
    with pytest.raises(DefinitionError):
        parse_scalar(QQ, "1/0", "s")
    with pytest.raises(DefinitionError):
        parse_scalar(QQ, 0.5, "s")
    with pytest.raises(DefinitionError):
        parse_scalar(QQ, "x", "s")


def _doc(objects, field='"rational"'):
    return '{\n  "field": ' + field + ',\n  "objects": ' + json.dumps(objects, indent=2) + "\n}\n"


def _h1():
    one = [[0, 0, 1]]
    return {"kind": "hopf_algebra", "dim": 1, "mul": [[0, 0, 0, 1]], "unit": one,
            "comul": [[0, 0, 0, 1]], "counit": one, "antipode": one}


def test_minimal_hand_written_file():
    doc = loads(_doc({"k": _h1()}))
    assert check_hopf(doc.get("k")).ok


def test_syntax_errors_report_line_and_column():
    with pytest.raises(DefinitionError) as err:
        loads('{\n  "field": "rational",\n  "objects": {,}\n}')
    assert (err.value.line, err.value.column) == (3, 15)
    assert "line 3, column 15" in str(err.value)


def test_semantic_errors_point_at_the_object():
    bad = _h1()
    bad["mul"] = [[0, 0, 3, 1]]
    text = _doc({"k": bad})
    with pytest.raises(DefinitionError, match="index 3") as err:
        loads(text)
    assert err.value.line == text.splitlines().index('  "objects": {') + 2


@pytest.mark.parametrize("mutate,message", [
    (lambda o: o["k"].pop("antipode"), "missing keys"),
    (lambda o: o["k"].update(kind="ring"), "kind must be one of"),
    (lambda o: o.update(x={"kind": "comodule", "hopf": "nope", "dim": 1, "coaction": []}), "does not name"),
    (lambda o: o["k"].update(dim=0), "positive integer"),
    (lambda o: o["k"].update(mul=[[0, 0, 0, 1], [0, 0, 0, 2]]), "duplicate entry"),
    (lambda o: o["k"].update(basis=["a", "b"]), "basis"),
])
def test_invalid_documents(mutate, message):
    objs = {"k": _h1()}
    mutate(objs)
    with pytest.raises(DefinitionError, match=message):
        loads(_doc(objs))


def test_field_declaration():
    assert loads(_doc({}, '{"prime": 5}')).field == GF(5)
    with pytest.raises(DefinitionError, match="not a prime"):
        loads(_doc({}, '{"prime": 6}'))
    with pytest.raises(DefinitionError, match="field must be"):
        loads(_doc({}, '"real"'))


def test_unlisted_reference_cannot_be_serialized():
    h = sweedler_h4()
    doc = export_family(h, modules=False)
    orphan = DefinitionFile(h.field, {"x": doc.get("comod H")})
    with pytest.raises(ValueError, match="not part of the file"):
        dumps(orphan)
