from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gwcovers.errors import ParseError, SchemaError
from gwcovers.io import (
    arc_to_json,
    dump_table,
    ingest_arc,
    ingest_gw_table,
    ingest_instanton_table,
    parse_arc,
    parse_table,
)
from gwcovers.multicover import GWTable
from gwcovers.rational import format_rational, parse_rational


@pytest.mark.parametrize(
    "text,value",
    [("1", Fraction(1)), ("9/8", Fraction(9, 8)), ("-3/6", Fraction(-1, 2)), (" 4 / 2 ", Fraction(2)), (7, Fraction(7))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["3/0", "1.5", "1/-2", "abc", "", "1e3", True, None, 1.0])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(73, 64)) == "73/64"
    assert format_rational(Fraction(-2, 1)) == "-2"
    assert format_rational(Fraction(1, -3)) == "-1/3"


@given(st.fractions())
def test_rational_text_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_ingest_gw_table(tmp_path):
    path = tmp_path / "gw.json"
    path.write_text(json.dumps({"invariants": {"1": "1", "2": "9/8"}}))
    t = ingest_gw_table(path)
    assert t.max_degree == 2 and t.entries == {1: 1, 2: Fraction(9, 8)}


def test_missing_degree_named(tmp_path):
    path = tmp_path / "gw.json"
    path.write_text(json.dumps({"invariants": {"1": "1", "3": "1", "5": "0"}}))
    with pytest.raises(SchemaError, match="missing degree 2"):
        ingest_gw_table(path)


@pytest.mark.parametrize(
    "payload",
    [
        {"invariants": {"0": "1"}},
        {"invariants": {"a": "1"}},
        {"invariants": {"1": "3/0"}},
        {"invariants": {}},
        {"invariants": ["1"]},
        {"wrong": {"1": "1"}},
        [],
    ],
)
def test_table_schema_errors(payload):
    with pytest.raises(ParseError):
        parse_table(payload, "invariants")


def test_bad_json_reports_line(tmp_path):
    path = tmp_path / "gw.json"
    path.write_text('{"invariants":\n {"1": "1",}}')
    with pytest.raises(ParseError) as exc:
        ingest_gw_table(path)
    assert ":2:" in str(exc.value)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        ingest_gw_table(tmp_path / "nope.json")


@given(st.lists(st.fractions(), min_size=1, max_size=30))
def test_table_round_trip(values):
    table = GWTable({d: v for d, v in enumerate(values, 1)})
    data = json.loads(json.dumps(dump_table(table, "invariants")))
    assert GWTable(parse_table(data, "invariants")) == table


def test_instanton_table(tmp_path):
    path = tmp_path / "n.json"
    path.write_text(json.dumps({"instantons": {"2": "0", "1": "5"}}))
    assert ingest_instanton_table(path) == {1: 5, 2: 0}


ARC = {"truncation": 16, "x1": [[2, "1"]], "x2": [[1, "1"]], "x3": [[1, "1"]], "x4": [[1, "1"], [3, "-1/2"]]}


def test_parse_arc(tmp_path):
    path = tmp_path / "arc.json"
    path.write_text(json.dumps(ARC))
    a = ingest_arc(path)
    assert a.trunc == 16 and a.x4.terms == ((1, 1), (3, Fraction(-1, 2)))
    assert arc_to_json(a) == ARC


def test_arc_empty_coordinate_accepted():
    a = parse_arc({**ARC, "x2": []})
    assert a.x2.terms == ()


def test_arc_default_truncation():
    data = dict(ARC)
    del data["truncation"]
    assert parse_arc(data).trunc == 16


@pytest.mark.parametrize(
    "patch",
    [
        {"x1": [[16, "1"]]},
        {"x1": [[0, "1"]]},
        {"x1": [[-1, "1"]]},
        {"x1": [[1, "1"], [1, "2"]]},
        {"x1": [[1]]},
        {"x1": "t"},
        {"x1": [[1, "3/0"]]},
        {"truncation": 0},
        {"truncation": "16"},
        {"x5": []},
    ],
)
def test_arc_schema_errors(patch):
    with pytest.raises(ParseError):
        parse_arc({**ARC, **patch})


def test_arc_missing_coordinate():
    data = dict(ARC)
    del data["x3"]
    with pytest.raises(SchemaError, match="x3"):
        parse_arc(data)
