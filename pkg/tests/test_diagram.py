from __future__ import annotations

import json

import pytest

from conftest import VALID, fixture_text, load
from knotlattice.diagram import (
    Corner,
    Dart,
    DiagramError,
    clockwise_between,
    diagram_to_dict,
    parse_diagram,
    segment_endpoints,
    segment_regions,
    trace_regions,
    validate,
)


@pytest.mark.parametrize("name", VALID)
def test_regions_satisfy_euler(name):
    d = load(name)
    rm = trace_regions(d)
    assert rm.region_count == d.n + 2
    # every corner belongs to exactly one face
    assert sorted(c for face in rm.faces for c in face) == sorted(d.corners())


@pytest.mark.parametrize("name", VALID)
def test_fixtures_are_valid_and_prime(name):
    report = validate(load(name))
    assert report.ok, report.findings
    assert report.primality


def test_sizes():
    assert (load("hopf").n, load("hopf").segment_count) == (2, 4)
    assert (load("trefoil").n, load("trefoil").segment_count) == (3, 6)
    assert (load("paperlink7").n, load("paperlink7").segment_count) == (7, 14)
    assert (load("paperlink5").n, load("paperlink5").segment_count) == (5, 10)


def test_connected_sum_fails_primality():
    report = validate(load("connected_sum"))
    assert not report.ok
    assert not report.primality
    assert any(code == "primality" for _, code, _ in report.findings)


def test_partner_is_involution():
    d = load("paperlink7")
    for s, (a, b) in d.darts.items():
        assert d.partner(a) == b and d.partner(b) == a


def test_segment_regions_are_distinct():
    for name in VALID:
        d = load(name)
        rm = trace_regions(d)
        for j in d.segments:
            r1, r2 = segment_regions(d, rm, j)
            assert r1 != r2


def test_segment_endpoints_and_unknown():
    d = load("trefoil")
    a, b = segment_endpoints(d, 1)
    assert {a.crossing, b.crossing} == {"A", "B"}
    with pytest.raises(DiagramError) as err:
        segment_endpoints(d, 42)
    assert err.value.code == "unknown segment"


def test_clockwise_between():
    d = load("trefoil")  # A: [1, 5, 2, 4]
    assert clockwise_between(d, "A", 0, Corner("A", 2)) == [5, 2]
    assert clockwise_between(d, "A", 0, Corner("A", 0)) == []
    assert clockwise_between(d, "A", 3, Corner("A", 1)) == [1, 5]


def test_round_trip():
    for name in VALID + ["corrupted"]:
        d = parse_diagram(fixture_text(name))
        again = parse_diagram(json.dumps(diagram_to_dict(d)))
        assert again == d


@pytest.mark.parametrize(
    "text, code",
    [
        ("{not json", "syntax"),
        ("[]", "schema"),
        ('{"crossings": [{"id": "A"}]}', "schema"),
        ('{"crossings": [{"id": "A", "cw": [1,2,3]}]}', "dart count"),
        ('{"crossings": [{"id": "A", "cw": [1,2,1,2]}, {"id": "A", "cw": [3,4,3,4]}]}',
         "duplicate crossing"),
        ('{"crossings": [{"id": "A", "cw": [1,2,3,4]}, {"id": "B", "cw": [1,2,3,5]}]}',
         "segment multiplicity"),
        ('{"crossings": [{"id": "A", "cw": [1,2,3,-4]}]}', "schema"),
    ],
)
def test_parse_errors(text, code):
    with pytest.raises(DiagramError) as err:
        parse_diagram(text)
    assert err.value.code == code


def test_syntax_error_reports_position():
    with pytest.raises(DiagramError, match="line 2"):
        parse_diagram('{\n  "crossings": [,]}')


def test_curl_is_rejected():
    # a kink: segment 1 leaves and re-enters crossing A
    d = parse_diagram('{"crossings": [{"id": "A", "cw": [1, 1, 2, 2]}]}')
    codes = {code for sev, code, _ in validate(d).findings if sev == "error"}
    assert "curl" in codes


def test_disconnected_is_rejected():
    hopf = json.loads(fixture_text("hopf"))["crossings"]
    other = [
        {"id": c["id"] + "'", "cw": [s + 10 for s in c["cw"]]} for c in hopf
    ]
    d = parse_diagram(json.dumps({"crossings": hopf + other}))
    codes = {code for _, code, _ in validate(d).findings}
    assert "connectivity" in codes


def test_unknown_flip_corner():
    with pytest.raises(DiagramError):
        parse_diagram(
            '{"crossings": [{"id": "A", "cw": [1,2,3,4]}, {"id": "B", "cw": [1,4,3,2]}],'
            ' "flip_flags": [{"crossing": "Z", "corner": 0}]}'
        )


def test_dart_positions():
    d = load("hopf")
    assert d.darts[1] == (Dart("A", 0), Dart("B", 0))
