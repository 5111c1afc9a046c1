from __future__ import annotations

import pytest

from conftest import VALID, context, load
from knotlattice.diagram import trace_regions
from knotlattice.pipeline import SegmentContext
from knotlattice.theorems import (
    CHECKS,
    check_birkhoff,
    check_coefficient_quiver_theorem,
    check_irreducible_correspondence,
    report_text,
    run_all,
)


@pytest.mark.parametrize("name", VALID)
def test_all_checks_pass(name):
    report = run_all(load(name), "all")
    assert report.overall, [(c.segment, c.name, c.witness) for c in report.failures()]
    assert len(report.checks) == len(CHECKS) * load(name).segment_count


def test_report_order_is_canonical():
    report = run_all(load("trefoil"))
    keys = [(c.segment, c.name) for c in report.checks]
    names = [n for n, _ in CHECKS]
    assert keys == [(i, n) for i in range(1, 7) for n in names]


def test_corrupted_fixture_fails_with_witness():
    report = run_all(load("corrupted"), 1)
    assert not report.overall
    for c in report.failures():
        assert c.witness


def test_every_single_flip_on_link7_is_caught_or_harmless(link7):
    # flipping a flag between two nonzero spaces must be noticed
    from dataclasses import replace

    d = link7.diagram
    dims = dict(zip(d.segments, link7.dims))
    caught = 0
    for a in link7.quiver.arrows:
        if dims[a.source] == 0 or dims[a.target] == 0:
            continue
        bad = replace(d, flag_flips=(a.key,))
        report = run_all(bad, 6)
        assert not report.overall, a
        caught += 1
    assert caught > 0


def test_irreducible_counts():
    assert check_irreducible_correspondence(context("paperlink7", 6))["irreducibles"] == 9
    assert check_irreducible_correspondence(context("paperlink5", 9))["irreducibles"] == 7
    assert check_irreducible_correspondence(context("hopf", 1))["irreducibles"] == 1


def test_coefficient_quiver_details():
    p7 = check_coefficient_quiver_theorem(context("paperlink7", 6))
    assert (p7["arrows"], p7["removed"], p7["hasse_edges"]) == (11, 0, 11)
    p5 = check_coefficient_quiver_theorem(context("paperlink5", 9))
    assert (p5["arrows"], p5["removed"], p5["hasse_edges"]) == (7, 1, 6)
    assert p5["isomorphic_unreduced"] is False
    hopf = check_coefficient_quiver_theorem(context("hopf", 1))
    assert (hopf["arrows"], hopf["hasse_edges"]) == (0, 0)


def test_birkhoff_sizes():
    assert check_birkhoff(context("trefoil", 1)) == {"elements": 3, "ideals": 3, "irreducibles": 2}
    assert check_birkhoff(context("paperlink7", 6))["ideals"] == 24
    assert check_birkhoff(context("paperlink5", 9)) == {
        "elements": 8, "ideals": 8, "irreducibles": 7,
    }


def test_checks_are_rerunnable():
    d = load("paperlink5")
    first = run_all(d, 9)
    ctx = SegmentContext(d, 9, regions=trace_regions(d))
    again = [fn(ctx) for _, fn in reversed(CHECKS)][::-1]
    assert [c.detail for c in first.checks] == again


def test_report_text():
    text = report_text(run_all(load("hopf"), 1))
    assert text.splitlines()[-1] == "6/6 checks passed"
    assert "ms" not in text
