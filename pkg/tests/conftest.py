from __future__ import annotations

from functools import lru_cache
from importlib import resources

import pytest

from knotlattice.diagram import LinkDiagram, parse_diagram, trace_regions
from knotlattice.pipeline import SegmentContext

VALID = ["hopf", "trefoil", "figure8", "paperlink7", "paperlink5"]


@lru_cache(maxsize=None)
def fixture_text(name: str) -> str:
    return (resources.files("knotlattice") / "fixtures" / f"{name}.json").read_text()


@lru_cache(maxsize=None)
def load(name: str) -> LinkDiagram:
    return parse_diagram(fixture_text(name))


@lru_cache(maxsize=None)
def context(name: str, i: int) -> SegmentContext:
    d = load(name)
    return SegmentContext(d, i, regions=trace_regions(d))


def all_pairs() -> list[tuple[str, int]]:
    return [(n, i) for n in VALID for i in load(n).segments]


@pytest.fixture
def link7():
    return context("paperlink7", 6)


@pytest.fixture
def link5():
    return context("paperlink5", 9)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import verdict_lines
    except ImportError:
        return
    lines = verdict_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
