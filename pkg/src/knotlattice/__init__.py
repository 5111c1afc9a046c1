"""Kauffman state lattices of link diagrams and the quiver representations behind them."""
from __future__ import annotations

from .diagram import DiagramError, LinkDiagram, parse_diagram, trace_regions, validate
from .lattice import LimitExceeded
from .pipeline import SegmentContext
from .theorems import CheckReport, run_all

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "DiagramError",
    "LimitExceeded",
    "LinkDiagram",
    "SegmentContext",
    "parse_diagram",
    "run_all",
    "trace_regions",
    "validate",
]
