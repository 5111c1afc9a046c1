"""Lazy per-segment computation shared by the theorem checks and the CLI."""
from __future__ import annotations

from functools import cached_property

from .diagram import DiagramError, LinkDiagram, RegionMap, trace_regions, validate
from .irrstates import LevelAssignment, irreducible_states
from .lattice import FiniteLattice
from .quiver import Quiver, assign_marker_flags, build_quiver, flip_flags
from .rep import (
    CoefficientQuiver,
    Representation,
    build_representation,
    coefficient_quiver,
    generate_Mjk,
    submodule_lattice,
)
from .states import (
    DEFAULT_LIMIT,
    DimVector,
    KauffmanState,
    StateLattice,
    build_state_lattice,
    enumerate_states,
    rep_dim_vector,
)


def require_valid(d: LinkDiagram) -> None:
    report = validate(d)
    if not report.ok:
        sev, code, msg = next(f for f in report.findings if f[0] == "error")
        raise DiagramError(code, msg)


def parse_segment(d: LinkDiagram, selector: str | int | None) -> list[int]:
    if selector is None or selector == "all":
        return list(d.segments)
    try:
        j = int(selector)
    except ValueError:
        raise DiagramError("unknown segment", f"bad segment selector {selector!r}") from None
    if j not in d.darts:
        raise DiagramError("unknown segment", f"segment {j} is not in the diagram")
    return [j]


class SegmentContext:
    """Everything derived from one (diagram, segment) pair, computed on demand."""

    def __init__(
        self,
        d: LinkDiagram,
        i: int,
        limit: int = DEFAULT_LIMIT,
        regions: RegionMap | None = None,
    ):
        if i not in d.darts:
            raise DiagramError("unknown segment", f"segment {i} is not in the diagram")
        self.diagram = d
        self.segment = i
        self.limit = limit
        if regions is not None:
            self.__dict__["regions"] = regions

    @cached_property
    def regions(self) -> RegionMap:
        return trace_regions(self.diagram)

    @cached_property
    def states(self) -> list[KauffmanState]:
        return enumerate_states(self.diagram, self.regions, self.segment, self.limit)

    @cached_property
    def state_lattice(self) -> StateLattice:
        return build_state_lattice(self.diagram, self.regions, self.segment, self.states)

    @property
    def min_state(self) -> KauffmanState:
        return self.state_lattice.minimum

    @cached_property
    def dims(self) -> DimVector:
        return rep_dim_vector(self.state_lattice)

    @cached_property
    def quiver(self) -> Quiver:
        q = build_quiver(self.diagram, self.regions)
        q = assign_marker_flags(q, self.diagram, self.min_state)
        if self.diagram.flag_flips:
            q = flip_flags(q, self.diagram.flag_flips)
        return q

    @cached_property
    def rep(self) -> Representation:
        return build_representation(self.quiver, self.dims)

    @cached_property
    def _submodules(self) -> tuple[list[DimVector], FiniteLattice]:
        return submodule_lattice(self.rep)

    @property
    def submodules(self) -> list[DimVector]:
        return self._submodules[0]

    @property
    def submodule_lattice(self) -> FiniteLattice:
        return self._submodules[1]

    @cached_property
    def coefficient_quiver(self) -> CoefficientQuiver:
        return coefficient_quiver(self.rep)

    @cached_property
    def basis_pairs(self) -> list[tuple[int, int]]:
        d = self.diagram
        return [(j, k) for j, dj in zip(d.segments, self.dims) for k in range(1, dj + 1)]

    @cached_property
    def M(self) -> dict[tuple[int, int], DimVector]:
        return {(j, k): generate_Mjk(self.rep, j, k) for j, k in self.basis_pairs}

    @cached_property
    def irreducible_states(self) -> dict[tuple[int, int], tuple[LevelAssignment, KauffmanState]]:
        d = self.diagram
        return irreducible_states(
            d, self.regions, self.min_state, dict(zip(d.segments, self.dims)), self.segment
        )
