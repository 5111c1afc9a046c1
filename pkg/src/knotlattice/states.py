"""Kauffman states relative to a segment and the transposition order on them."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .diagram import Corner, DiagramError, LinkDiagram, RegionMap, segment_regions
from .lattice import FinitePoset, LimitExceeded, poset_from_covers

DEFAULT_LIMIT = 10**6

DimVector = tuple[int, ...]
"""Integer vector indexed like ``LinkDiagram.segments``."""


class TheoremViolation(RuntimeError):
    """A property that the theory guarantees failed on concrete data."""


@dataclass(frozen=True, order=True)
class KauffmanState:
    """One marker corner per crossing, in the diagram's crossing order."""

    corners: tuple[int, ...]

    def marker(self, d: LinkDiagram, cid: str) -> Corner:
        return Corner(cid, self.corners[d.position[cid]])

    def markers(self, d: LinkDiagram) -> list[Corner]:
        return [Corner(c.id, t) for c, t in zip(d.crossings, self.corners)]

    def regions(self, d: LinkDiagram, rm: RegionMap) -> list[int]:
        return [rm[c] for c in self.markers(d)]


def state_to_json(d: LinkDiagram, s: KauffmanState) -> list[list]:
    return [[c, t] for c, t in s.markers(d)]


def is_state(d: LinkDiagram, rm: RegionMap, i: int, s: KauffmanState) -> bool:
    if len(s.corners) != d.n or not all(0 <= t < 4 for t in s.corners):
        return False
    used = s.regions(d, rm)
    allowed = set(range(rm.region_count)) - set(segment_regions(d, rm, i))
    return len(set(used)) == len(used) and set(used) == allowed


def enumerate_states(
    d: LinkDiagram, rm: RegionMap, i: int, limit: int = DEFAULT_LIMIT
) -> list[KauffmanState]:
    if i not in d.darts:
        raise DiagramError("unknown segment", f"segment {i} is not in the diagram")
    banned = set(segment_regions(d, rm, i))
    options = [
        [t for t in range(4) if rm[Corner(c.id, t)] not in banned] for c in d.crossings
    ]
    region = [[rm[Corner(c.id, t)] for t in range(4)] for c in d.crossings]
    found: list[KauffmanState] = []
    chosen: list[int] = []
    used: set[int] = set()

    def backtrack(k: int) -> None:
        if k == d.n:
            found.append(KauffmanState(tuple(chosen)))
            if len(found) > limit:
                raise LimitExceeded("states", limit)
            return
        for t in options[k]:
            r = region[k][t]
            if r in used:
                continue
            used.add(r)
            chosen.append(t)
            backtrack(k + 1)
            chosen.pop()
            used.discard(r)

    backtrack(0)
    return found


def transpose(
    d: LinkDiagram, rm: RegionMap, s: KauffmanState, j: int
) -> KauffmanState | None:
    """Counterclockwise (raising) transposition of ``s`` at segment ``j``.

    At both ends of ``j`` the marker must sit in the corner just clockwise of
    ``j``; both markers then step across ``j`` to the corner just
    counterclockwise of it.
    """
    (x, p), (y, q) = d.darts[j]
    if s.marker(d, x).index != p or s.marker(d, y).index != q:
        return None
    corners = list(s.corners)
    corners[d.position[x]] = (p - 1) % 4
    corners[d.position[y]] = (q - 1) % 4
    return KauffmanState(tuple(corners))


@dataclass(frozen=True, eq=False)
class StateLattice:
    diagram: LinkDiagram
    regions: RegionMap
    segment: int
    elements: tuple[KauffmanState, ...]
    covers: tuple[tuple[int, int, int], ...]  # (lower, upper, label)
    min_index: int
    max_index: int

    @cached_property
    def index(self) -> dict[KauffmanState, int]:
        return {s: k for k, s in enumerate(self.elements)}

    @cached_property
    def poset(self) -> FinitePoset:
        return poset_from_covers(len(self.elements), [(a, b) for a, b, _ in self.covers])

    @cached_property
    def label(self) -> dict[tuple[int, int], int]:
        return {(a, b): j for a, b, j in self.covers}

    @property
    def minimum(self) -> KauffmanState:
        return self.elements[self.min_index]

    @property
    def maximum(self) -> KauffmanState:
        return self.elements[self.max_index]

    @cached_property
    def dim_vectors(self) -> list[DimVector]:
        return _dim_vectors(self)


def build_state_lattice(
    d: LinkDiagram, rm: RegionMap, i: int, states: list[KauffmanState]
) -> StateLattice:
    if not states:
        raise TheoremViolation(f"no Kauffman states relative to segment {i}")
    index = {s: k for k, s in enumerate(states)}
    covers = []
    for k, s in enumerate(states):
        for j in d.segments:
            if j == i:
                continue
            t = transpose(d, rm, s, j)
            if t is None:
                continue
            if t not in index:
                raise TheoremViolation(
                    f"transposition at {j} leaves the state set (from state {k})"
                )
            covers.append((k, index[t], j))
    covers.sort()
    has_down = {b for _, b, _ in covers}
    has_up = {a for a, _, _ in covers}
    mins = [k for k in range(len(states)) if k not in has_down]
    maxs = [k for k in range(len(states)) if k not in has_up]
    if len(mins) != 1 or len(maxs) != 1:
        raise TheoremViolation(
            f"state poset relative to {i} has {len(mins)} minimal and {len(maxs)} "
            "maximal elements; input is not a prime diagram or is mis-transcribed"
        )
    L = StateLattice(d, rm, i, tuple(states), tuple(covers), mins[0], maxs[0])
    L.poset  # raises on cycles
    return L


def _dim_vectors(L: StateLattice) -> list[DimVector]:
    segs = L.diagram.segments
    col = {s: k for k, s in enumerate(segs)}
    up: dict[int, list[tuple[int, int]]] = {}
    for a, b, j in L.covers:
        up.setdefault(a, []).append((b, j))
    vec: list[DimVector | None] = [None] * len(L.elements)
    vec[L.min_index] = (0,) * len(segs)
    todo = deque([L.min_index])
    while todo:
        a = todo.popleft()
        for b, j in up.get(a, ()):
            v = list(vec[a])
            v[col[j]] += 1
            v = tuple(v)
            if vec[b] is None:
                vec[b] = v
                todo.append(b)
            elif vec[b] != v:
                raise TheoremViolation(
                    f"label counts to state {b} depend on the path: {vec[b]} vs {v}"
                )
    return vec  # type: ignore[return-value]


def state_dim_vector(L: StateLattice, s: KauffmanState) -> DimVector:
    """Per-segment count of transposition labels on a path from the minimum to ``s``."""
    return L.dim_vectors[L.index[s]]


def rep_dim_vector(L: StateLattice) -> DimVector:
    return L.dim_vectors[L.max_index]
