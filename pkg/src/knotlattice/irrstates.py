"""Join irreducible Kauffman states built from level partitions of the segments.

For a basis vector ``(j, k)`` the segments are layered by repeatedly closing
under successors, the clockwise neighbours of a segment up to the marker of
the minimal state.  The state ``S(j, k)`` places each marker where the level
increases clockwise, or at the minimal marker where the level is uniform.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .diagram import LinkDiagram, RegionMap, clockwise_between
from .states import KauffmanState, TheoremViolation, is_state


@dataclass(frozen=True)
class LevelAssignment:
    level: dict[int, int]
    j: int
    k: int

    def layer(self, lv: int) -> set[int]:
        return {s for s, v in self.level.items() if v == lv}


def successor_closure(
    d: LinkDiagram, min_state: KauffmanState, S: Iterable[int], T: Iterable[int]
) -> set[int]:
    T = set(T)
    closed = set(S)
    assert closed <= T, "S must be a subset of T"
    todo = deque((s, dart) for s in sorted(closed) for dart in d.darts[s])
    while todo:
        s, (x, p) = todo.popleft()
        for t in clockwise_between(d, x, p, min_state.marker(d, x)):
            if t in T and t not in closed:
                closed.add(t)
                todo.extend((t, dart) for dart in d.darts[t])
    return closed


def level_partition(
    d: LinkDiagram, min_state: KauffmanState, j: int, k: int, i: int | None = None
) -> LevelAssignment:
    if k < 1:
        raise ValueError(f"level count k={k} must be at least 1")
    rest = set(d.segments)
    level: dict[int, int] = {}
    top = successor_closure(d, min_state, {j}, rest)
    layers = {k: top}
    rest -= top
    for lv in range(k - 1, 0, -1):
        seeds = {e for e in rest if any(e in d.incident(s) for s in layers[lv + 1])}
        layers[lv] = successor_closure(d, min_state, seeds, rest)
        rest -= layers[lv]
    layers[0] = rest
    for lv, segs in layers.items():
        for s in segs:
            level[s] = lv
    if i is not None and level[i] > 0:
        raise TheoremViolation(
            f"level partition for ({j},{k}) puts segment {i} at level {level[i]}"
        )
    return LevelAssignment(dict(sorted(level.items())), j, k)


def _levels_at(d: LinkDiagram, lv: LevelAssignment, cid: str) -> list[int]:
    return [lv.level[s] for s in d.crossing(cid).cw]


def _increase_corners(levels: list[int]) -> list[int]:
    return [t for t in range(4) if levels[t] < levels[(t + 1) % 4]]


def construct_irreducible_state(
    d: LinkDiagram, rm: RegionMap, min_state: KauffmanState, lv: LevelAssignment,
    i: int | None = None,
) -> KauffmanState:
    corners = []
    for c in d.crossings:
        up = _increase_corners(_levels_at(d, lv, c.id))
        if len(up) > 1:
            raise TheoremViolation(
                f"levels {_levels_at(d, lv, c.id)} at crossing {c.id!r} increase "
                f"twice; level pattern violated for ({lv.j},{lv.k})"
            )
        corners.append(up[0] if up else min_state.marker(d, c.id).index)
    s = KauffmanState(tuple(corners))
    regions = s.regions(d, rm)
    if len(set(regions)) != len(regions):
        dup = next(r for r in regions if regions.count(r) > 1)
        raise TheoremViolation(f"S({lv.j},{lv.k}) puts two markers in region {dup}")
    if i is not None and not is_state(d, rm, i, s):
        raise TheoremViolation(f"S({lv.j},{lv.k}) is not a state relative to {i}")
    return s


def verify_level_patterns(
    d: LinkDiagram, min_state: KauffmanState, lv: LevelAssignment
) -> tuple[bool, list[str]]:
    """Check the admissible clockwise level patterns at every crossing.

    Reading from the segment after the minimal marker, levels must be
    (a,a,a,a), (a-1,a,a,a), (a-1,a-1,a,a) or (a-1,a-1,a-1,a); when they are
    not uniform the minimal marker must sit where the level drops.
    """
    witnesses = []
    for c in d.crossings:
        m = min_state.marker(d, c.id).index
        seq = [lv.level[c.cw[(m + 1 + r) % 4]] for r in range(4)]
        top = seq[3]
        lows = [v for v in seq if v != top]
        ok = all(v == top - 1 for v in lows) and seq == sorted(seq)
        if ok and lows:
            # decrease corner must be the minimal marker corner
            levels = _levels_at(d, lv, c.id)
            down = [t for t in range(4) if levels[t] > levels[(t + 1) % 4]]
            ok = down == [m]
        if not ok:
            witnesses.append(f"{c.id}: levels {seq} read clockwise after corner {m}")
    return not witnesses, witnesses


def irreducible_states(
    d: LinkDiagram, rm: RegionMap, min_state: KauffmanState, dims: dict[int, int],
    i: int | None = None,
) -> dict[tuple[int, int], tuple[LevelAssignment, KauffmanState]]:
    out = {}
    for j in d.segments:
        for k in range(1, dims.get(j, 0) + 1):
            lv = level_partition(d, min_state, j, k, i)
            out[(j, k)] = (lv, construct_irreducible_state(d, rm, min_state, lv, i))
    return out
