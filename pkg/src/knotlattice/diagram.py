"""Link diagrams encoded as clockwise rotation systems.

A diagram is a list of crossings, each carrying the four segment ids met
when walking clockwise around it.  Corner ``t`` of a crossing is the
quadrant between ``cw[t]`` and ``cw[(t + 1) % 4]``.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any, NamedTuple


class DiagramError(ValueError):
    """Raised for malformed or unsupported diagram input."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class Corner(NamedTuple):
    crossing: str
    index: int


class Dart(NamedTuple):
    crossing: str
    position: int


@dataclass(frozen=True)
class CrossingRecord:
    id: str
    cw: tuple[int, int, int, int]
    # over/under and other annotations; kept, never read
    extra: dict[str, Any] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[CrossingRecord, ...]
    name: str = ""
    # test hook: corners whose arrow flag is inverted after flag assignment
    flag_flips: tuple[Corner, ...] = ()

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def segments(self) -> tuple[int, ...]:
        return tuple(sorted({s for c in self.crossings for s in c.cw}))

    @property
    def segment_count(self) -> int:
        return len(self.segments)

    @cached_property
    def position(self) -> dict[str, int]:
        """Crossing id -> input position."""
        return {c.id: k for k, c in enumerate(self.crossings)}

    @cached_property
    def _by_id(self) -> dict[str, CrossingRecord]:
        return {c.id: c for c in self.crossings}

    def crossing(self, cid: str) -> CrossingRecord:
        return self._by_id[cid]

    @cached_property
    def darts(self) -> dict[int, tuple[Dart, ...]]:
        out: dict[int, list[Dart]] = {}
        for c in self.crossings:
            for p, s in enumerate(c.cw):
                out.setdefault(s, []).append(Dart(c.id, p))
        return {s: tuple(v) for s, v in out.items()}

    def partner(self, dart: Dart) -> Dart:
        """The other end of the segment leaving through ``dart``."""
        s = self.crossing(dart.crossing).cw[dart.position]
        a, b = self.darts[s]
        return b if a == dart else a

    def corners(self) -> list[Corner]:
        return [Corner(c.id, t) for c in self.crossings for t in range(4)]

    def corner_key(self, corner: Corner) -> tuple[int, int]:
        return (self.position[corner.crossing], corner.index)

    def incident(self, s: int) -> set[int]:
        """Segments sharing at least one crossing with ``s`` (excluding ``s``)."""
        out = set()
        for dart in self.darts[s]:
            out.update(self.crossing(dart.crossing).cw)
        out.discard(s)
        return out


# ---------------------------------------------------------------- parsing


def parse_diagram(text: str) -> LinkDiagram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(
            "syntax", f"{exc.msg} at line {exc.lineno}, column {exc.colno}"
        ) from None
    return diagram_from_dict(doc)


def diagram_from_dict(doc: Any) -> LinkDiagram:
    if not isinstance(doc, dict) or not isinstance(doc.get("crossings"), list):
        raise DiagramError("schema", "expected an object with a 'crossings' list")
    records = []
    seen: set[str] = set()
    for k, raw in enumerate(doc["crossings"]):
        if not isinstance(raw, dict) or "id" not in raw or "cw" not in raw:
            raise DiagramError("schema", f"crossing #{k} needs 'id' and 'cw'")
        cid = str(raw["id"])
        if cid in seen:
            raise DiagramError("duplicate crossing", f"crossing id {cid!r} repeated")
        seen.add(cid)
        cw = raw["cw"]
        if not isinstance(cw, list) or len(cw) != 4:
            raise DiagramError(
                "dart count", f"crossing {cid!r} must list exactly 4 segments"
            )
        for s in cw:
            if isinstance(s, bool) or not isinstance(s, int) or s <= 0:
                raise DiagramError(
                    "schema", f"crossing {cid!r}: segment ids must be positive integers"
                )
        extra = {key: v for key, v in raw.items() if key not in ("id", "cw")}
        records.append(CrossingRecord(cid, tuple(cw), extra))

    counts: dict[int, int] = {}
    for r in records:
        for s in r.cw:
            counts[s] = counts.get(s, 0) + 1
    bad = sorted(s for s, m in counts.items() if m != 2)
    if bad:
        raise DiagramError(
            "segment multiplicity",
            f"segment {bad[0]} appears {counts[bad[0]]} time(s), expected 2",
        )

    flips = []
    for raw in doc.get("flip_flags", []):
        cid, t = str(raw["crossing"]), int(raw["corner"])
        if cid not in seen or not 0 <= t < 4:
            raise DiagramError("schema", f"flip_flags entry {raw!r} names no corner")
        flips.append(Corner(cid, t))
    return LinkDiagram(tuple(records), str(doc.get("name", "")), tuple(flips))


def diagram_to_dict(d: LinkDiagram) -> dict[str, Any]:
    out: dict[str, Any] = {
        "name": d.name,
        "crossings": [{"id": c.id, "cw": list(c.cw), **c.extra} for c in d.crossings],
    }
    if d.flag_flips:
        out["flip_flags"] = [{"crossing": c, "corner": t} for c, t in d.flag_flips]
    return out


# ---------------------------------------------------------------- topology


@dataclass(frozen=True)
class RegionMap:
    region_of_corner: dict[Corner, int]
    faces: tuple[tuple[Corner, ...], ...]

    @property
    def region_count(self) -> int:
        return len(self.faces)

    def __getitem__(self, corner: Corner) -> int:
        return self.region_of_corner[corner]


def _trace_faces(d: LinkDiagram) -> RegionMap:
    # Leave corner t through dart t+1; the face continues at the partner
    # dart's clockwise corner.
    region: dict[Corner, int] = {}
    faces = []
    for start in d.corners():
        if start in region:
            continue
        face = []
        c = start
        while c not in region:
            region[c] = len(faces)
            face.append(c)
            far = d.partner(Dart(c.crossing, (c.index + 1) % 4))
            c = Corner(far.crossing, far.position)
        faces.append(tuple(face))
    return RegionMap(region, tuple(faces))


def trace_regions(d: LinkDiagram) -> RegionMap:
    rm = _trace_faces(d)
    if rm.region_count != d.n + 2:
        raise DiagramError(
            "euler",
            f"traced {rm.region_count} regions, expected n+2 = {d.n + 2}; "
            "the rotation system is not planar or is mis-transcribed",
        )
    return rm


def segment_regions(d: LinkDiagram, rm: RegionMap, j: int) -> tuple[int, int]:
    """The two regions on either side of segment ``j``."""
    x, p = d.darts[j][0]
    return rm[Corner(x, (p - 1) % 4)], rm[Corner(x, p)]


def segment_endpoints(d: LinkDiagram, j: int) -> tuple[Dart, Dart]:
    if j not in d.darts:
        raise DiagramError("unknown segment", f"segment {j} is not in the diagram")
    a, b = sorted(d.darts[j], key=lambda t: (d.position[t.crossing], t.position))
    return a, b


def clockwise_between(
    d: LinkDiagram, x: str, from_dart: int, stop_corner: Corner
) -> list[int]:
    """Segments passed going clockwise from dart ``from_dart`` to ``stop_corner``."""
    cw = d.crossing(x).cw
    steps = (stop_corner.index - from_dart) % 4
    return [cw[(from_dart + k) % 4] for k in range(1, steps + 1)]


def _connected(nodes: list[str], edges: list[tuple[str, str]]) -> bool:
    if not nodes:
        return True
    adj: dict[str, list[str]] = {v: [] for v in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {nodes[0]}
    todo = deque([nodes[0]])
    while todo:
        for w in adj[todo.popleft()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(nodes)


@dataclass
class ValidationReport:
    findings: list[tuple[str, str, str]]
    primality: bool

    @property
    def ok(self) -> bool:
        return not any(sev == "error" for sev, _, _ in self.findings)


def validate(d: LinkDiagram) -> ValidationReport:
    findings: list[tuple[str, str, str]] = []
    nodes = [c.id for c in d.crossings]
    seg_edges = {s: tuple(t.crossing for t in d.darts[s]) for s in d.segments}

    if not _connected(nodes, list(seg_edges.values())):
        findings.append(("error", "connectivity", "crossing graph is disconnected"))

    curls = [s for s, (a, b) in seg_edges.items() if a == b]
    for s in curls:
        findings.append(
            ("error", "curl", f"segment {s} has both ends at crossing {seg_edges[s][0]!r}")
        )

    rm = _trace_faces(d)
    if rm.region_count != d.n + 2:
        findings.append(
            ("error", "euler", f"{rm.region_count} regions traced, expected {d.n + 2}")
        )

    # each region meets each crossing at most once
    for r, face in enumerate(rm.faces):
        hits: dict[str, int] = {}
        for c in face:
            hits[c.crossing] = hits.get(c.crossing, 0) + 1
        for cid in sorted(hits, key=d.position.__getitem__):
            if hits[cid] > 1:
                findings.append(
                    ("error", "region-crossing",
                     f"region {r} meets crossing {cid!r} {hits[cid]} times")
                )

    prime = True
    if not curls:
        for s, t in combinations(d.segments, 2):
            rest = [e for u, e in seg_edges.items() if u not in (s, t)]
            if not _connected(nodes, rest):
                prime = False
                findings.append(
                    ("error", "primality",
                     f"segments {s} and {t} form a 2-edge cut (connected sum)")
                )
                break
    else:
        prime = False
    return ValidationReport(findings, prime)
