"""Executable checks of the structural theorems on a concrete (diagram, segment).

Every check returns a ``CheckResult``; a failing check carries a witness
string naming the offending element, pair or triple.  Checks only use the
canonical maps (dimension vectors, basis labels, the Birkhoff map) and never
search for isomorphisms.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .diagram import DiagramError, LinkDiagram
from .irrstates import verify_level_patterns
from .lattice import (
    CycleDetected,
    LimitExceeded,
    NotALattice,
    as_lattice,
    check_order_iso,
    ideal_lattice,
    is_distributive,
    join_irreducibles,
    order_ideals,
    transitive_reduction,
)
from .pipeline import SegmentContext, parse_segment
from .rep import reachable
from .states import DEFAULT_LIMIT, TheoremViolation


class CheckFailed(Exception):
    pass


@dataclass
class CheckResult:
    name: str
    segment: int
    passed: bool
    witness: str | None = None
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "segment": self.segment,
            "passed": self.passed,
            "witness": self.witness,
            "detail": self.detail,
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class CheckReport:
    checks: list[CheckResult]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def _fail(msg: str) -> None:
    raise CheckFailed(msg)


def _vec(ctx: SegmentContext, v) -> str:
    return "{" + ", ".join(f"{j}:{x}" for j, x in zip(ctx.diagram.segments, v) if x) + "}"


def _irr_labels(ctx: SegmentContext) -> dict[int, tuple[int, int]]:
    """Join irreducible state index -> (descent label j, dimension k at j)."""
    L = ctx.state_lattice
    col = {j: c for c, j in enumerate(ctx.diagram.segments)}
    out = {}
    for c, low in join_irreducibles(L.poset):
        j = L.label[(low, c)]
        out[c] = (j, L.dim_vectors[c][col[j]])
    return out


# ---------------------------------------------------------------- checks


def check_state_module_iso(ctx: SegmentContext) -> dict:
    L = ctx.state_lattice
    e = L.dim_vectors
    subs = ctx.submodules
    if len(set(e)) != len(e):
        _fail("two states share a dimension vector")
    pos = {v: k for k, v in enumerate(subs)}
    missing = [v for v in e if v not in pos]
    if missing:
        _fail(f"state vector {_vec(ctx, missing[0])} is not a submodule")
    if len(e) != len(subs):
        extra = sorted(set(subs) - set(e))
        _fail(f"submodule {_vec(ctx, extra[0])} has no state ({len(e)} vs {len(subs)})")
    f = [pos[v] for v in e]
    ok, bad = check_order_iso(L.poset, ctx.submodule_lattice.poset, f)
    if not ok:
        _fail(f"order differs on states {bad}")
    col = {j: c for c, j in enumerate(ctx.diagram.segments)}
    for a, b, j in L.covers:
        step = np.subtract(e[b], e[a])
        unit = np.zeros(len(step), dtype=int)
        unit[col[j]] = 1
        if (step != unit).any():
            _fail(f"cover {a}->{b} labeled {j} changes the vector by {step.tolist()}")
    return {"states": len(e), "submodules": len(subs)}


def check_distributivity(ctx: SegmentContext) -> dict:
    try:
        lat = as_lattice(ctx.state_lattice.poset)
    except NotALattice as exc:
        _fail(str(exc))
    ok, bad = is_distributive(lat)
    if not ok:
        _fail(f"a^(b v c) != (a^b) v (a^c) for (a, b, c) = {bad}")
    ok, bad = is_distributive(lat, dual=True)
    if not ok:
        _fail(f"dual law fails for (a, b, c) = {bad}")
    return {"elements": lat.size, "triples": lat.size**3}


def check_irreducible_correspondence(ctx: SegmentContext) -> dict:
    L = ctx.state_lattice
    labels = _irr_labels(ctx)
    image = {}
    for c, (j, k) in labels.items():
        image[(j, k)] = L.dim_vectors[c]
    if sorted(image) != sorted(ctx.basis_pairs):
        extra = sorted(set(image) ^ set(ctx.basis_pairs))
        _fail(f"join irreducible labels differ from the basis at {extra[0]}")
    if len(labels) != len(image):
        _fail("two join irreducibles carry the same (segment, index) label")
    for jk, v in sorted(image.items()):
        if v != ctx.M[jk]:
            _fail(f"irreducible {jk} has vector {_vec(ctx, v)}, M{jk} = {_vec(ctx, ctx.M[jk])}")
    for j, k in ctx.basis_pairs:
        if (j, k + 1) in ctx.M and not all(
            a <= b for a, b in zip(ctx.M[(j, k)], ctx.M[(j, k + 1)])
        ):
            _fail(f"M({j},{k}) is not contained in M({j},{k + 1})")
    return {"irreducibles": len(labels)}


def check_Sjk_equals_Mjk(ctx: SegmentContext) -> dict:
    L = ctx.state_lattice
    d = ctx.diagram
    labels = _irr_labels(ctx)
    built = ctx.irreducible_states
    for (j, k), (lv, s) in built.items():
        ok, wit = verify_level_patterns(d, ctx.min_state, lv)
        if not ok:
            _fail(f"S({j},{k}): level pattern broken at {wit[0]}")
        if s not in L.index:
            _fail(f"S({j},{k}) = {s.corners} is not a state")
        e = L.dim_vectors[L.index[s]]
        if e != ctx.M[(j, k)]:
            _fail(f"e(S({j},{k})) = {_vec(ctx, e)} but M({j},{k}) = {_vec(ctx, ctx.M[(j, k)])}")
        levels = tuple(lv.level[x] for x in d.segments)
        if levels != ctx.M[(j, k)]:
            _fail(f"levels of ({j},{k}) differ from dim M({j},{k})")
        c = L.index[s]
        if labels.get(c) != (j, k):
            _fail(f"S({j},{k}) is not join irreducible with descent {j}")
    for j, k in built:
        if (j, k + 1) in built:
            lo, hi = L.index[built[(j, k)][1]], L.index[built[(j, k + 1)][1]]
            if not L.poset.leq[lo, hi] or lo == hi:
                _fail(f"S({j},{k}) is not below S({j},{k + 1})")
    if {L.index[s] for _, s in built.values()} != set(labels):
        _fail("constructed states differ from the join irreducibles")
    return {"constructed": len(built)}


def check_coefficient_quiver_theorem(ctx: SegmentContext) -> dict:
    L = ctx.state_lattice
    labels = _irr_labels(ctx)
    irr = sorted(labels, key=lambda c: labels[c])
    sub = L.poset.subposet(irr)
    name = [labels[c] for c in irr]
    hasse = {(name[b], name[a]) for a, b in sub.covers}  # upper -> lower
    cq = ctx.coefficient_quiver
    try:
        reduced = transitive_reduction(cq.vertices, cq.arrows)
    except CycleDetected as exc:
        _fail(str(exc))
    if set(reduced) != hasse:
        diff = sorted(set(reduced) ^ hasse)
        _fail(f"reduced coefficient quiver and Hasse quiver differ at {diff[0]}")
    for a in range(len(irr)):
        reach = reachable(cq, name[a])
        for b in range(len(irr)):
            if sub.leq[b, a] != (name[b] in reach):
                _fail(f"reachability of {name[a]} -> {name[b]} disagrees with the order")
    return {
        "arrows": len(cq.arrows),
        "removed": len(cq.arrows) - len(reduced),
        "hasse_edges": len(hasse),
        "isomorphic_unreduced": set(cq.arrows) == hasse and len(cq.arrows) == len(hasse),
    }


def check_birkhoff(ctx: SegmentContext) -> dict:
    lat = as_lattice(ctx.state_lattice.poset)
    irr = [c for c, _ in join_irreducibles(lat)]
    fam = order_ideals(lat.poset.subposet(irr), ctx.limit)
    ideals = ideal_lattice(fam)
    pos = {I: k for k, I in enumerate(fam.ideals)}
    f = []
    for a in range(lat.size):
        down = frozenset(k for k, c in enumerate(irr) if lat.poset.leq[c, a])
        if down not in pos:
            _fail(f"element {a} maps to a non-ideal")
        f.append(pos[down])
    if sorted(f) != list(range(ideals.size)):
        _fail(f"Birkhoff map is not a bijection ({lat.size} elements, {ideals.size} ideals)")
    ok, bad = check_order_iso(lat.poset, ideals.poset, f)
    if not ok:
        _fail(f"Birkhoff map breaks the order at {bad}")
    return {"elements": lat.size, "ideals": ideals.size, "irreducibles": len(irr)}


CHECKS: list[tuple[str, Callable[[SegmentContext], dict]]] = [
    ("state_module_iso", check_state_module_iso),
    ("distributivity", check_distributivity),
    ("irreducible_correspondence", check_irreducible_correspondence),
    ("Sjk_equals_Mjk", check_Sjk_equals_Mjk),
    ("coefficient_quiver", check_coefficient_quiver_theorem),
    ("birkhoff", check_birkhoff),
]


def run_check(name: str, fn, ctx: SegmentContext) -> CheckResult:
    t0 = time.perf_counter()
    try:
        detail = fn(ctx)
        res = CheckResult(name, ctx.segment, True, None, detail)
    except LimitExceeded:
        raise
    except (CheckFailed, TheoremViolation, CycleDetected, NotALattice) as exc:
        res = CheckResult(name, ctx.segment, False, str(exc))
    res.elapsed = time.perf_counter() - t0
    return res


def run_all(
    d: LinkDiagram, segments: str | int | None = "all", limit: int = DEFAULT_LIMIT
) -> CheckReport:
    from .diagram import trace_regions

    chosen = parse_segment(d, segments)
    rm = trace_regions(d)
    results = []
    for i in chosen:
        ctx = SegmentContext(d, i, limit, rm)
        results.extend(run_check(name, fn, ctx) for name, fn in CHECKS)
    return CheckReport(results)


def report_text(report: CheckReport, timings: bool = False) -> str:
    lines = []
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        line = f"{status}  segment {c.segment:>3}  {c.name}"
        if timings:
            line += f"  ({c.elapsed * 1000:.1f} ms)"
        if c.witness:
            line += f"  -- {c.witness}"
        lines.append(line)
    n_fail = len(report.failures())
    lines.append(
        f"{len(report.checks) - n_fail}/{len(report.checks)} checks passed"
        + ("" if report.overall else f", {n_fail} failed")
    )
    return "\n".join(lines) + "\n"


__all__ = [
    "CHECKS",
    "CheckReport",
    "CheckResult",
    "DiagramError",
    "report_text",
    "run_all",
]
