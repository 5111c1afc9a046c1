"""Finite posets and lattices on the elements ``range(n)``."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from typing import Hashable, Iterable, Sequence

import numpy as np


class NotALattice(ValueError):
    def __init__(self, pair: tuple[int, int], which: str):
        super().__init__(f"elements {pair[0]} and {pair[1]} have no {which}")
        self.pair = pair
        self.which = which


class CycleDetected(ValueError):
    pass


class LimitExceeded(RuntimeError):
    """An enumeration produced more objects than the configured limit."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"more than {limit} {what}; enumeration aborted")
        self.what = what
        self.limit = limit


@dataclass(frozen=True, eq=False)
class FinitePoset:
    """``leq[a, b]`` is true iff ``a <= b``."""

    leq: np.ndarray

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        cov = lt & ~between
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(cov))]

    @cached_property
    def lower_covers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.size)]
        for a, b in self.covers:
            out[b].append(a)
        return out

    def minimal(self) -> list[int]:
        return [int(b) for b in range(self.size) if self.leq[:, b].sum() == 1]

    def maximal(self) -> list[int]:
        return [int(a) for a in range(self.size) if self.leq[a, :].sum() == 1]

    def down_set(self, a: int) -> frozenset[int]:
        return frozenset(int(x) for x in np.nonzero(self.leq[:, a])[0])

    def subposet(self, elements: Sequence[int]) -> "FinitePoset":
        idx = np.asarray(elements, dtype=np.int64)
        return FinitePoset(self.leq[np.ix_(idx, idx)].copy())

    def linear_extension(self) -> list[int]:
        # sort by down-set size: a < b implies |down(a)| < |down(b)|
        sizes = self.leq.sum(axis=0)
        return sorted(range(self.size), key=lambda a: (int(sizes[a]), a))


def _closure(leq: np.ndarray) -> np.ndarray:
    leq = leq.copy()
    for k in range(leq.shape[0]):
        leq |= leq[:, k : k + 1] & leq[k : k + 1, :]
    return leq


def poset_from_covers(n: int, covers: Iterable[tuple[int, int]]) -> FinitePoset:
    covers = list(covers)
    graph: dict[int, set[int]] = {v: set() for v in range(n)}
    for a, b in covers:
        graph[b].add(a)
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        raise CycleDetected(f"cover relation has a cycle: {exc.args[1]}") from None
    leq = np.eye(n, dtype=bool)
    for a, b in covers:
        leq[a, b] = True
    return FinitePoset(_closure(leq))


def poset_from_leq(leq: np.ndarray) -> FinitePoset:
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    if not leq.diagonal().all():
        raise ValueError("relation is not reflexive")
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise ValueError("relation is not antisymmetric")
    if (_closure(leq) != leq).any():
        raise ValueError("relation is not transitive")
    return FinitePoset(leq.copy())


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    poset: FinitePoset
    meet: np.ndarray
    join: np.ndarray

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def bottom(self) -> int:
        return self.poset.minimal()[0]

    @property
    def top(self) -> int:
        return self.poset.maximal()[0]


def _bound(leq: np.ndarray, a: int, b: int, upper: bool) -> int | None:
    rel = leq if upper else leq.T
    cand = np.nonzero(rel[a] & rel[b])[0]
    if cand.size == 0:
        return None
    sub = rel[np.ix_(cand, cand)]
    best = cand[sub.all(axis=1)]
    return int(best[0]) if best.size == 1 else None


def as_lattice(p: FinitePoset) -> FiniteLattice:
    n = p.size
    meet = np.zeros((n, n), dtype=np.int64)
    join = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            j = _bound(p.leq, a, b, upper=True)
            if j is None:
                raise NotALattice((a, b), "least upper bound")
            m = _bound(p.leq, a, b, upper=False)
            if m is None:
                raise NotALattice((a, b), "greatest lower bound")
            join[a, b] = join[b, a] = j
            meet[a, b] = meet[b, a] = m
    return FiniteLattice(p, meet, join)


def _first_failure(lhs: np.ndarray, rhs: np.ndarray) -> tuple[int, ...] | None:
    bad = np.argwhere(lhs != rhs)
    if bad.size == 0:
        return None
    return tuple(int(v) for v in bad[0])  # argwhere is row-major = lexicographic


def is_distributive(
    L: FiniteLattice, dual: bool = False
) -> tuple[bool, tuple[int, int, int] | None]:
    """Check a^(b v c) = (a^b) v (a^c) over all triples.

    With ``dual=True`` the law a v (b^c) = (a v b)^(a v c) is checked instead.
    Returns the lexicographically first failing triple, if any.
    """
    op, other = (L.join, L.meet) if dual else (L.meet, L.join)
    for a in range(L.size):
        row = op[a]
        lhs = row[other]  # op(a, other(b, c))
        rhs = other[row[:, None], row[None, :]]  # other(op(a, b), op(a, c))
        bad = _first_failure(lhs, rhs)
        if bad is not None:
            return False, (a, *bad)
    return True, None


def join_irreducibles(L: FiniteLattice | FinitePoset) -> list[tuple[int, int]]:
    """Pairs ``(element, descent)`` for elements with exactly one lower cover."""
    p = L.poset if isinstance(L, FiniteLattice) else L
    return [(c, low[0]) for c, low in enumerate(p.lower_covers) if len(low) == 1]


@dataclass(frozen=True)
class IdealFamily:
    base: FinitePoset
    ideals: tuple[frozenset[int], ...]


def order_ideals(p: FinitePoset, limit: int = 10**6) -> IdealFamily:
    """All down-closed subsets, grown one element at a time along a linear extension."""
    family: list[frozenset[int]] = [frozenset()]
    for x in p.linear_extension():
        below = p.down_set(x) - {x}
        grown = [I | {x} for I in family if below <= I]
        family.extend(grown)
        if len(family) > limit:
            raise LimitExceeded("order ideals", limit)
    family.sort(key=lambda I: (len(I), sorted(I)))
    return IdealFamily(p, tuple(family))


def ideal_lattice(f: IdealFamily) -> FiniteLattice:
    ideals = f.ideals
    n = len(ideals)
    leq = np.array([[a <= b for b in ideals] for a in ideals], dtype=bool).reshape(n, n)
    L = as_lattice(FinitePoset(leq))
    ok, bad = is_distributive(L)
    assert ok, f"ideal lattice not distributive at {bad}"
    return L


def transitive_reduction(
    nodes: Sequence[Hashable], arrows: Iterable[tuple[Hashable, Hashable]]
) -> list[tuple[Hashable, Hashable]]:
    """Drop every arrow that has another walk with the same ends.

    Parallel copies of one arrow are merged first so that reachability is kept.
    The result preserves the input arrow order.
    """
    arrows = list(arrows)
    succ: dict[Hashable, set[Hashable]] = {v: set() for v in nodes}
    for a, b in arrows:
        succ[a].add(b)
    try:
        order = list(TopologicalSorter({v: succ[v] for v in nodes}).static_order())
    except CycleError as exc:
        raise CycleDetected(f"graph has a cycle: {exc.args[1]}") from None
    # order lists successors before predecessors; reach[v] = strict descendants
    reach: dict[Hashable, set[Hashable]] = {}
    for v in order:
        r: set[Hashable] = set()
        for w in succ[v]:
            r.add(w)
            r |= reach[w]
        reach[v] = r
    out = []
    kept: set[tuple[Hashable, Hashable]] = set()
    for a, b in arrows:
        if (a, b) in kept:
            continue
        if any(b in reach[w] for w in succ[a] if w != b):
            continue
        kept.add((a, b))
        out.append((a, b))
    return out


def check_order_iso(
    p: FinitePoset, q: FinitePoset, f: Sequence[int]
) -> tuple[bool, tuple[int, int] | None]:
    """Is ``f`` (element of p -> element of q) an order isomorphism?"""
    if p.size != q.size or sorted(f) != list(range(q.size)):
        raise ValueError("f is not a bijection between the two posets")
    image = q.leq[np.ix_(f, f)]
    bad = np.argwhere(image != p.leq)
    if bad.size:
        return False, (int(bad[0][0]), int(bad[0][1]))
    return True, None


# ---------------------------------------------------------------- export


def hasse_dot(
    p: FinitePoset,
    name: str = "hasse",
    labels: Sequence[str] | None = None,
    edge_labels: dict[tuple[int, int], str] | None = None,
) -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for v in range(p.size):
        text = labels[v] if labels else str(v)
        lines.append(f'  {v} [label="{text}"];')
    for a, b in p.covers:
        lab = (edge_labels or {}).get((a, b))
        attr = f' [label="{lab}"]' if lab is not None else ""
        lines.append(f"  {a} -> {b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def leq_table(p: FinitePoset) -> list[list[int]]:
    return p.leq.astype(int).tolist()
