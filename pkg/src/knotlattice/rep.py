"""The representation T(i), its submodules, and its coefficient quiver.

Basis vectors at vertex ``j`` are ``(j, 1) .. (j, d_j)``; index 1 is the
deepest one.  An arrow with flag ``c`` sends ``(src, t)`` to ``(tgt, t - c)``
(zero when that index is out of range).  A submodule is determined by its
dimension vector ``e``: at each vertex it is the span of the first ``e_j``
basis vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from itertools import product

import numpy as np

from .lattice import (
    CycleDetected,
    FiniteLattice,
    LimitExceeded,
    as_lattice,
    is_distributive,
    poset_from_leq,
)
from .quiver import Arrow, Quiver
from .states import DEFAULT_LIMIT, DimVector, TheoremViolation


@dataclass(frozen=True, eq=False)
class Representation:
    quiver: Quiver
    dims: DimVector  # aligned with quiver.vertices

    @cached_property
    def col(self) -> dict[int, int]:
        return {j: k for k, j in enumerate(self.quiver.vertices)}

    def dim(self, j: int) -> int:
        return self.dims[self.col[j]]

    def as_dict(self, e: DimVector | None = None) -> dict[int, int]:
        return dict(zip(self.quiver.vertices, self.dims if e is None else e))

    @cached_property
    def _edges(self) -> list[tuple[int, int, int]]:
        # (source column, target column, flag)
        return [(self.col[a.source], self.col[a.target], a.flag) for a in self.quiver.arrows]

    def _floor(self, e, s: int, t: int, c: int) -> int:
        # least e_t making the image of the first e_s basis vectors fit;
        # equals e_s - c whenever d_t >= d_s - c
        return min(e[s] - c, self.dims[t])


class RepresentationError(TheoremViolation):
    def __init__(self, arrow: Arrow, message: str):
        super().__init__(message)
        self.arrow = arrow


def build_representation(q: Quiver, dims: DimVector) -> Representation:
    r = Representation(q, tuple(dims))
    for a in q.arrows:
        ds, dt = r.dim(a.source), r.dim(a.target)
        if dt not in (ds - a.flag, ds - a.flag + 1):
            raise RepresentationError(
                a,
                f"arrow {a.source}->{a.target} at {a.crossing}.{a.corner} "
                f"(flag {a.flag}) joins dimensions {ds} and {dt}",
            )
    return r


def arrow_matrix(r: Representation, a: Arrow) -> np.ndarray:
    """0/1 matrix of shape (d_target, d_source); column t-1 is the image of basis t."""
    ds, dt = r.dim(a.source), r.dim(a.target)
    m = np.zeros((dt, ds), dtype=np.int64)
    for t in range(1, ds + 1):
        if 1 <= t - a.flag <= dt:
            m[t - a.flag - 1, t - 1] = 1
    return m


def is_submodule_vector(r: Representation, e: DimVector) -> bool:
    if len(e) != len(r.dims) or any(not 0 <= x <= d for x, d in zip(e, r.dims)):
        return False
    return all(e[t] >= r._floor(e, s, t, c) for s, t, c in r._edges)


def enumerate_submodules(r: Representation, limit: int = DEFAULT_LIMIT) -> list[DimVector]:
    """Feasible dimension vectors in lexicographic order, by pruned box search."""
    n = len(r.dims)
    # constraints checkable once both endpoints are assigned
    ready: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for s, t, c in r._edges:
        ready[max(s, t)].append((s, t, c))
    out: list[DimVector] = []
    e = [0] * n

    def fill(k: int) -> None:
        if k == n:
            out.append(tuple(e))
            if len(out) > limit:
                raise LimitExceeded("submodules", limit)
            return
        for v in range(r.dims[k] + 1):
            e[k] = v
            if all(e[t] >= r._floor(e, s, t, c) for s, t, c in ready[k]):
                fill(k + 1)
        e[k] = 0

    fill(0)
    return out


def matrix_oracle_submodules(r: Representation) -> list[DimVector]:
    """Same set as enumerate_submodules, decided by image containment of matrices."""
    mats = [
        (r.col[a.source], r.col[a.target], arrow_matrix(r, a)) for a in r.quiver.arrows
    ]
    out = []
    for e in product(*(range(d + 1) for d in r.dims)):
        ok = True
        for s, t, m in mats:
            image = m[:, : e[s]]  # images of the first e_s basis vectors
            if image[e[t] :, :].any():
                ok = False
                break
        if ok:
            out.append(tuple(e))
    return out


def submodule_lattice(
    r: Representation, vectors: list[DimVector] | None = None
) -> tuple[list[DimVector], FiniteLattice]:
    vecs = enumerate_submodules(r) if vectors is None else vectors
    arr = np.array(vecs, dtype=np.int64).reshape(len(vecs), len(r.dims))
    leq = (arr[:, None, :] <= arr[None, :, :]).all(axis=2)
    L = as_lattice(poset_from_leq(leq))
    pos = {v: k for k, v in enumerate(vecs)}
    for a in range(len(vecs)):
        for b in range(len(vecs)):
            lo = tuple(np.minimum(arr[a], arr[b]).tolist())
            hi = tuple(np.maximum(arr[a], arr[b]).tolist())
            if pos.get(lo) != L.meet[a, b] or pos.get(hi) != L.join[a, b]:
                raise TheoremViolation(
                    f"meet/join of submodules {vecs[a]} and {vecs[b]} "
                    "is not componentwise min/max"
                )
    ok, bad = is_distributive(L)
    if not ok:
        raise TheoremViolation(f"submodule lattice not distributive at {bad}")
    return vecs, L


def generate_Mjk(r: Representation, j: int, k: int) -> DimVector:
    """Dimension vector of the submodule generated by basis vector (j, k)."""
    if not 1 <= k <= r.dim(j):
        raise ValueError(f"k={k} out of range 1..{r.dim(j)} at vertex {j}")
    e = [0] * len(r.dims)
    e[r.col[j]] = k
    changed = True
    while changed:
        changed = False
        for s, t, c in r._edges:
            need = r._floor(e, s, t, c)
            if need > e[t]:
                e[t] = need
                changed = True
    return tuple(e)


def basis(r: Representation) -> list[tuple[int, int]]:
    return [(j, t) for j in r.quiver.vertices for t in range(1, r.dim(j) + 1)]


@dataclass(frozen=True)
class CoefficientQuiver:
    vertices: tuple[tuple[int, int], ...]
    arrows: tuple[tuple[tuple[int, int], tuple[int, int]], ...]


def coefficient_quiver(r: Representation) -> CoefficientQuiver:
    arrows = []
    for a in r.quiver.arrows:
        for t in range(1, r.dim(a.source) + 1):
            if 1 <= t - a.flag <= r.dim(a.target):
                arrows.append(((a.source, t), (a.target, t - a.flag)))
    cq = CoefficientQuiver(tuple(basis(r)), tuple(arrows))
    _assert_acyclic(cq)
    return cq


def _assert_acyclic(cq: CoefficientQuiver) -> None:
    graph: dict = {v: set() for v in cq.vertices}
    for a, b in cq.arrows:
        graph[a].add(b)
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        raise CycleDetected(f"coefficient quiver has a cycle: {exc.args[1]}") from None


def reachable(cq: CoefficientQuiver, v: tuple[int, int]) -> set[tuple[int, int]]:
    succ: dict = {}
    for a, b in cq.arrows:
        succ.setdefault(a, []).append(b)
    seen = {v}
    stack = [v]
    while stack:
        for w in succ.get(stack.pop(), ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def basis_name(v: tuple[int, int]) -> str:
    return f"b{v[0]},{v[1]}"


def coefficient_quiver_dot(cq: CoefficientQuiver, name: str = "coefficient_quiver") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f'  "{basis_name(v)}";' for v in cq.vertices]
    lines += [f'  "{basis_name(a)}" -> "{basis_name(b)}";' for a, b in cq.arrows]
    lines.append("}")
    return "\n".join(lines) + "\n"
