"""The quiver of a link diagram: one clockwise 4-cycle per crossing, 2-cycles removed."""
from __future__ import annotations

from dataclasses import dataclass, replace

from .diagram import Corner, LinkDiagram, RegionMap
from .states import KauffmanState, TheoremViolation


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    crossing: str
    corner: int  # corner of `crossing` between the source and target darts
    flag: int = 0  # 1 iff the minimal state has its marker in this corner

    @property
    def key(self) -> Corner:
        return Corner(self.crossing, self.corner)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    cancelled: tuple[tuple[Arrow, Arrow], ...] = ()

    def arrow_at(self, corner: Corner) -> Arrow | None:
        for a in self.arrows:
            if a.key == corner:
                return a
        return None


def raw_arrows(d: LinkDiagram) -> list[Arrow]:
    return [
        Arrow(c.cw[t], c.cw[(t + 1) % 4], c.id, t) for c in d.crossings for t in range(4)
    ]


def build_quiver(d: LinkDiagram, rm: RegionMap | None = None) -> Quiver:
    """Quiver with all 2-cycles removed.

    Opposite arrows are paired preferentially when their corners lie in a
    common region (a bigon); leftovers pair in canonical order.
    """
    arrows = raw_arrows(d)
    alive = [True] * len(arrows)
    pairs = []

    def cancel(same_face: bool) -> None:
        for a in range(len(arrows)):
            for b in range(a + 1, len(arrows)):
                if not (alive[a] and alive[b]):
                    continue
                x, y = arrows[a], arrows[b]
                if x.source != y.target or x.target != y.source:
                    continue
                if same_face and (rm is None or rm[x.key] != rm[y.key]):
                    continue
                alive[a] = alive[b] = False
                pairs.append((x, y))

    cancel(same_face=True)
    cancel(same_face=False)
    kept = tuple(a for a, ok in zip(arrows, alive) if ok)
    return Quiver(d.segments, kept, tuple(pairs))


def assign_marker_flags(q: Quiver, d: LinkDiagram, min_state: KauffmanState) -> Quiver:
    arrows = []
    for a in q.arrows:
        flag = int(min_state.marker(d, a.crossing).index == a.corner)
        arrows.append(replace(a, flag=flag))
    out = replace(q, arrows=tuple(arrows))
    for c in d.crossings:
        here = [a for a in out.arrows if a.crossing == c.id]
        if len(here) == 4 and sum(a.flag for a in here) != 1:
            raise TheoremViolation(
                f"crossing {c.id!r} keeps its 4-cycle but carries "
                f"{sum(a.flag for a in here)} marker flags"
            )
    return out


def flip_flags(q: Quiver, corners: tuple[Corner, ...]) -> Quiver:
    """Invert the flag of the arrows sitting in ``corners`` (fault injection)."""
    return replace(
        q,
        arrows=tuple(
            replace(a, flag=1 - a.flag) if a.key in corners else a for a in q.arrows
        ),
    )


def quiver_dot(q: Quiver, name: str = "quiver") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in q.vertices]
    for a in q.arrows:
        lines.append(
            f'  {a.source} -> {a.target} [label="{a.crossing}.{a.corner}'
            f'{"*" if a.flag else ""}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
