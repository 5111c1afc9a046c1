"""Command-line front end: ``knotlattice <command> FILE [options]``.

Exit codes: 0 success, 1 input or validation error, 2 theorem failure,
3 state/submodule limit exceeded.  FILE may also name a bundled fixture
(``trefoil``, ``paperlink7.json``, ...).
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Callable

from .diagram import DiagramError, LinkDiagram, parse_diagram, validate
from .lattice import LimitExceeded, as_lattice, hasse_dot, join_irreducibles
from .pipeline import SegmentContext, parse_segment, require_valid
from .quiver import quiver_dot
from .rep import arrow_matrix, basis_name, coefficient_quiver_dot
from .states import DEFAULT_LIMIT, TheoremViolation, state_to_json
from .theorems import report_text, run_all

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_THEOREM, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for theorem failures
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def bundled_fixtures() -> list[str]:
    root = resources.files("knotlattice") / "fixtures"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def read_input(name: str) -> str:
    path = Path(name)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    stem = name if name.endswith(".json") else name + ".json"
    if stem in bundled_fixtures():
        return (resources.files("knotlattice") / "fixtures" / stem).read_text(encoding="utf-8")
    raise UsageError(f"no such file or bundled fixture: {name}")


def _vec(ctx: SegmentContext, v) -> dict[str, int]:
    return {str(j): x for j, x in zip(ctx.diagram.segments, v)}


def _vec_text(ctx: SegmentContext, v) -> str:
    return " ".join(str(x) for x in v)


def _markers_text(ctx: SegmentContext, s) -> str:
    return " ".join(f"{c}.{t}" for c, t in s.markers(ctx.diagram))


# ---------------------------------------------------------------- payloads
# Each command builds (json payload, text rendering) for one segment.


def do_states(ctx: SegmentContext, fmt: str):
    L = ctx.state_lattice
    rows = [
        {"markers": state_to_json(ctx.diagram, s), "dim_vector": _vec(ctx, e)}
        for s, e in zip(L.elements, L.dim_vectors)
    ]
    text = [f"{len(L.elements)} states"]
    text.append("# segments: " + " ".join(map(str, ctx.diagram.segments)))
    for s, e in zip(L.elements, L.dim_vectors):
        text.append(f"{_markers_text(ctx, s)}  |  {_vec_text(ctx, e)}")
    return {"count": len(rows), "states": rows}, "\n".join(text) + "\n"


def do_lattice(ctx: SegmentContext, fmt: str):
    L = ctx.state_lattice
    lat = as_lattice(L.poset)
    irr = sorted(c for c, _ in join_irreducibles(lat))
    payload = {
        "elements": [state_to_json(ctx.diagram, s) for s in L.elements],
        "covers": [[a, b, j] for a, b, j in L.covers],
        "bottom": lat.bottom,
        "top": lat.top,
        "join_irreducibles": irr,
    }
    if fmt == "dot":
        labels = [_markers_text(ctx, s) for s in L.elements]
        text = hasse_dot(
            L.poset, f"states_{ctx.segment}", labels,
            {(a, b): str(j) for a, b, j in L.covers},
        )
    else:
        lines = [f"{len(L.elements)} states, {len(L.covers)} covers"]
        lines += [f"{a} -> {b}  [{j}]" for a, b, j in L.covers]
        lines.append("join irreducibles: " + " ".join(map(str, irr)))
        text = "\n".join(lines) + "\n"
    return payload, text


def do_rep(ctx: SegmentContext, fmt: str):
    r = ctx.rep
    arrows = []
    lines = ["dims: " + " ".join(f"{j}:{x}" for j, x in zip(r.quiver.vertices, r.dims))]
    for a in r.quiver.arrows:
        m = arrow_matrix(r, a).tolist()
        arrows.append({
            "source": a.source, "target": a.target, "crossing": a.crossing,
            "corner": a.corner, "flag": a.flag, "matrix": m,
        })
        lines.append(f"{a.source} -> {a.target}  at {a.crossing}.{a.corner}  flag {a.flag}  {m}")
    payload = {"dims": _vec(ctx, r.dims), "arrows": arrows}
    if fmt == "dot":
        return payload, quiver_dot(r.quiver, f"quiver_{ctx.segment}")
    return payload, "\n".join(lines) + "\n"


def do_submodules(ctx: SegmentContext, fmt: str):
    subs = ctx.submodules
    lines = [f"{len(subs)} submodules", "# segments: " + " ".join(map(str, ctx.diagram.segments))]
    lines += [_vec_text(ctx, v) for v in subs]
    return {"count": len(subs), "vectors": [_vec(ctx, v) for v in subs]}, "\n".join(lines) + "\n"


def do_irr(ctx: SegmentContext, fmt: str, method: str = "both"):
    payload: dict = {}
    lines = []
    if method in ("module", "both"):
        payload["module"] = [
            {"j": j, "k": k, "dim_vector": _vec(ctx, v)} for (j, k), v in ctx.M.items()
        ]
        lines.append(f"M(j,k): {len(ctx.M)}")
        lines += [f"  ({j},{k})  {_vec_text(ctx, v)}" for (j, k), v in ctx.M.items()]
    if method in ("state", "both"):
        L = ctx.state_lattice
        rows = []
        lines.append(f"S(j,k): {len(ctx.irreducible_states)}")
        for (j, k), (lv, s) in ctx.irreducible_states.items():
            e = L.dim_vectors[L.index[s]]
            rows.append({
                "j": j, "k": k, "markers": state_to_json(ctx.diagram, s),
                "levels": {str(x): v for x, v in lv.level.items()},
                "dim_vector": _vec(ctx, e),
            })
            lines.append(f"  ({j},{k})  {_markers_text(ctx, s)}  |  {_vec_text(ctx, e)}")
        payload["state"] = rows
    return payload, "\n".join(lines) + "\n"


def do_coeff(ctx: SegmentContext, fmt: str):
    cq = ctx.coefficient_quiver
    payload = {
        "vertices": [basis_name(v) for v in cq.vertices],
        "arrows": [[basis_name(a), basis_name(b)] for a, b in cq.arrows],
    }
    if fmt == "dot":
        return payload, coefficient_quiver_dot(cq, f"coefficient_quiver_{ctx.segment}")
    lines = [f"{len(cq.vertices)} vertices, {len(cq.arrows)} arrows"]
    lines += [f"{basis_name(a)} -> {basis_name(b)}" for a, b in cq.arrows]
    return payload, "\n".join(lines) + "\n"


STAGES: dict[str, tuple[Callable, tuple[str, ...], str]] = {
    # command: (builder, allowed formats, default format)
    "states": (do_states, ("text", "json"), "text"),
    "lattice": (do_lattice, ("dot", "json", "text"), "dot"),
    "rep": (do_rep, ("text", "json", "dot"), "text"),
    "submodules": (do_submodules, ("text", "json"), "text"),
    "irr": (do_irr, ("text", "json"), "text"),
    "coeff": (do_coeff, ("dot", "json", "text"), "dot"),
}


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------- commands


def cmd_validate(d: LinkDiagram, args) -> tuple[str, int]:
    report = validate(d)
    code = EXIT_OK if report.ok else EXIT_INPUT
    if args.format == "json":
        return _dump({
            "schema_version": SCHEMA_VERSION,
            "name": d.name,
            "ok": report.ok,
            "prime": report.primality,
            "crossings": d.n,
            "segments": d.segment_count,
            "findings": [
                {"severity": s, "code": c, "message": m} for s, c, m in report.findings
            ],
        }), code
    lines = [f"{d.name or 'diagram'}: {d.n} crossings, {d.segment_count} segments"]
    lines += [f"{s}: {c}: {m}" for s, c, m in report.findings]
    lines.append("valid" if report.ok else "invalid")
    return "\n".join(lines) + "\n", code


def cmd_stage(d: LinkDiagram, args) -> tuple[str, int]:
    build, formats, default = STAGES[args.command]
    fmt = args.format or default
    if fmt not in formats:
        raise UsageError(f"{args.command} supports --format {'|'.join(formats)}")
    require_valid(d)
    segs = parse_segment(d, args.segment)
    extra = {"method": args.method} if args.command == "irr" else {}
    payloads, texts = [], []
    for i in segs:
        ctx = SegmentContext(d, i, args.limit)
        payload, text = build(ctx, fmt, **extra)
        payloads.append({"segment": i, **payload})
        texts.append(text if len(segs) == 1 or fmt == "dot" else f"== segment {i}\n{text}")
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "name": d.name}
        if len(segs) == 1:
            doc.update(payloads[0])
        else:
            doc["segments"] = payloads
        return _dump(doc), EXIT_OK
    return "".join(texts), EXIT_OK


def cmd_check(d: LinkDiagram, args) -> tuple[str, int]:
    fmt = args.format or "text"
    if fmt not in ("text", "json"):
        raise UsageError("check supports --format text|json")
    require_valid(d)
    report = run_all(d, args.segment, args.limit)
    code = EXIT_OK if report.overall else EXIT_THEOREM
    if fmt == "json":
        return _dump({
            "schema_version": SCHEMA_VERSION,
            "command": "check",
            "name": d.name,
            "passed": report.overall,
            "checks": [c.as_dict(args.timings) for c in report.checks],
        }), code
    return report_text(report, args.timings), code


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knotlattice", description="Kauffman state lattices and quiver representations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(name: str, help: str, segment_default: str | None = None):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="diagram JSON file or bundled fixture name")
        sp.add_argument("--format", choices=("text", "json", "dot"), default=None)
        sp.add_argument("--output", "-o", help="write to this path instead of stdout")
        if name != "validate":
            sp.add_argument(
                "--segment", "-s", default=segment_default, required=segment_default is None,
                help="segment id, or 'all'",
            )
            sp.add_argument("--limit", type=int, default=DEFAULT_LIMIT,
                            help="maximum number of states or submodules")
        return sp

    common("validate", "check the diagram encoding, planarity and primality")
    common("states", "list Kauffman states relative to a segment")
    common("lattice", "Hasse diagram of the state lattice")
    common("rep", "dimension vector, flags and matrices of the representation")
    common("submodules", "feasible submodule dimension vectors")
    irr = common("irr", "join irreducibles by module generation and/or level partitions")
    irr.add_argument("--method", choices=("module", "state", "both"), default="both")
    common("coeff", "coefficient quiver")
    chk = common("check", "run every theorem check", segment_default="all")
    chk.add_argument("--timings", action="store_true", help="include per-check wall time")
    sub.add_parser("fixtures", help="list bundled fixtures")
    return p


def run(args: argparse.Namespace) -> tuple[str, int]:
    if args.command == "fixtures":
        return "".join(f"{n}\n" for n in bundled_fixtures()), EXIT_OK
    d = parse_diagram(read_input(args.file))
    if args.command == "validate":
        return cmd_validate(d, args)
    if args.command == "check":
        return cmd_check(d, args)
    return cmd_stage(d, args)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = run(args)
    except (DiagramError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except TheoremViolation as exc:
        print(f"theorem failure: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    path = getattr(args, "output", None)
    if path:
        Path(path).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
