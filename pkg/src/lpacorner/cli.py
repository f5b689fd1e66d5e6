"""Command-line front end.

Exit status is 0 on success, 1 for a domain error (single-line diagnostic on
stderr) and 2 for malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import moves
from .algebra import GF, QQ, LeavittPathAlgebra
from .errors import FormatError, LPAError
from .graph import Graph, classify_vertex, is_acyclic, is_totally_looped
from .monoid import congruent_within
from .pipeline import ORDERS, corner_graph, decompose
from .serialize import (
    dumps_graph,
    format_element,
    graph_to_dict,
    parse_element,
    parse_multiset,
    parse_partition,
    read_graph,
    to_dot,
)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _graph(args) -> Graph:
    path = args.graph or args.graph_pos
    if not path:
        raise FormatError("no graph file given")
    return read_graph(path)


def _add_graph(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph_pos", nargs="?", metavar="GRAPH", help="graph JSON file")
    p.add_argument("--graph", help="graph JSON file (same as the positional argument)")


# -- commands ------------------------------------------------------------------------


def cmd_info(args) -> int:
    g = _graph(args)
    info = {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "totally_looped": is_totally_looped(g),
        "acyclic": is_acyclic(g),
        "classes": {v: classify_vertex(g, v)._asdict() for v in g.vertices},
    }
    _emit(_dump(info), args.out)
    return 0


def cmd_move(args) -> int:
    g = _graph(args)
    kind = args.kind
    if kind == "hair":
        if not args.lengths:
            raise FormatError("hair needs --lengths")
        lengths = parse_multiset(args.lengths).as_dict()
        for v in g.vertices:
            lengths.setdefault(v, 1)
        res = moves.hair_extend(g, lengths)
    else:
        if not args.vertex:
            raise FormatError(f"{kind} needs --vertex")
        v = args.vertex
        g.check_vertex(v)
        if kind == "collapse":
            res = moves.collapse(g, v)
        elif kind == "source-elim":
            res = moves.source_eliminate(g, v)
        elif kind == "move-r":
            res = moves.move_r(g, v)
        else:
            if args.partition:
                part = parse_partition(args.partition)
            elif kind == "in-split":
                part = moves.sender_partition(g, v)
            else:
                part = moves.singleton_partition(g.out_edges(v))
            res = (moves.in_split if kind == "in-split" else moves.out_split)(g, v, part)
    _emit(dumps_graph(res), args.out)
    return 0


def cmd_sf(args) -> int:
    g = _graph(args)
    r = moves.sf_reduce(g)
    out = {
        "graph": graph_to_dict(r.sf),
        "removed": list(r.removed_isolated),
        "trivial": r.trivial,
        "trace": [{"kind": m.kind, "vertex": m.vertex, "detail": m.detail} for m in r.trace],
    }
    _emit(_dump(out), args.out)
    return 0


def _trace_table(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _write_bundle(args, g: Graph, rep, report: dict, table: str, output: Graph) -> None:
    """JSON to stdout or ``--out``; with ``--out-dir`` also the TSV trace, DOT and figure."""
    _emit(_dump(report), args.out)
    if args.figure:
        from .report import plot_trace

        plot_trace(g, rep, args.figure, title=args.command)
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "report.json").write_text(_dump(report))
        (d / "trace.tsv").write_text(table)
        (d / "output.json").write_text(dumps_graph(output))
        (d / "output.dot").write_text(to_dot(output))
        from .report import plot_trace

        plot_trace(g, rep, d / "trace.png", title=args.command)


def cmd_decompose(args) -> int:
    g = _graph(args)
    rep = decompose(g, args.order)
    rows = [(i, m.kind, m.vertex, m.detail) for i, m in enumerate(rep.trace, start=1)]
    table = _trace_table(rows, ("step", "kind", "vertex", "detail"))
    _write_bundle(args, g, rep, rep.to_json(), table, rep.F)
    return 0


def cmd_corner(args) -> int:
    g = _graph(args)
    eps = parse_multiset(args.cls)
    rep = corner_graph(g, eps, args.order)
    rows = [
        (i, s.move.kind, s.move.vertex, s.move.detail, str(s.before), str(s.after))
        for i, s in enumerate(rep.trace, start=1)
    ]
    table = _trace_table(rows, ("step", "kind", "vertex", "detail", "before", "after"))
    if args.log:
        sys.stderr.write(rep.move_log() + "\n")
    _write_bundle(args, g, rep, rep.to_json(), table, rep.output)
    return 0


def cmd_monoid_eq(args) -> int:
    g = _graph(args)
    verdict = congruent_within(g, parse_multiset(args.a), parse_multiset(args.b), args.max_states)
    out = {
        "verdict": verdict.status.value,
        "witness": None if verdict.witness is None else [str(m) for m in verdict.witness],
        "states": verdict.states,
    }
    if args.json:
        _emit(_dump(out), args.out)
    else:
        _emit(str(verdict) + "\n", args.out)
    return 0


def cmd_algebra_eval(args) -> int:
    g = _graph(args)
    try:
        field = GF(args.prime) if args.prime else QQ
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    L = LeavittPathAlgebra(g, field)
    x = parse_element(L, args.expr)
    _emit(format_element(x) + "\n", args.out)
    return 0


def cmd_emit_dot(args) -> int:
    g = _graph(args)
    _emit(to_dot(g), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lpacorner", description="Graph moves, graph monoids and corners of Leavitt path algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, first=None):
        p = sub.add_parser(name, help=help_)
        if first:
            p.add_argument(first[0], **first[1])
        _add_graph(p)
        p.add_argument("--out", help="write the main output here instead of stdout")
        p.set_defaults(func=func)
        return p

    add("info", cmd_info, "vertex classification and global flags")

    kinds = ["collapse", "source-elim", "move-r", "in-split", "out-split", "hair"]
    p = add("move", cmd_move, "apply one graph move", first=("kind", {"choices": kinds}))
    p.add_argument("--vertex")
    p.add_argument("--partition", help='edge blocks, e.g. "e1,e2|e3" (default: by sender / singletons)')
    p.add_argument("--lengths", help='hair lengths, e.g. "v1:3,v2:2" (missing vertices get 1)')

    add("sf", cmd_sf, "exhaustive source elimination")

    for name, func, help_ in (
        ("decompose", cmd_decompose, "reduce to line graphs plus a totally looped graph"),
        ("corner", cmd_corner, "graph of the corner cut by an idempotent class"),
    ):
        p = add(name, func, help_)
        p.add_argument("--order", choices=ORDERS, default="smallest", help="collapse order")
        p.add_argument("--out-dir", help="also write report.json, trace.tsv, output.json, output.dot, trace.png")
        p.add_argument("--figure", help="render the trace figure to this file")
        if name == "corner":
            p.add_argument("--class", dest="cls", required=True, help='vertex multiset, e.g. "v1:2,v2:1"')
            p.add_argument("--log", action="store_true", help="print the move log to stderr")

    p = add("monoid-eq", cmd_monoid_eq, "bounded congruence test in the graph monoid")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--max-states", type=int, default=100_000)
    p.add_argument("--json", action="store_true")

    p = add("algebra-eval", cmd_algebra_eval, "normal form of an algebra element")
    p.add_argument("--expr", required=True)
    p.add_argument("--prime", type=int, help="work over GF(p) instead of the rationals")

    add("emit-dot", cmd_emit_dot, "render a graph as DOT")
    return ap


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LPAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
