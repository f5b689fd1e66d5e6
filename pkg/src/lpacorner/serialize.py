"""Text formats: graph JSON, DOT, multisets, partitions and algebra elements.

* graph JSON  ``{"vertices": [...], "edges": [{"id": .., "src": .., "dst": ..}, ...]}``
* multiset    ``"v1:2,v2:1"`` (a bare label counts once; empty string is 0)
* partition   ``"e1,e2|e3"``
* element     ``"2*[e1.e2|f1] - 1/2*[v]"`` meaning ``2 (e1 e2)(f1)* - 1/2 v``;
  a bracket holds ``p`` or ``p|q`` where each path is a vertex label or a
  dot-separated edge sequence, and factors may be chained with ``*``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .algebra import AlgebraElement, LeavittPathAlgebra, Monomial, PathTerm, check_path
from .errors import FormatError, InvalidGraph
from .graph import Edge, Graph
from .monoid import MonoidElement
from .moves import Partition

# -- graphs ------------------------------------------------------------------------


def graph_to_dict(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges],
    }


def graph_from_dict(d) -> Graph:
    if not isinstance(d, dict) or not isinstance(d.get("vertices"), list):
        raise FormatError('graph JSON needs a "vertices" list')
    edges = d.get("edges", [])
    if not isinstance(edges, list):
        raise FormatError('"edges" must be a list')
    try:
        parsed = [Edge(str(e["id"]), e["src"], e["dst"]) for e in edges]
    except (KeyError, TypeError):
        raise FormatError('each edge needs "id", "src" and "dst"') from None
    try:
        return Graph(tuple(d["vertices"]), tuple(parsed))
    except InvalidGraph as exc:
        raise FormatError(str(exc)) from None


def dumps_graph(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def loads_graph(text: str) -> Graph:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return graph_from_dict(d)


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return loads_graph(text)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"digraph {_dot_quote(name)} {{"]
    lines += [f"  {_dot_quote(v)};" for v in g.vertices]
    lines += [f"  {_dot_quote(e.src)} -> {_dot_quote(e.dst)} [label={_dot_quote(e.id)}];" for e in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- multisets and partitions ------------------------------------------------------


def parse_multiset(text: str) -> MonoidElement:
    text = text.strip()
    if not text or text == "0":
        return MonoidElement()
    coeffs: dict[str, int] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise FormatError(f"empty item in multiset {text!r}")
        label, sep, count = item.rpartition(":")
        if not sep:
            label, count = item, "1"
        if not label or not re.fullmatch(r"\d+", count.strip()):
            raise FormatError(f"bad multiset item {item!r}")
        coeffs[label.strip()] = coeffs.get(label.strip(), 0) + int(count)
    return MonoidElement(coeffs)


def format_multiset(m: MonoidElement) -> str:
    return str(m)


def parse_partition(text: str) -> Partition:
    blocks = []
    for block in text.split("|"):
        ids = [e.strip() for e in block.split(",") if e.strip()]
        if not ids:
            raise FormatError(f"empty block in partition {text!r}")
        blocks.append(ids)
    return Partition(blocks)


def format_partition(p: Partition) -> str:
    return str(p)


# -- algebra elements --------------------------------------------------------------

_NUM = re.compile(r"\d+(?:/\d+)?")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "+-*":
            out.append((c, c))
            i += 1
        elif c == "[":
            depth, j = 0, i
            while j < len(text):
                if text[j] == "[":
                    depth += 1
                elif text[j] == "]":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if depth:
                raise FormatError(f"unbalanced brackets in {text!r}")
            out.append(("bracket", text[i + 1 : j]))
            i = j + 1
        else:
            m = _NUM.match(text, i)
            if not m:
                raise FormatError(f"unexpected {c!r} at position {i} in {text!r}")
            out.append(("num", m.group()))
            i = m.end()
    return out


def _split_top(s: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for c in s:
        if c == "[":
            depth += 1
        elif c == "]":
            depth -= 1
        if c == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(c)
    parts.append("".join(cur))
    return parts


def parse_path(g: Graph, s: str) -> PathTerm:
    """A vertex label, or edge ids joined by ``.`` (ids may themselves contain dots)."""
    s = s.strip()
    if s in g.vertex_set:
        return PathTerm(s)
    pieces = _split_top(s, ".")
    n = len(pieces)
    # dynamic programming over ways to re-join dot-separated pieces into edge ids
    best: list[tuple[str, ...] | None] = [None] * (n + 1)
    best[0] = ()
    for i in range(n):
        if best[i] is None:
            continue
        for j in range(i + 1, n + 1):
            eid = ".".join(pieces[i:j])
            if g.has_edge(eid) and best[j] is None:
                cand = best[i] + (eid,)
                try:
                    check_path(g, PathTerm(g.edge(cand[0]).src, cand))
                except Exception:
                    continue
                best[j] = cand
    if best[n] is None:
        raise FormatError(f"{s!r} is neither a vertex nor a path of the graph")
    edges = best[n]
    return PathTerm(g.edge(edges[0]).src, edges)


def _bracket(L: LeavittPathAlgebra, body: str) -> AlgebraElement:
    parts = _split_top(body, "|")
    if len(parts) > 2:
        raise FormatError(f"too many '|' in [{body}]")
    g = L.graph
    p = parse_path(g, parts[0])
    if len(parts) == 1:
        q = PathTerm(p.end(g))
    else:
        q = parse_path(g, parts[1])
    if p.end(g) != q.end(g):
        raise FormatError(f"[{body}]: the two paths end at different vertices")
    return L.element({Monomial(p, q): 1})


def parse_element(L: LeavittPathAlgebra, text: str) -> AlgebraElement:
    toks = _tokenize(text)
    if not toks:
        raise FormatError("empty expression")
    pos = 0
    total = L.zero()
    sign = 1
    expect_term = True
    while pos < len(toks):
        kind, val = toks[pos]
        if expect_term:
            if kind in "+-":
                sign = sign if kind == "+" else -sign
                pos += 1
                continue
            term = None
            coeff = Fraction(1)
            while True:
                if pos >= len(toks):
                    raise FormatError(f"dangling operator in {text!r}")
                kind, val = toks[pos]
                if kind == "num":
                    try:
                        coeff *= Fraction(val)
                    except ZeroDivisionError:
                        raise FormatError(f"zero denominator in {val!r}") from None
                elif kind == "bracket":
                    f = _bracket(L, val)
                    term = f if term is None else term * f
                else:
                    raise FormatError(f"unexpected {val!r} in {text!r}")
                pos += 1
                if pos < len(toks) and toks[pos][0] == "*":
                    pos += 1
                    continue
                break
            if term is None:
                raise FormatError(f"a term needs a [..] factor in {text!r}")
            total = total + term.scale(L.field(coeff) * sign)
            sign = 1
            expect_term = False
        else:
            if kind not in "+-":
                raise FormatError(f"expected + or - before {val!r} in {text!r}")
            sign = 1 if kind == "+" else -1
            pos += 1
            expect_term = True
    if expect_term:
        raise FormatError(f"dangling operator in {text!r}")
    return total


def _fmt_path(p: PathTerm) -> str:
    return ".".join(p.edges) if p.edges else p.start


def format_element(a: AlgebraElement) -> str:
    if a.is_zero():
        return "0"
    out = []
    for m, c in a.sorted_terms():
        body = _fmt_path(m.p) if not m.q.edges else f"{_fmt_path(m.p)}|{_fmt_path(m.q)}"
        neg = (c < 0) if isinstance(c, Fraction) else False
        mag = -c if neg else c
        term = f"{mag}*[{body}]"
        if not out:
            out.append(("-" if neg else "") + term)
        else:
            out.append((" - " if neg else " + ") + term)
    return "".join(out)
