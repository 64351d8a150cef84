"""Plain-text graph, ordering and coloring formats.

Graph: first line ``n m``, then ``m`` lines ``u v`` with 0-based ids;
``#`` starts a comment. A single graph6 token is also accepted on input.
Ordering: one line of space-separated ids. Coloring: JSON object with the
palette size and an id -> color map.
"""

from __future__ import annotations

import json
import sys
from typing import TextIO

import networkx as nx

from .errors import GraphInputError
from .graph import AdditionOrdering, Coloring, Graph, OddReport, build_graph, verify_proper


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    if not lines:
        raise GraphInputError("empty graph input")
    head = lines[0].split()
    if len(lines) == 1 and len(head) == 1 and not head[0].isdigit():
        try:
            h = nx.from_graph6_bytes(head[0].encode())
        except (nx.NetworkXError, ValueError) as exc:
            raise GraphInputError(f"bad graph6 string: {exc}") from exc
        return build_graph(h.number_of_nodes(), h.edges())
    try:
        n, m = (int(x) for x in head)
    except ValueError:
        raise GraphInputError(f"header must be 'n m', got {lines[0]!r}") from None
    edges = []
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise GraphInputError(f"edge line {i} must hold two ids: {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphInputError(f"edge line {i} has a non-integer id: {line!r}") from None
    if len(edges) != m:
        raise GraphInputError(f"header announces {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def format_graph(g: Graph) -> str:
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(rows) + "\n"


def parse_ordering(text: str) -> list[int]:
    try:
        return [int(x) for x in " ".join(_lines(text)).split()]
    except ValueError as exc:
        raise GraphInputError(f"ordering must be integers: {exc}") from None


def format_ordering(ao: AdditionOrdering | list[int]) -> str:
    order = ao.order if isinstance(ao, AdditionOrdering) else ao
    return " ".join(map(str, order)) + "\n"


def coloring_to_dict(c: Coloring) -> dict:
    return {"palette": c.palette, "colors": {str(v): col for v, col in enumerate(c.colors)}}


def format_coloring(c: Coloring) -> str:
    return json.dumps(coloring_to_dict(c), sort_keys=False) + "\n"


def parse_coloring(text: str, n: int | None = None) -> Coloring:
    try:
        d = json.loads(text)
        pal = int(d["palette"])
        cmap = {int(v): int(col) for v, col in d["colors"].items()}
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise GraphInputError(f"bad coloring file: {exc}") from None
    size = n if n is not None else len(cmap)
    missing = [v for v in range(size) if v not in cmap]
    if missing:
        raise GraphInputError(f"coloring misses vertices {missing[:5]}")
    try:
        return Coloring(tuple(cmap[v] for v in range(size)), pal)
    except ValueError as exc:
        raise GraphInputError(str(exc)) from None


def report_to_dict(g: Graph, c: Coloring, report: OddReport | None) -> dict:
    proper, edge = verify_proper(g, c)
    d: dict = {"proper": proper, "colors_used": c.used, "palette": c.palette}
    if not proper:
        d["monochromatic_edge"] = list(edge)
        d["ok"] = False
        return d
    d["odd"] = report.ok
    d["unwitnessed"] = report.failures
    d["ok"] = report.ok
    return d


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_text(path: str | None, text: str, default: TextIO | None = None) -> None:
    if path is None or path == "-":
        (default or sys.stdout).write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
