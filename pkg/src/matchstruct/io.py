"""Graph ingestion (edge list, DIMACS) and Graphviz DOT export."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .errors import ParseError
from .graph import Graph

# Fill colors cycled for vertex-class coloring in DOT output.
_PALETTE = (
    "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6",
    "#ffff99", "#1f78b4", "#33a02c", "#e31a1c", "#ff7f00",
)


def _parse_int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {token!r}", line) from None


def parse_edge_list(text: str) -> Graph:
    """Parse the plain edge-list format.

    First line ``n m``, then ``m`` lines ``u v`` with 0-based endpoints.
    Duplicate edge lines collapse to a single edge; self-loops, out-of-range
    ids, and malformed lines raise :class:`ParseError` naming the line.
    """
    lines = text.splitlines()
    stripped = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not stripped:
        raise ParseError("empty input, expected a header line 'n m'", 1)
    header_no, header = stripped[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"expected header 'n m', got {header!r}", header_no)
    n = _parse_int(parts[0], "vertex count", header_no)
    m = _parse_int(parts[1], "edge count", header_no)
    if n < 0 or m < 0:
        raise ParseError("counts must be nonnegative", header_no)
    body = stripped[1:]
    if len(body) != m:
        raise ParseError(
            f"header declares {m} edges but {len(body)} edge lines follow", header_no
        )
    edges = []
    for line_no, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"expected edge 'u v', got {ln!r}", line_no)
        u = _parse_int(parts[0], "vertex id", line_no)
        v = _parse_int(parts[1], "vertex id", line_no)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line_no)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range [0, {n}) in edge ({u}, {v})", line_no)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def parse_dimacs(text: str) -> Graph:
    """Parse a DIMACS-like format: ``p edge n m`` then ``e u v`` (1-based).

    Comment lines starting with ``c`` are skipped; the result is normalized
    to 0-based ids with duplicates collapsed.
    """
    n = None
    declared_m = None
    edges = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith("c"):
            continue
        parts = ln.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", line_no)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"expected 'p edge n m', got {ln!r}", line_no)
            n = _parse_int(parts[2], "vertex count", line_no)
            declared_m = _parse_int(parts[3], "edge count", line_no)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before problem line", line_no)
            if len(parts) != 3:
                raise ParseError(f"expected 'e u v', got {ln!r}", line_no)
            u = _parse_int(parts[1], "vertex id", line_no) - 1
            v = _parse_int(parts[2], "vertex id", line_no) - 1
            if u == v:
                raise ParseError(f"self-loop at vertex {u + 1}", line_no)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex id out of range [1, {n}]", line_no)
            edges.append((u, v))
        else:
            raise ParseError(f"unrecognized line {ln!r}", line_no)
    if n is None:
        raise ParseError("missing problem line 'p edge n m'", 1)
    graph = Graph.from_edges(n, edges)
    if declared_m is not None and len(edges) != declared_m:
        raise ParseError(
            f"problem line declares {declared_m} edges but {len(edges)} appear", 1
        )
    return graph


def load_graph(path: str | Path, fmt: str | None = None) -> Graph:
    """Read a graph file; format from ``fmt`` or inferred from the suffix."""
    path = Path(path)
    if fmt is None:
        fmt = "dimacs" if path.suffix == ".dimacs" else "edgelist"
    text = path.read_text(encoding="utf-8")
    if fmt == "dimacs":
        return parse_dimacs(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise ParseError(f"unknown format {fmt!r}")


def format_edge_list(g: Graph) -> str:
    """Render a graph in the edge-list format accepted by :func:`parse_edge_list`."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def graph_to_dot(
    g: Graph,
    classes: Sequence[Iterable[int]] | None = None,
    name: str = "G",
) -> str:
    """Graphviz source for ``g``; optional vertex classes get cycled fill colors."""
    lines = [f"graph {name} {{"]
    color_of = {}
    if classes is not None:
        for i, cls in enumerate(classes):
            for v in cls:
                color_of[v] = _PALETTE[i % len(_PALETTE)]
    for v in range(g.n):
        if v in color_of:
            lines.append(f'  {v} [style=filled, fillcolor="{color_of[v]}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
