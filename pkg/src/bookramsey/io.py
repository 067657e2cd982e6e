"""Text file formats.

Graph edge list: first non-comment line is "N", then one "u v" line per
edge, 0-indexed, whitespace-separated.  Lines starting with '#' are ignored.
Coloring files use the same layout with a third column "r" or "b".
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Union

from .errors import ParseError
from .graph import Graph, from_edge_list
from .witness import TwoColoring

PathLike = Union[str, Path]


def _payload_lines(text: str) -> list[list[str]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([str(lineno)] + line.split())
    return rows


def parse_graph(text: str) -> Graph:
    rows = _payload_lines(text)
    if not rows:
        raise ParseError("empty graph file")
    header = rows[0]
    if len(header) != 2:
        raise ParseError(f"line {header[0]}: expected a single vertex count")
    try:
        n = int(header[1])
    except ValueError as exc:
        raise ParseError(f"line {header[0]}: bad vertex count") from exc
    edges = []
    for row in rows[1:]:
        if len(row) != 3:
            raise ParseError(f"line {row[0]}: expected 'u v'")
        try:
            edges.append((int(row[1]), int(row[2])))
        except ValueError as exc:
            raise ParseError(f"line {row[0]}: bad edge endpoints") from exc
    try:
        return from_edge_list(n, edges)
    except Exception as exc:
        raise ParseError(str(exc)) from exc


def load_graph(path: PathLike) -> Graph:
    return parse_graph(Path(path).read_text())


def format_graph(g: Graph) -> str:
    lines = [str(g.n)]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> TwoColoring:
    rows = _payload_lines(text)
    if not rows:
        raise ParseError("empty coloring file")
    header = rows[0]
    if len(header) != 2:
        raise ParseError(f"line {header[0]}: expected a single vertex count")
    try:
        n = int(header[1])
    except ValueError as exc:
        raise ParseError(f"line {header[0]}: bad vertex count") from exc
    edges = []
    colors = {}
    for row in rows[1:]:
        if len(row) != 4 or row[3] not in ("r", "b"):
            raise ParseError(f"line {row[0]}: expected 'u v r|b'")
        try:
            u, v = int(row[1]), int(row[2])
        except ValueError as exc:
            raise ParseError(f"line {row[0]}: bad edge endpoints") from exc
        if u > v:
            u, v = v, u
        if (u, v) in colors and colors[(u, v)] != row[3]:
            raise ParseError(f"line {row[0]}: edge ({u},{v}) recolored inconsistently")
        colors[(u, v)] = row[3]
        edges.append((u, v))
    try:
        g = from_edge_list(n, edges)
    except Exception as exc:
        raise ParseError(str(exc)) from exc
    red = 0
    for i, e in enumerate(g.edges()):
        if colors[e] == "r":
            red |= 1 << i
    return TwoColoring(g, red)


def load_coloring(path: PathLike) -> TwoColoring:
    return parse_coloring(Path(path).read_text())


def format_coloring(c: TwoColoring) -> str:
    lines = [str(c.host.n)]
    for i, (u, v) in enumerate(c.edges):
        tag = "r" if c.red_edges & (1 << i) else "b"
        lines.append(f"{u} {v} {tag}")
    return "\n".join(lines) + "\n"


def atomic_write(path: PathLike, data: str) -> None:
    """Write via a temp file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
