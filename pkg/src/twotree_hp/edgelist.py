"""Plain-text edge lists: a ``n m`` header, then m lines ``a b`` with
0 <= a < b < n.  Lines starting with ``#`` and blank lines are skipped."""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .graph import Graph


def parse_edge_list(text: str) -> Graph:
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 1 or b < 0:
                raise ParseError(f"bad header {line!r}", lineno)
            header = (a, b)
            continue
        n, m = header
        if not 0 <= a < b < n:
            raise ParseError(f"edge {a} {b} must satisfy 0 <= a < b < {n}", lineno)
        if (a, b) in seen:
            raise ParseError(f"duplicate edge {a} {b}", lineno)
        if len(edges) == m:
            raise ParseError(f"more than the {m} edges announced in the header", lineno)
        seen.add((a, b))
        edges.append((a, b))
    if header is None:
        raise ParseError("missing 'n m' header", 1)
    if len(edges) != header[1]:
        raise ParseError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(edges, range(header[0]))


def format_edge_list(g: Graph) -> str:
    """Inverse of ``parse_edge_list`` for graphs on 0..n-1."""
    n = len(g)
    if sorted(g.adj) != list(range(n)):
        raise ValueError("edge lists need vertex ids 0..n-1")
    edges = g.edges()
    lines = [f"{n} {len(edges)}"]
    lines.extend(f"{a} {b}" for a, b in edges)
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g), encoding="utf-8", newline="\n")
