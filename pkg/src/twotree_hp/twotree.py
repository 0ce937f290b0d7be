"""2-tree recognition and perfect elimination orderings."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .errors import NotTwoTree
from .graph import Graph


@dataclass(frozen=True)
class Peo:
    """Perfect elimination ordering; ``order[0]`` is eliminated first."""

    order: tuple[int, ...]
    position: dict[int, int] = field(compare=False, repr=False)

    @classmethod
    def of(cls, order) -> Peo:
        order = tuple(order)
        return cls(order, {v: i for i, v in enumerate(order)})

    def __len__(self) -> int:
        return len(self.order)

    def __getitem__(self, i: int) -> int:
        return self.order[i]

    def index(self, v: int) -> int:
        return self.position[v]


def elimination_trace(g: Graph, keep: int | None = None) -> list[int] | None:
    """Eliminate simplicial degree-2 vertices, lowest id first.

    Returns the full vertex order (eliminated vertices, then the surviving
    edge) or None when the elimination gets stuck before reaching a single
    edge, i.e. when g is not a 2-tree.  ``keep`` is never eliminated, so it
    ends up last.
    """
    n = len(g.adj)
    if n < 2:
        return None
    if n == 2:
        a, b = sorted(g.adj)
        if not g.has_edge(a, b):
            return None
        if keep == a:
            return [b, a]
        return [a, b]
    if g.num_edges() != 2 * n - 3:
        return None

    adj = g.adj
    deg = {v: len(ns) for v, ns in adj.items()}
    gone: set[int] = set()
    heap = sorted(v for v, d in deg.items() if d == 2 and v != keep)
    order = []
    pop, push = heapq.heappop, heapq.heappush
    while len(order) < n - 2:
        v = None
        while heap:
            c = pop(heap)
            if deg[c] == 2 and c not in gone:
                v = c
                break
        if v is None:
            return None
        a, b = [w for w in adj[v] if w not in gone]
        if b not in adj[a]:
            return None
        gone.add(v)
        order.append(v)
        for x in (a, b):
            deg[x] -= 1
            if deg[x] == 2 and x != keep:
                push(heap, x)
    a, b = sorted(v for v in adj if v not in gone)
    if keep == a:
        a, b = b, a
    order.extend((a, b))
    return order


Triangle = tuple[int, int, int]


def ear_decomposition(g: Graph) -> tuple[list[Triangle], tuple[int, int]] | None:
    """Peel simplicial degree-2 vertices in whatever order is cheapest.

    Returns the triangles (v, a, b) in peeling order, v being the vertex
    removed from edge ab, plus the edge left at the end; None if g is not
    a 2-tree.  Reversed, the triangles rebuild g from that edge.
    """
    adj = g.adj
    n = len(adj)
    if n < 2:
        return None
    if n == 2:
        a, b = sorted(adj)
        return ([], (a, b)) if b in adj[a] else None
    if g.num_edges() != 2 * n - 3:
        return None
    deg = {v: len(ns) for v, ns in adj.items()}
    stack = [v for v, d in deg.items() if d == 2]
    gone: set[int] = set()
    tris: list[Triangle] = []
    need = n - 2
    while stack and len(tris) < need:
        v = stack.pop()
        if deg[v] != 2 or v in gone:
            continue
        a, b = adj[v] - gone
        if b not in adj[a]:
            return None
        gone.add(v)
        tris.append((v, a, b))
        deg[a] -= 1
        deg[b] -= 1
        if deg[a] == 2:
            stack.append(a)
        if deg[b] == 2:
            stack.append(b)
    if len(tris) != need:
        return None
    _, a, b = tris[-1]
    return tris, ((a, b) if a < b else (b, a))


def is_two_tree(g: Graph) -> bool:
    return ear_decomposition(g) is not None


def require_two_tree(g: Graph) -> None:
    if not is_two_tree(g):
        raise NotTwoTree(f"{g!r} is not a 2-tree")


def simplicial_degree2_vertices(g: Graph) -> set[int]:
    require_two_tree(g)
    out = set()
    for v, ns in g.adj.items():
        if len(ns) == 2:
            a, b = ns
            if g.has_edge(a, b):
                out.add(v)
    return out


def peo_with_degree2_endpoints(g: Graph) -> Peo:
    """PEO whose first and last vertices have degree 2.

    The highest-id degree-2 vertex is held back so it is eliminated last;
    every other step removes the lowest-id eligible vertex.
    """
    n = len(g.adj)
    if n <= 3:
        require_two_tree(g)
        return Peo.of(sorted(g.adj))
    deg2 = [v for v, ns in g.adj.items() if len(ns) == 2]
    if not deg2:
        raise NotTwoTree("no degree-2 vertex")
    order = elimination_trace(g, keep=max(deg2))
    if order is None:
        raise NotTwoTree(f"{g!r} is not a 2-tree")
    return Peo.of(order)


def is_peo(g: Graph, order) -> bool:
    """Each vertex is simplicial among itself and its successors."""
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != len(g.adj) or set(pos) != set(g.adj):
        return False
    for v in order:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        for i, a in enumerate(later):
            for b in later[i + 1 :]:
                if b not in g.adj[a]:
                    return False
    return True
