"""Undirected simple graphs with stable integer vertex ids.

Vertex ids are never renumbered: deleting a vertex leaves a hole so that
labels and orderings computed on one pruning stage stay valid on the next.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .errors import Disconnected, MissingEdge, MissingVertex

Edge = tuple[int, int]


def edge_key(a: int, b: int) -> Edge:
    """Canonical (low, high) key for the undirected edge ab."""
    if a == b:
        raise ValueError(f"self-loop on vertex {a}")
    return (a, b) if a < b else (b, a)


class Graph:
    """Adjacency-set graph. Iteration helpers return ascending ids."""

    __slots__ = ("adj",)

    def __init__(self, edges: Iterable[Edge] = (), vertices: Iterable[int] = ()):
        self.adj: dict[int, set[int]] = {}
        for v in vertices:
            self.adj.setdefault(v, set())
        for a, b in edges:
            self.add_edge(a, b)

    @classmethod
    def from_adjacency(cls, adj: dict[int, set[int]]) -> Graph:
        g = cls.__new__(cls)
        g.adj = adj
        return g

    def copy(self) -> Graph:
        return Graph.from_adjacency({v: set(ns) for v, ns in self.adj.items()})

    # -- queries ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.adj)

    def __contains__(self, v: object) -> bool:
        return v in self.adj

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={len(self.adj)}, m={self.num_edges()})"

    @property
    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def neighbors(self, v: int) -> set[int]:
        try:
            return self.adj[v]
        except KeyError:
            raise MissingVertex(v) from None

    def sorted_neighbors(self, v: int) -> list[int]:
        return sorted(self.neighbors(v))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def max_degree(self) -> int:
        return max((len(ns) for ns in self.adj.values()), default=0)

    def has_edge(self, a: int, b: int) -> bool:
        ns = self.adj.get(a)
        return ns is not None and b in ns

    def edges(self) -> list[Edge]:
        """All edges as canonical keys, sorted."""
        return sorted((a, b) for a, ns in self.adj.items() for b in ns if a < b)

    def iter_edges(self) -> Iterator[Edge]:
        """Unsorted edge iteration for hot paths."""
        for a, ns in self.adj.items():
            for b in ns:
                if a < b:
                    yield a, b

    def num_edges(self) -> int:
        return sum(map(len, self.adj.values())) // 2

    # -- mutation (stage construction only) ------------------------------

    def add_vertex(self, v: int) -> None:
        self.adj.setdefault(v, set())

    def add_edge(self, a: int, b: int) -> None:
        if a == b:
            raise ValueError(f"self-loop on vertex {a}")
        self.adj.setdefault(a, set()).add(b)
        self.adj.setdefault(b, set()).add(a)

    def remove_edge(self, a: int, b: int) -> None:
        if not self.has_edge(a, b):
            raise MissingEdge(edge_key(a, b))
        self.adj[a].discard(b)
        self.adj[b].discard(a)

    def remove_vertex(self, v: int) -> None:
        for u in self.neighbors(v):
            self.adj[u].discard(v)
        del self.adj[v]

    def subgraph(self, keep: Iterable[int]) -> Graph:
        keep = set(keep)
        return Graph.from_adjacency({v: self.adj[v] & keep for v in keep})


def common_neighbors(g: Graph, e: Edge) -> set[int]:
    """N(a) & N(b) for the edge e = ab; this is also close(e)."""
    a, b = e
    if not g.has_edge(a, b):
        raise MissingEdge(edge_key(a, b))
    na, nb = g.adj[a], g.adj[b]
    if len(na) > len(nb):
        na, nb = nb, na
    return {w for w in na if w in nb}


def close_of_vertex(g: Graph, v: int) -> set[Edge]:
    """Edges joining two neighbours of v."""
    ns = sorted(g.neighbors(v))
    return {
        (a, b)
        for i, a in enumerate(ns)
        for b in ns[i + 1 :]
        if b in g.adj[a]
    }


def components(g: Graph, removed: Iterable[int] = ()) -> list[set[int]]:
    """Connected components of g - removed, ordered by smallest member."""
    removed = set(removed)
    for v in removed:
        if v not in g.adj:
            raise MissingVertex(v)
    seen = set(removed)
    out = []
    for root in sorted(g.adj):
        if root in seen:
            continue
        seen.add(root)
        comp = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    adj = g.adj
    if len(adj) <= 1:
        return True
    root = next(iter(adj))
    seen = {root}
    stack = [root]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


@dataclass
class BlockDecomposition:
    """Blocks, cut vertices and the block id of every edge."""

    blocks: list[frozenset[int]]
    cuts: set[int]
    edge_block: dict[Edge, int]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Iterative Hopcroft-Tarjan lowpoint DFS.

    Blocks come back sorted by their smallest vertex, then by size, and
    ``edge_block`` indexes into that list.
    """
    if not g.adj:
        return BlockDecomposition([], set(), {})
    if not is_connected(g):
        raise Disconnected("blocks requested for a disconnected graph")
    adj = g.adj
    root = min(adj)
    if not adj[root]:
        return BlockDecomposition([frozenset([root])], set(), {})

    disc: dict[int, int] = {root: 0}
    low: dict[int, int] = {root: 0}
    counter = 1
    raw: list[list[Edge]] = []
    cuts: set[int] = set()
    edge_stack: list[Edge] = []
    root_children = 0
    # frame: (vertex, parent, neighbour iterator)
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        v, parent, it = stack[-1]
        dv = disc[v]
        advanced = False
        for w in it:
            dw = disc.get(w)
            if dw is None:
                disc[w] = low[w] = counter
                counter += 1
                edge_stack.append((v, w))
                stack.append((w, v, iter(adj[w])))
                advanced = True
                break
            if w != parent and dw < dv:
                edge_stack.append((v, w))
                if dw < low[v]:
                    low[v] = dw
        if advanced:
            continue
        stack.pop()
        if not stack:
            break
        u = parent
        if low[v] < low[u]:
            low[u] = low[v]
        if low[v] >= disc[u]:
            if u == root:
                root_children += 1
            else:
                cuts.add(u)
            cut_at = len(edge_stack) - 1
            while edge_stack[cut_at] != (u, v):
                cut_at -= 1
            raw.append(edge_stack[cut_at:])
            del edge_stack[cut_at:]
    if root_children > 1:
        cuts.add(root)
    found = []
    for edges in raw:
        verts = frozenset(z for e in edges for z in e)
        found.append((min(verts), len(verts), verts, edges))
    found.sort(key=lambda t: (t[0], t[1], sorted(t[2])))
    edge_block: dict[Edge, int] = {}
    for i, (_, _, _, edges) in enumerate(found):
        for a, b in edges:
            edge_block[(a, b) if a < b else (b, a)] = i
    return BlockDecomposition([t[2] for t in found], cuts, edge_block)


def blocks_and_cut_vertices(g: Graph) -> tuple[list[frozenset[int]], set[int]]:
    """Blocks (maximal 2-connected pieces or bridges) and cut vertices."""
    dec = block_decomposition(g)
    return dec.blocks, dec.cuts
