"""First two pipeline stages: label-preserving degree-2 pruning (G -> G0)
and removal of the two remaining degree-2 vertices (G0 -> G1)."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .errors import PreconditionViolated
from .graph import Edge, Graph, edge_key
from .twotree import Peo, peo_with_degree2_endpoints, require_two_tree


@dataclass
class BlueState:
    """Blue edges and their labels.

    ``labels[(a, b)]`` (a < b) is the vertex sequence hanging off ab, read
    from a towards b, so that ``(a, *label, b)`` is a path of the input graph.
    """

    blue_edges: set[Edge] = field(default_factory=set)
    labels: dict[Edge, tuple[int, ...]] = field(default_factory=dict)
    blue_vertices: set[int] = field(default_factory=set)

    def is_blue(self, a: int, b: int) -> bool:
        return edge_key(a, b) in self.blue_edges

    def label(self, a: int, b: int) -> tuple[int, ...]:
        """Label of ab oriented a -> b; empty for unlabeled edges."""
        key = edge_key(a, b)
        lab = self.labels.get(key, ())
        return lab if key[0] == a else lab[::-1]

    def set_label(self, a: int, b: int, seq: tuple[int, ...]) -> None:
        key = edge_key(a, b)
        self.labels[key] = seq if key[0] == a else seq[::-1]

    def restricted(self, g: Graph) -> BlueState:
        """Blue edges that survive in g."""
        keep = {e for e in self.blue_edges if g.has_edge(*e)}
        return BlueState(
            keep,
            {e: lab for e, lab in self.labels.items() if e in keep},
            {v for e in keep for v in e},
        )

    def blue_adj(self, g: Graph | None = None) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {}
        for a, b in self.blue_edges:
            if g is None or g.has_edge(a, b):
                adj.setdefault(a, set()).add(b)
                adj.setdefault(b, set()).add(a)
        return adj

    def blue_degree(self, v: int) -> int:
        return sum(1 for e in self.blue_edges if v in e)


def blue_degrees(blue: BlueState, g: Graph) -> dict[int, int]:
    deg = dict.fromkeys(g.adj, 0)
    for a, b in blue.blue_edges:
        if g.has_edge(a, b):
            deg[a] += 1
            deg[b] += 1
    return deg


@dataclass
class G0Instance:
    graph: Graph
    blue: BlueState
    pruned_order: list[int]


def vertex_prune(g: Graph, checked: bool = False) -> G0Instance:
    """Prune degree-2 vertices whose close edge is uncoloured, lowest id first.

    Deleting v with neighbours u, w colours uw blue and sets
    label(u -> w) = label(u -> v) + (v,) + label(v -> w).
    ``checked`` skips the 2-tree test when the caller has done it.
    """
    if not checked:
        require_two_tree(g)
    work = g.copy()
    adj = work.adj
    blue = BlueState()
    order: list[int] = []
    heap = [v for v, ns in adj.items() if len(ns) == 2]
    heapq.heapify(heap)
    while heap:
        v = heapq.heappop(heap)
        ns = adj.get(v)
        if ns is None or len(ns) != 2:
            continue
        u, w = sorted(ns)
        close = (u, w)
        if close in blue.blue_edges or w not in adj[u]:
            continue
        seq = blue.label(u, v) + (v,) + blue.label(v, w)
        for e in (edge_key(u, v), edge_key(v, w)):
            blue.blue_edges.discard(e)
            blue.labels.pop(e, None)
        work.remove_vertex(v)
        order.append(v)
        blue.blue_edges.add(close)
        blue.blue_vertices.update(close)
        blue.set_label(u, w, seq)
        for x in (u, w):
            if len(adj[x]) == 2:
                heapq.heappush(heap, x)
    blue.blue_vertices &= set(adj)
    return G0Instance(work, blue, order)


@dataclass
class G0Witness:
    condition: str  # "degree-two-count", "blue-degree" or "neighbour-pair"
    vertices: tuple[int, ...]
    detail: str = ""


def degree_two_vertices(g: Graph) -> list[int]:
    return sorted(v for v, ns in g.adj.items() if len(ns) == 2)


def check_g0_conditions(inst: G0Instance) -> G0Witness | None:
    """None when all three conditions hold, else the first failure."""
    g = inst.graph
    deg2 = degree_two_vertices(g)
    if len(deg2) != 2:
        return G0Witness("degree-two-count", tuple(deg2), f"{len(deg2)} degree-2 vertices")
    bdeg = blue_degrees(inst.blue, g)
    top = max(bdeg.values(), default=0)
    if top > 4:
        v = min(x for x, d in bdeg.items() if d == top)
        return G0Witness("blue-degree", (v,), f"blue degree {top}")
    for s in deg2:
        u, v = sorted(g.adj[s])
        if bdeg[u] == 3 and bdeg[v] == 3:
            return G0Witness("neighbour-pair", (s, u, v), "both neighbours have blue degree 3")
    return None


# The four exceptional G0 graphs with a blue-degree-4 vertex.  Vertex
# order (hub, u, w, x, y); rim path u-w-x-y.
_H_EDGES = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4))
_H_SPOKES = frozenset({(0, 1), (0, 2), (0, 3), (0, 4)})
H_FAMILY: dict[str, frozenset[Edge]] = {
    "H1": _H_SPOKES,
    "H2": _H_SPOKES | {(1, 2)},
    "H3": _H_SPOKES | {(3, 4)},
    "H4": _H_SPOKES | {(1, 2), (3, 4)},
}


@dataclass
class HFamilyResult:
    applicable: bool
    member: str | None = None

    @property
    def witness(self) -> bool:
        return self.applicable and self.member is None


def check_h_family(inst: G0Instance) -> HFamilyResult:
    g = inst.graph
    bdeg = blue_degrees(inst.blue, g)
    if max(bdeg.values(), default=0) != 4:
        return HFamilyResult(False)
    if len(g) != 5:
        return HFamilyResult(True)
    verts = g.vertices
    blue = {e for e in inst.blue.blue_edges if g.has_edge(*e)}
    target_edges = set(g.edges())
    for perm in itertools.permutations(verts):
        mapped = {edge_key(perm[a], perm[b]) for a, b in _H_EDGES}
        if mapped != target_edges:
            continue
        for name, pattern in H_FAMILY.items():
            if {edge_key(perm[a], perm[b]) for a, b in pattern} == blue:
                return HFamilyResult(True, name)
    return HFamilyResult(True)


@dataclass
class G1Instance:
    graph: Graph
    blue: BlueState
    s: int
    t: int
    s_nbrs: tuple[int, int]
    t_nbrs: tuple[int, int]
    sigma: Peo
    g0: G0Instance

    def blue_deg(self) -> dict[int, int]:
        return blue_degrees(self.blue, self.graph)


def derive_g1(inst: G0Instance) -> G1Instance:
    g0 = inst.graph
    deg2 = degree_two_vertices(g0)
    if len(deg2) != 2:
        raise PreconditionViolated(f"G0 has {len(deg2)} degree-2 vertices, expected 2")
    s, t = deg2
    s_nbrs = tuple(sorted(g0.adj[s]))
    t_nbrs = tuple(sorted(g0.adj[t]))
    g1 = g0.copy()
    g1.remove_vertex(s)
    g1.remove_vertex(t)
    blue = inst.blue.restricted(g1)
    sigma = peo_with_degree2_endpoints(g1)
    return G1Instance(g1, blue, s, t, s_nbrs, t_nbrs, sigma, inst)


@dataclass
class G1Witness:
    kind: str  # "blue-degree", "neighbour-pair" or "cycle"
    vertices: tuple[int, ...]


def blue_cycle(blue_adj: dict[int, set[int]]) -> tuple[int, ...] | None:
    """A cycle of a max-degree-2 blue graph, if any."""
    seen: set[int] = set()
    for root in sorted(blue_adj):
        if root in seen or len(blue_adj[root]) != 2:
            continue
        # walk; a component with every degree 2 is a cycle
        comp = [root]
        seen.add(root)
        stack = [root]
        all_two = True
        while stack:
            x = stack.pop()
            if len(blue_adj[x]) != 2:
                all_two = False
            for y in blue_adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        if all_two:
            return tuple(sorted(comp))
    return None


def check_g1_conditions(inst: G1Instance) -> G1Witness | None:
    bdeg = inst.blue_deg()
    for v in sorted(bdeg):
        if bdeg[v] > 2:
            return G1Witness("blue-degree", (v,))
    for z, (a, b) in ((inst.s, inst.s_nbrs), (inst.t, inst.t_nbrs)):
        if (bdeg[a], bdeg[b]) not in ((1, 2), (2, 1), (1, 1)):
            return G1Witness("neighbour-pair", (z, a, b))
    cyc = blue_cycle(inst.blue.blue_adj(inst.graph))
    if cyc is not None:
        return G1Witness("cycle", cyc)
    return None
