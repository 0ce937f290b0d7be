"""Third pipeline stage: classify the edges of G1 and prune E1..E5 to get G2.

Every set removes only non-blue edges that no (u, x)-Hamiltonian path of G1
through all blue edges can use, so G2 keeps exactly the same covering paths.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .errors import Disconnected, PreconditionViolated
from .graph import BlockDecomposition, Edge, Graph, block_decomposition, edge_key, is_connected
from .outerplanar import boundary_cycle
from .pyramids import counts_from_triangles
from .twotree import Peo
from .vertex_pruning import BlueState, G1Instance, blue_degrees


@dataclass(frozen=True)
class Ends:
    """One endpoint assignment: the path runs u -> x; v and w are the
    other neighbours of s and t."""

    u: int
    v: int
    x: int
    w: int
    types: tuple[int, ...] = ()


@dataclass
class EdgeClassTable:
    separator: set[Edge]
    non_separator: set[Edge]
    left_ns: dict[int, Edge]
    right_ns: dict[int, Edge]
    star_vertices: set[int]
    forced_stars: set[int]
    double_forced_stars: set[int]
    left_sep: dict[tuple[int, Edge], Edge] = field(default_factory=dict)
    right_sep: dict[tuple[int, Edge], Edge] = field(default_factory=dict)
    cycle: list[int] = field(default_factory=list)
    triangles: list[tuple[int, int, int]] = field(default_factory=list)

    def is_separator(self, a: int, b: int) -> bool:
        return edge_key(a, b) in self.separator

    @property
    def cycle_pos(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.cycle)}


def classify_edges(inst: G1Instance) -> EdgeClassTable:
    return classify_graph(inst.graph, inst.blue, inst.sigma)


def classify_graph(g: Graph, blue: BlueState, sigma: Peo) -> EdgeClassTable:
    pos = sigma.position
    if len(g) < 3:
        ns = set(g.edges())
        return EdgeClassTable(set(), ns, {}, {}, set(), set(), set(), cycle=sorted(g.adj))
    adj = g.adj
    tris = []
    for v in sigma.order[:-2]:
        pv = pos[v]
        a, b = [z for z in adj[v] if pos[z] > pv]
        tris.append((v, a, b))
    counts = counts_from_triangles(g, tris)
    if max(counts.values()) > 2:
        raise PreconditionViolated("G1 must be 3-pyramid-free")
    sep = {e for e, c in counts.items() if c >= 2}
    nsep = set(counts) - sep
    ns_nbrs: dict[int, list[int]] = {v: [] for v in g.adj}
    for a, b in nsep:
        ns_nbrs[a].append(b)
        ns_nbrs[b].append(a)
    left_ns, right_ns = {}, {}
    for v, nb in ns_nbrs.items():
        if len(nb) != 2:
            raise PreconditionViolated(f"vertex {v} has {len(nb)} non-separator edges")
        lo, hi = sorted(nb, key=pos.__getitem__)
        left_ns[v] = edge_key(v, lo)
        right_ns[v] = edge_key(v, hi)
    stars = {v for v, ns in g.adj.items() if len(ns) >= 5}
    forced = {v for v in stars if left_ns[v] in blue.blue_edges}
    # forced-ness propagates along separator edges to later star vertices
    frontier = sorted(forced, key=pos.__getitem__)
    while frontier:
        v = frontier.pop()
        for w in g.adj[v]:
            if w in stars and w not in forced and pos[w] > pos[v] and edge_key(v, w) in sep:
                forced.add(w)
                frontier.append(w)
    double = {v for v in forced if right_ns[v] in blue.blue_edges}
    left_sep, right_sep = {}, {}
    for y in stars:
        seps = sorted((w for w in g.adj[y] if edge_key(y, w) in sep), key=pos.__getitem__)
        for i, w in enumerate(seps):
            e = edge_key(y, w)
            if e not in blue.blue_edges:
                continue
            if i > 0:
                left_sep[y, e] = edge_key(y, seps[i - 1])
            if i + 1 < len(seps):
                right_sep[y, e] = edge_key(y, seps[i + 1])
    return EdgeClassTable(
        sep, nsep, left_ns, right_ns, stars, forced, double, left_sep, right_sep,
        boundary_cycle(g, counts), tris,
    )


def fan_orders(table: EdgeClassTable, centres: Iterable[int]) -> dict[int, list[int]]:
    """Neighbours of each centre in the order they wrap around it.

    The neighbourhood of a vertex of a triangulated polygon induces a path;
    its edges are the far sides of the triangles at that vertex.
    """
    want = set(centres)
    link: dict[int, dict[int, list[int]]] = {c: {} for c in want}
    for tri in table.triangles:
        for k in range(3):
            c = tri[k]
            if c in want:
                a, b = tri[k - 1], tri[k - 2]
                link[c].setdefault(a, []).append(b)
                link[c].setdefault(b, []).append(a)
    out = {}
    for c, lk in link.items():
        ends = sorted(z for z, nb in lk.items() if len(nb) == 1)
        if not ends:
            out[c] = sorted(lk)
            continue
        order = [ends[0]]
        prev = None
        while True:
            nxt = [z for z in lk[order[-1]] if z != prev]
            if not nxt:
                break
            prev = order[-1]
            order.append(nxt[0])
        out[c] = order
    return out


def maximal_blue_paths(g: Graph, blue: BlueState) -> list[tuple[int, ...]]:
    """Components of the blue graph (max degree 2, acyclic) as paths,
    each starting from its smaller end."""
    badj = blue.blue_adj(g)
    seen: set[int] = set()
    out = []
    for v in sorted(badj):
        if v in seen or len(badj[v]) != 1:
            continue
        path = [v]
        seen.add(v)
        while True:
            nxt = [w for w in badj[path[-1]] if w not in seen]
            if not nxt:
                break
            path.append(nxt[0])
            seen.add(nxt[0])
        out.append(tuple(path))
    return out


def _sigma_oriented(path: tuple[int, ...], pos: dict[int, int]) -> tuple[int, ...]:
    return path if pos[path[0]] <= pos[path[-1]] else path[::-1]


def compute_e1(inst: G1Instance, table: EdgeClassTable) -> set[Edge]:
    g, blue = inst.graph, inst.blue
    bd = blue_degrees(blue, g)
    out = set()
    for v, d in bd.items():
        if d == 2:
            for w in g.adj[v]:
                e = edge_key(v, w)
                if e not in blue.blue_edges:
                    out.add(e)
    return out


def compute_e2(inst: G1Instance, table: EdgeClassTable) -> dict[Edge, str]:
    """Separator edges at y that cannot sit next to y's blue separator edge.

    Positions are taken in the fan around y.  Only the ``E2a`` part is
    emitted; the companion rules on left(y) and right(y) remove edges that
    some covering paths need.
    """
    g, blue = inst.graph, inst.blue
    centres = {}
    for e in blue.blue_edges:
        if e in table.separator:
            for y, vj in (e, e[::-1]):
                centres.setdefault(y, []).append(vj)
    fans = fan_orders(table, centres)
    out: dict[Edge, str] = {}
    for y, anchors in centres.items():
        at = {z: i for i, z in enumerate(fans[y])}
        for vj in anchors:
            j = at[vj]
            for vl in g.adj[y]:
                f = edge_key(y, vl)
                if f in table.separator and f not in blue.blue_edges and abs(at[vl] - j) > 1:
                    out.setdefault(f, "E2a")
    return out


def _side(cpos: dict[int, int], a: int, b: int, z: int) -> bool:
    """Which side of the chord ab the vertex z lies on."""
    lo, hi = sorted((cpos[a], cpos[b]))
    return lo < cpos[z] < hi


def compute_e3(inst: G1Instance, table: EdgeClassTable, ends: Ends) -> dict[Edge, str]:
    """Edges stepping from a blue path's end straight back onto one of its
    separator edges, on the u side (right of v_i) or the x side (left of v_j)."""
    g, blue = inst.graph, inst.blue
    pos = inst.sigma.position
    cpos = table.cycle_pos
    u, x = ends.u, ends.x
    out: dict[Edge, str] = {}
    for path in maximal_blue_paths(g, blue):
        if len(path) <= 2:
            continue
        path = _sigma_oriented(path, pos)
        vi, vj = path[0], path[-1]
        for a, b in zip(path, path[1:]):
            if edge_key(a, b) not in table.separator or {a, b} & {u, x}:
                continue
            if vi not in (a, b) and _side(cpos, a, b, vi) == _side(cpos, a, b, u):
                r = table.right_ns[vi]
                if r not in blue.blue_edges and set(r) & {a, b}:
                    out.setdefault(r, "E3")
            if vj not in (a, b) and _side(cpos, a, b, vj) == _side(cpos, a, b, x):
                l = table.left_ns[vj]
                if l not in blue.blue_edges and set(l) & {a, b}:
                    out.setdefault(l, "E3")
    return out


def boundary_arcs(table: EdgeClassTable, v1: int, vk: int) -> tuple[list[int], list[int]]:
    """The two v1-vk paths of the boundary cycle, each from v1 to vk."""
    cyc = table.cycle
    k = cyc.index(v1)
    ring = cyc[k:] + cyc[:k]
    h = ring.index(vk)
    return ring[: h + 1], [v1, *reversed(ring[h:])]


def compute_e4(inst: G1Instance, table: EdgeClassTable) -> dict[Edge, str]:
    g, blue = inst.graph, inst.blue
    if len(g) < 3:
        return {}
    pos = inst.sigma.position
    v1, vk = inst.sigma[0], inst.sigma[len(inst.sigma) - 1]
    arcs = []
    for w2 in boundary_arcs(table, v1, vk):
        arcs.append((w2, {z: k for k, z in enumerate(w2)}))
    out: dict[Edge, str] = {}
    for path in maximal_blue_paths(g, blue):
        if len(path) <= 2:
            continue
        if any(edge_key(a, b) in table.separator for a, b in zip(path, path[1:])):
            continue
        path = _sigma_oriented(path, pos)
        vi, vj = path[0], path[-1]
        ni, nj = g.adj[vi], g.adj[vj]
        for w2, idx in arcs:
            if any(z in idx for z in path) or any(z in idx for z in ni & nj):
                continue
            # only W2 edges touching N(vi) or N(vj) can qualify
            cand = set()
            for z in ni | nj:
                k = idx.get(z)
                if k is None:
                    continue
                if k > 0:
                    cand.add((w2[k - 1], z))
                if k + 1 < len(w2):
                    cand.add((z, w2[k + 1]))
            for a, b in sorted(cand):
                f = edge_key(a, b)
                if f in blue.blue_edges:
                    continue
                vp, vq = (a, b) if pos[a] < pos[b] else (b, a)
                if vp in ni and vq not in ni:
                    out.setdefault(f, "E4'")
                if vq in nj and vp not in nj:
                    out.setdefault(f, "E4''")
    return out


class _Blocks:
    """Block structure of a graph that only loses edges.

    When edges leave a block, only that block is decomposed again; the
    rest of the graph keeps its blocks.
    """

    def __init__(self, g: Graph):
        self.g = g
        dec = block_decomposition(g)
        self.edge_block = dict(dec.edge_block)
        self.verts: dict[int, set[int]] = {i: set(b) for i, b in enumerate(dec.blocks)}
        self.edges: dict[int, set[Edge]] = {i: set() for i in self.verts}
        for e, i in self.edge_block.items():
            self.edges[i].add(e)
        self.home: dict[int, set[int]] = {v: set() for v in g.adj}
        for i, vs in self.verts.items():
            for v in vs:
                self.home[v].add(i)
        self.next_id = len(self.verts)

    def is_cut(self, v: int) -> bool:
        return len(self.home[v]) > 1

    def remove(self, edges: list[Edge]) -> set[int] | None:
        """Drop edges and rebuild the blocks they came from.

        Returns the vertices of the rebuilt blocks, or None once the graph
        falls apart (a block whose edges no longer hang together cannot be
        bridged by the rest of the graph).
        """
        touched = set()
        for e in edges:
            self.g.remove_edge(*e)
            i = self.edge_block.pop(e)
            self.edges[i].discard(e)
            touched.add(i)
        changed: set[int] = set()
        for i in sorted(touched):
            vs = self.verts.pop(i)
            es = self.edges.pop(i)
            changed |= vs
            for v in vs:
                self.home[v].discard(i)
            try:
                dec = block_decomposition(Graph(es, vs))
            except Disconnected:
                return None
            for blk in dec.blocks:
                k = self.next_id
                self.next_id += 1
                self.verts[k] = set(blk)
                self.edges[k] = set()
                for v in blk:
                    self.home[v].add(k)
            base = self.next_id - len(dec.blocks)
            for e, j in dec.edge_block.items():
                self.edge_block[e] = base + j
                self.edges[base + j].add(e)
        return changed

    def decomposition(self) -> BlockDecomposition:
        ids = sorted(self.verts, key=lambda i: (min(self.verts[i]), len(self.verts[i]), sorted(self.verts[i])))
        renum = {i: k for k, i in enumerate(ids)}
        return BlockDecomposition(
            [frozenset(self.verts[i]) for i in ids],
            {v for v, h in self.home.items() if len(h) > 1},
            {e: renum[i] for e, i in self.edge_block.items()},
        )


def compute_e5(
    inst: G1Instance, table: EdgeClassTable, pruned: Graph, ends: Ends
) -> tuple[list[tuple[Edge, str]], Graph, BlockDecomposition | None]:
    """Removal sequence of E5 applied to a copy of ``pruned``.

    Works in rounds: find every non-blue edge with one of the four
    properties in the current graph, drop them all in ascending key order,
    repeat.  Each qualifying edge is unusable by every covering path of the
    current graph, so dropping a whole round at once is as safe as one at
    a time.  Only vertices near a change are re-examined.

    Also returns the pruned graph and, if it is still connected, its blocks.
    """
    g = pruned.copy()
    if len(g) < 2 or not is_connected(g):
        return [], g, None
    blocks = _Blocks(g)
    adj = g.adj
    blue = inst.blue.blue_edges
    bd1 = blue_degrees(inst.blue, inst.graph)
    deg1 = {v: len(ns) for v, ns in inst.graph.adj.items()}
    partner = {}
    for p, r in ((ends.x, ends.w), (ends.u, ends.v)):
        if bd1[r] == 2:
            partner[p] = (r, "E5-i")
        elif bd1[r] == 1 and bd1[p] == 1 and deg1[p] == 2:
            partner[p] = (r, "E5-ii")
    endpoints = {ends.u, ends.x}
    edge_block = blocks.edge_block
    order: list[tuple[Edge, str]] = []
    check = set(adj)
    while check:
        hits: dict[Edge, str] = {}
        for p in sorted(check):
            nb = adj[p]
            anchors: dict[int, list[tuple[int, str]]] = {}
            if p in partner:
                r, why = partner[p]
                if r in nb:
                    anchors.setdefault(edge_block[edge_key(p, r)], []).append((r, why))
            if blocks.is_cut(p):
                for r in nb:
                    pr = edge_key(p, r)
                    if pr in blue:
                        why = "E5-iv"
                    elif len(adj[r]) == 2 and r not in endpoints:
                        why = "E5-iii"
                    else:
                        continue
                    anchors.setdefault(edge_block[pr], []).append((r, why))
            if not anchors:
                continue
            for q in nb:
                e = edge_key(p, q)
                if e in blue:
                    continue
                for r, why in anchors.get(edge_block[e], ()):
                    if r != q:
                        hits.setdefault(e, why)
                        break
        if not hits:
            break
        drop = sorted(hits)
        order.extend((e, hits[e]) for e in drop)
        changed = blocks.remove(drop)
        if changed is None:
            return order, g, None
        check = changed
        for e in drop:
            for z in e:
                check.add(z)
                check.update(adj[z])
    return order, g, blocks.decomposition()


@dataclass
class PruneSets:
    e1: set[Edge] = field(default_factory=set)
    e2: set[Edge] = field(default_factory=set)
    e3: set[Edge] = field(default_factory=set)
    e4: set[Edge] = field(default_factory=set)
    e5: list[Edge] = field(default_factory=list)
    provenance: dict[Edge, str] = field(default_factory=dict)

    def all_edges(self) -> set[Edge]:
        return self.e1 | self.e2 | self.e3 | self.e4 | set(self.e5)

    def dump(self) -> list[str]:
        """``<a> <b> <rule-id>`` per pruned edge, E5 in removal order."""
        lines = []
        for e in sorted(self.e1 | self.e2 | self.e3 | self.e4):
            lines.append(f"{e[0]} {e[1]} {self.provenance[e]}")
        for e in self.e5:
            lines.append(f"{e[0]} {e[1]} {self.provenance[e]}")
        return lines


@dataclass
class G2Instance:
    graph: Graph
    blue: BlueState
    sigma: Peo
    class_table: EdgeClassTable
    ends: Ends
    g1: G1Instance
    blocks: BlockDecomposition | None = None


def build_g2(inst: G1Instance, ends: Ends, table: EdgeClassTable | None = None) -> tuple[G2Instance, PruneSets]:
    if table is None:
        table = classify_edges(inst)
    sets = PruneSets()
    prov = sets.provenance
    sets.e1 = compute_e1(inst, table)
    for e in sets.e1:
        prov[e] = "E1"
    for name, found in (
        ("e2", compute_e2(inst, table)),
        ("e3", compute_e3(inst, table, ends)),
        ("e4", compute_e4(inst, table)),
    ):
        fresh = {e for e in found if e not in prov}
        setattr(sets, name, fresh)
        for e in fresh:
            prov[e] = found[e]
    g = inst.graph.copy()
    for e in prov:
        g.remove_edge(*e)
    removed, g, blocks = compute_e5(inst, table, g, ends)
    for e, why in removed:
        sets.e5.append(e)
        prov[e] = why
    return G2Instance(g, inst.blue, inst.sigma, table, ends, inst, blocks), sets
