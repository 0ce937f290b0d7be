"""Decide and construct Hamiltonian paths of 2-trees.

Dispatch on the pyramid profile: 3-pyramid-free graphs have a Hamiltonian
cycle, one 3-pyramid still leaves a path through its base, a 4-pyramid rules
a path out, and everything else goes through the G0 -> G1 -> G2 pipeline.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from bisect import bisect_right

from .edge_pruning import (
    EdgeClassTable,
    Ends,
    G2Instance,
    PruneSets,
    build_g2,
    classify_edges,
    maximal_blue_paths,
)
from .errors import ConstructionFailed, NotTwoTree, PreconditionViolated
from .graph import (
    BlockDecomposition,
    Edge,
    Graph,
    block_decomposition,
    components,
    edge_key,
    is_connected,
)
from .outerplanar import boundary_cycle, covering_path, ring_from_ears
from .pyramids import (
    CaseLabel,
    classify,
    counts_from_triangles,
    pyramid_report,
    pyramid_report_from_counts,
)
from .twotree import ear_decomposition
from .vertex_pruning import (
    G0Instance,
    G1Instance,
    check_g1_conditions,
    check_h_family,
    check_g0_conditions,
    derive_g1,
    vertex_prune,
)


@dataclass(frozen=True)
class WitnessReason:
    """Why a graph has no Hamiltonian path, and at which stage."""

    kind: str
    detail: tuple = ()
    stage: str = ""

    def __str__(self) -> str:
        parts = []
        for d in self.detail:
            if isinstance(d, tuple):
                parts.append("-".join(map(str, d)))
            else:
                parts.append(str(d))
        return f"{self.kind}({', '.join(parts)})"


@dataclass(frozen=True)
class ConflictingPair:
    p1: tuple[int, ...]
    p2: tuple[int, ...]


@dataclass
class StageTrace:
    g0: G0Instance | None = None
    g1: G1Instance | None = None
    table: EdgeClassTable | None = None
    attempts: list[Attempt] = field(default_factory=list)


@dataclass
class Attempt:
    ends: Ends
    g2: G2Instance
    prune: PruneSets
    witness: WitnessReason | None = None
    fallback: bool = False


@dataclass
class HPResult:
    case: CaseLabel
    path: list[int] | None = None
    witness: WitnessReason | None = None
    trace: StageTrace | None = None

    @property
    def has_path(self) -> bool:
        return self.path is not None


def validate_path(g: Graph, p: Sequence[int]) -> bool:
    adj = g.adj
    if len(p) != len(adj) or set(p) != adj.keys():
        return False
    # adj[p[k]] contains p[k + 1] for every k
    return all(map(set.__contains__, map(adj.__getitem__, p[:-1]), p[1:]))


def hamiltonian_cycle_3pf(g: Graph) -> list[int]:
    if len(g.adj) < 3:
        raise PreconditionViolated("a Hamiltonian cycle needs at least 3 vertices")
    report = pyramid_report(g)
    if report.three_pyramid_edges or report.four_plus_edges:
        raise PreconditionViolated("graph has a 3-pyramid")
    return boundary_cycle(g, report.counts)


def _uv_interior(g: Graph, u: int, v: int) -> list[int]:
    """Vertices strictly between u and v on the u-v Hamiltonian path that
    the boundary cycle gives once the edge uv is dropped."""
    cyc = hamiltonian_cycle_3pf(g)
    k = cyc.index(u)
    ring = cyc[k:] + cyc[:k]
    if ring[1] == v:
        ring = [u, *reversed(ring[1:])]
    if ring[-1] != v:
        raise PreconditionViolated(f"{u}-{v} is not a boundary edge")
    return ring[1:-1]


def hp_one_pyramid(g: Graph, pyramid_edge: Edge) -> list[int]:
    u, v = pyramid_edge
    report = pyramid_report(g)
    if report.four_plus_edges or report.three_pyramid_edges != {edge_key(u, v)}:
        raise PreconditionViolated("expected exactly one 3-pyramid, on the given edge")
    comps = components(g, (u, v))
    if len(comps) != 3:
        raise PreconditionViolated(f"G - {{{u}, {v}}} has {len(comps)} components")
    inner = [_uv_interior(g.subgraph(c | {u, v}), u, v) for c in comps]
    return [*inner[0], v, *reversed(inner[1]), u, *inner[2]]


def endpoint_assignments(g1: G1Instance) -> list[Ends]:
    """(u, x) choices, one neighbour of s and one of t, matching some type."""
    bd = g1.blue_deg()
    deg = g1.graph.degree
    out = []
    for u in g1.s_nbrs:
        v = g1.s_nbrs[0] if g1.s_nbrs[1] == u else g1.s_nbrs[1]
        for x in g1.t_nbrs:
            w = g1.t_nbrs[0] if g1.t_nbrs[1] == x else g1.t_nbrs[1]
            if u == x:
                continue
            types = []
            if bd[v] == 2 and bd[w] == 2 and bd[u] == 1 and bd[x] == 1:
                types.append(1)
            if bd[u] == bd[v] == bd[w] == bd[x] == 1 and deg(u) == 2 and deg(x) == 2:
                types.append(2)
            if bd[v] == 2 and bd[u] == bd[w] == bd[x] == 1 and deg(x) == 2:
                types.append(3)
            if bd[w] == 2 and bd[u] == bd[v] == bd[x] == 1 and deg(u) == 2:
                types.append(4)
            if types:
                out.append(Ends(u, v, x, w, tuple(types)))
    return out


def find_conflicting_paths(inst: G2Instance) -> ConflictingPair | None:
    """First pair of separator-free maximal blue paths whose sigma ranges
    interleave without the closing edge."""
    g, table = inst.graph, inst.class_table
    pos = inst.sigma.position
    paths = []
    for p in maximal_blue_paths(g, inst.blue.restricted(g)):
        if any(edge_key(a, b) in table.separator for a, b in zip(p, p[1:])):
            continue
        paths.append(p if pos[p[0]] <= pos[p[-1]] else p[::-1])
    starts = sorted((pos[p[0]], k) for k, p in enumerate(paths))
    keys = [s for s, _ in starts]
    for p2 in paths:
        if len(p2) < 3:
            continue
        y, z = pos[p2[0]], pos[p2[-1]]
        vz = p2[-1]
        k = bisect_right(keys, y)
        # each skipped start is a neighbour of v_z, so this stays cheap
        while k < len(keys) and keys[k] < z:
            p1 = paths[starts[k][1]]
            if p1[0] not in g.adj[vz]:
                return ConflictingPair(p1, p2)
            k += 1
    return None


def check_g2_structure(inst: G2Instance) -> WitnessReason | None:
    """Structural conditions a G2 with a covering (u, x)-path must meet."""
    g = inst.graph
    dec = _blocks_of(inst)
    if dec is None:
        return WitnessReason("G2Disconnected", (), "G2")
    blocks, cuts = dec.blocks, dec.cuts
    seen_in: dict[int, int] = dict.fromkeys(cuts, 0)
    for blk in blocks:
        inside = [c for c in blk if c in seen_in]
        for c in inside:
            seen_in[c] += 1
        if len(inside) > 2:
            return WitnessReason("BlockCutCount", (tuple(sorted(blk)), len(inside)), "G2")
    for c in sorted(cuts):
        if seen_in[c] != 2:
            return WitnessReason("CutVertexComponents", (c, seen_in[c]), "G2")
    if inst.class_table.double_forced_stars:
        v = min(inst.class_table.double_forced_stars)
        return WitnessReason("DoubleForcedStar", (v,), "G1")
    for z in (inst.ends.u, inst.ends.x):
        if g.degree(z) != 1:
            return WitnessReason("EndpointDegree", (z, g.degree(z)), "G2")
    return None


def spanning_path(block: Graph, blue: set[Edge], p: int, q: int, pos: dict[int, int]) -> list[int] | None:
    """Greedy (p, q)-path through a block: take the blue edge at p, or else
    the lowest-ranked neighbour, then follow the chain of vertices this
    leaves with a single way forward.  None if the walk gets stuck."""
    d = block.copy()
    adj = d.adj
    path = [p]
    while True:
        if len(adj) == 1:
            return path if p == q else None
        if len(adj) == 2 and q in adj[p]:
            return [*path, q]
        nb = adj[p]
        if not nb:
            return None
        bl = [j for j in nb if edge_key(p, j) in blue]
        if len(bl) > 1:
            return None
        j = bl[0] if bl else min(nb, key=pos.__getitem__)
        cur, nxt = p, j
        while True:
            d.remove_vertex(cur)
            path.append(nxt)
            cur = nxt
            if cur == q or len(adj[cur]) != 1:
                break
            (nxt,) = adj[cur]
        if cur == q:
            return path if len(adj) == 1 else None
        p = cur


def _blocks_of(inst: G2Instance) -> BlockDecomposition | None:
    if inst.blocks is None and is_connected(inst.graph):
        inst.blocks = block_decomposition(inst.graph)
    return inst.blocks


def _block_chain(dec: BlockDecomposition, u: int, x: int) -> list[tuple[frozenset[int], int, int]] | None:
    blocks, cuts = dec.blocks, dec.cuts
    home: dict[int, list[int]] = {}
    for k, blk in enumerate(blocks):
        for z in blk:
            if z in cuts or z == u or z == x:
                home.setdefault(z, []).append(k)
    if len(home.get(u, ())) != 1:
        return None
    cur, entry, used, chain = home[u][0], u, set(), []
    while True:
        used.add(cur)
        blk = blocks[cur]
        if x in blk:
            if len(used) != len(blocks):
                return None
            chain.append((blk, entry, x))
            return chain
        exits = [c for c in blk if c in cuts and c != entry]
        if len(exits) != 1:
            return None
        (c,) = exits
        chain.append((blk, entry, c))
        nxt = [k for k in home[c] if k not in used]
        if len(nxt) != 1:
            return None
        cur, entry = nxt[0], c


def _covers(p: Sequence[int], g: Graph, u: int, x: int, blue: set[Edge]) -> bool:
    if not p or p[0] != u or p[-1] != x or not validate_path(g, p):
        return False
    used = {edge_key(a, b) for a, b in zip(p, p[1:])}
    return blue <= used


def g2_path(inst: G2Instance) -> tuple[list[int] | None, bool]:
    """A (u, x)-path of G2 through every blue edge, and whether the exact
    search had to take over from the greedy block walk."""
    g = inst.graph
    u, x = inst.ends.u, inst.ends.x
    blue = {e for e in inst.blue.blue_edges if g.has_edge(*e)}
    pos = inst.sigma.position
    if pos[u] > pos[x]:
        pos = {z: -i for z, i in pos.items()}
    dec = _blocks_of(inst)
    chain = _block_chain(dec, u, x) if dec is not None else None
    if chain is not None:
        path = [u]
        for blk, a, b in chain:
            piece = spanning_path(g.subgraph(blk), blue, a, b, pos)
            if piece is None:
                break
            path.extend(piece[1:])
        else:
            if _covers(path, g, u, x, blue):
                return path, False
    path = covering_path(g, inst.class_table.cycle, u, x, blue)
    return path, True


def assemble_and_expand(g: Graph, inst: G2Instance, r: Sequence[int]) -> list[int]:
    """Replace blue edges of r by their labels and wrap with s and t."""
    g1 = inst.g1
    blue0 = g1.g0.blue
    e = inst.ends
    out = [*blue0.label(e.v, g1.s), g1.s, *blue0.label(g1.s, e.u)]
    out.append(r[0])
    for a, b in zip(r, r[1:]):
        out.extend(blue0.label(a, b))
        out.append(b)
    out.extend((*blue0.label(e.x, g1.t), g1.t, *blue0.label(g1.t, e.w)))
    if not validate_path(g, out):
        raise ConstructionFailed(f"expanded path fails validation for ends {e.u}, {e.x}")
    return out


def _g0_reason(w) -> WitnessReason:
    if w.condition == "degree-two-count":
        return WitnessReason("G0DegreeTwoCount", (len(w.vertices),), "G0")
    if w.condition == "blue-degree":
        return WitnessReason("G0BlueDegree", w.vertices, "G0")
    return WitnessReason("G0NeighborCondition", w.vertices, "G0")


def _g1_reason(w) -> WitnessReason:
    kind = {"blue-degree": "G1BlueDegree", "neighbour-pair": "G1NeighborCondition", "cycle": "BlueCycle"}[w.kind]
    return WitnessReason(kind, w.vertices, "G1")


def _pipeline(g: Graph, case: CaseLabel) -> HPResult:
    trace = StageTrace()
    g0 = vertex_prune(g, checked=True)
    trace.g0 = g0
    w = check_g0_conditions(g0)
    if w is not None:
        return HPResult(case, witness=_g0_reason(w), trace=trace)
    h = check_h_family(g0)
    if h.witness:
        return HPResult(case, witness=WitnessReason("NotInHFamily", (), "G0"), trace=trace)
    g1 = derive_g1(g0)
    trace.g1 = g1
    w = check_g1_conditions(g1)
    if w is not None:
        return HPResult(case, witness=_g1_reason(w), trace=trace)
    table = classify_edges(g1)
    trace.table = table
    last = WitnessReason("EndpointAssignmentExhausted", (), "G1")
    for ends in endpoint_assignments(g1):
        g2, sets = build_g2(g1, ends, table)
        att = Attempt(ends, g2, sets)
        trace.attempts.append(att)
        att.witness = check_g2_structure(g2)
        if att.witness is not None:
            last = att.witness
            continue
        r, att.fallback = g2_path(g2)
        if r is None:
            pair = find_conflicting_paths(g2)
            if pair is not None:
                att.witness = WitnessReason("ConflictingPaths", (pair.p1, pair.p2), "G2")
            else:
                att.witness = WitnessReason("EndpointAssignmentExhausted", (ends.u, ends.x), "G2")
            last = att.witness
            continue
        return HPResult(case, path=assemble_and_expand(g, g2, r), trace=trace)
    return HPResult(case, witness=last, trace=trace)


def hamiltonian_path(g: Graph) -> HPResult:
    dec = ear_decomposition(g)
    if dec is None:
        raise NotTwoTree(f"{g!r} is not a 2-tree")
    tris, last = dec
    ring = ring_from_ears(tris, last)
    if ring is not None:
        case = CaseLabel.THREE_PYRAMID_FREE
        path = ring
    else:
        report = pyramid_report_from_counts(counts_from_triangles(g, tris))
        case = classify(report)
        if case is CaseLabel.HAS_FOUR_PYRAMID:
            edge = min(report.four_plus_edges)
            return HPResult(case, witness=WitnessReason("FourPyramid", (edge,), "G"))
        if case is CaseLabel.EXACTLY_ONE_THREE_PYRAMID:
            (e,) = report.three_pyramid_edges
            path = hp_one_pyramid(g, e)
        else:
            result = _pipeline(g, case)
            if result.path is None:
                return result
            path = result.path
    if not validate_path(g, path):
        raise ConstructionFailed("constructed path fails validation")
    if case is CaseLabel.TWO_PLUS_THREE_PYRAMIDS:
        return result
    return HPResult(case, path=path)
