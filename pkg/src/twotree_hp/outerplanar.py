"""Boundary-cycle tools for 3-pyramid-free 2-trees and their subgraphs.

A 3-pyramid-free 2-tree is a triangulated polygon: its count-1 edges form
the boundary cycle and every other edge is a chord.  Any spanning subgraph
inherits that drawing, so a Hamiltonian p-q path in it never crosses
itself and the set of vertices it has visited is always one contiguous
stretch of the cycle around p.  Writing A and B for the two boundary arcs
from p to q, the path is a shuffle of A and B that only jumps between them
along chords a_i b_j.  ``covering_path`` searches those shuffles.
"""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Collection

from .errors import PreconditionViolated
from .graph import Edge, Graph, edge_key


def boundary_cycle(g: Graph, counts: dict[Edge, int]) -> list[int]:
    """Vertices of g in boundary order, from the count-1 edges.

    Starts at the smallest id and steps to its smaller boundary neighbour.
    """
    n = len(g.adj)
    if n <= 2:
        return sorted(g.adj)
    ring: dict[int, list[int]] = {v: [] for v in g.adj}
    for (a, b), c in counts.items():
        if c == 1:
            ring[a].append(b)
            ring[b].append(a)
    start = min(g.adj)
    if len(ring[start]) != 2:
        raise PreconditionViolated("count-1 edges do not form a cycle")
    order = [start]
    prev, cur = start, min(ring[start])
    while cur != start:
        nb = ring[cur]
        if len(nb) != 2:
            raise PreconditionViolated("count-1 edges do not form a cycle")
        order.append(cur)
        prev, cur = cur, (nb[0] if nb[1] == prev else nb[1])
        if len(order) > n:
            break
    if len(order) != n:
        raise PreconditionViolated("count-1 edges do not form a single cycle")
    return order


def ring_from_ears(tris: list[tuple[int, int, int]], last: tuple[int, int]) -> list[int] | None:
    """Boundary cycle of a 3-pyramid-free 2-tree from an ear decomposition,
    or None if the graph has a 3-pyramid.

    Rebuilding the graph ear by ear, each new vertex must land on a boundary
    edge; landing on a chord gives that chord a third triangle.  The cycle
    is reported like ``boundary_cycle`` does.
    """
    a, b = last
    nxt = {a: b, b: a}
    for v, x, y in reversed(tris):
        if nxt[x] == y:
            nxt[x] = v
            nxt[v] = y
        elif nxt[y] == x:
            nxt[y] = v
            nxt[v] = x
        else:
            return None
    start = min(nxt)
    order = [start]
    cur = nxt[start]
    while cur != start:
        order.append(cur)
        cur = nxt[cur]
    if len(order) > 2 and order[-1] < order[1]:
        order[1:] = order[:0:-1]
    return order


def covering_path(
    g: Graph, cycle: list[int], p: int, q: int, required: Collection[Edge] = ()
) -> list[int] | None:
    """A p-q Hamiltonian path of g through every required edge, or None.

    ``cycle`` lists g's vertices in the boundary order of a triangulated
    polygon that contains g.  Runs in O(m log m).
    """
    n = len(cycle)
    if p == q:
        return [p] if n == 1 and not required else None
    k = cycle.index(p)
    ring = cycle[k:] + cycle[:k]
    h = ring.index(q)
    A = [p, *ring[1:h], q]
    B = [p, *reversed(ring[h + 1 :]), q]
    P, Q = len(A) - 2, len(B) - 2
    adj = g.adj
    ia = {A[i]: i for i in range(1, P + 1)}
    ib = {B[j]: j for j in range(1, Q + 1)}
    req = {edge_key(a, b) for a, b in required}

    okA = [A[i + 1] in adj[A[i]] for i in range(P + 1)]
    okB = [B[j + 1] in adj[B[j]] for j in range(Q + 1)]
    reqA = [edge_key(A[i], A[i + 1]) in req for i in range(P + 1)]
    reqB = [edge_key(B[j], B[j + 1]) in req for j in range(Q + 1)]
    on_arc = {edge_key(A[i], A[i + 1]) for i in range(P + 1)}
    on_arc.update(edge_key(B[j], B[j + 1]) for j in range(Q + 1))

    # a required chord a_i b_j must be the jump made when the path has
    # visited exactly i + j + 1 vertices; two on one level cannot both be
    forced: dict[int, Edge] = {}
    for e in req:
        if e in on_arc:
            continue
        a, b = e
        if a in ia and b in ib:
            lv = ia[a] + ib[b]
        elif b in ia and a in ib:
            lv = ia[b] + ib[a]
        else:
            return None
        if lv in forced or not g.has_edge(a, b):
            return None
        forced[lv] = e
    levels = sorted(forced)

    def last_forced_below(lv: int) -> int:
        x = bisect_left(levels, lv)
        return levels[x - 1] if x else -1

    # rsA[i]: first index of the unbroken A-run ending at a_i
    rsA = [0] * (P + 2)
    for i in range(1, P + 2):
        rsA[i] = rsA[i - 1] if okA[i - 1] else i
    rsB = [0] * (Q + 2)
    for j in range(1, Q + 2):
        rsB[j] = rsB[j - 1] if okB[j - 1] else j

    # jump events: kind 0 = from b_x into a_y, kind 1 = from a_x into b_y.
    ev_kind: list[int] = [0, 1]
    ev_from: list[int] = [0, 0]
    ev_to: list[int] = [0, 0]
    ev_parent: list[int] = [-1, -1]
    # into_a[j]: (targets s, event ids) of jumps b_j -> a_s, s ascending
    into_a: list[tuple[list[int], list[int]]] = [([], []) for _ in range(Q + 1)]
    into_b: list[tuple[list[int], list[int]]] = [([], []) for _ in range(P + 1)]
    into_a[0][0].append(0)
    into_a[0][1].append(0)
    into_b[0][0].append(0)
    into_b[0][1].append(1)

    buckets: list[list[tuple[int, int]]] = [[] for _ in range(P + Q + 1)]
    for i in range(1, P + 1):
        for w in adj[A[i]]:
            j = ib.get(w)
            if j is not None:
                buckets[i + j].append((i, j))
    if P + Q >= 1:
        if Q >= 1 and okB[0]:
            buckets[1].append((0, 1))
        if P >= 1 and okA[0]:
            buckets[1].append((1, 0))

    def find(lst: tuple[list[int], list[int]], lo: int, hi: int) -> int:
        ss, ids = lst
        x = bisect_left(ss, lo)
        return ids[x] if x < len(ss) and ss[x] <= hi else -1

    for lv in range(1, P + Q + 1):
        if not buckets[lv]:
            continue
        must = forced.get(lv)
        floor = last_forced_below(lv)
        for i, j in sorted(buckets[lv]):
            if must is not None and edge_key(A[i], B[j]) != must:
                continue
            # a_i -> b_j: leaves a_i off its arc and enters b_j mid-arc
            if j >= 1 and (i >= 1 or j == 1) and not reqA[i] and (
                (i, j) == (0, 1) or not reqB[j - 1]
            ):
                src = find(into_a[j - 1], max(rsA[i], floor - (j - 1)), i)
                if src >= 0:
                    ev_kind.append(1)
                    ev_from.append(i)
                    ev_to.append(j)
                    ev_parent.append(src)
                    into_b[i][0].append(j)
                    into_b[i][1].append(len(ev_kind) - 1)
            # b_j -> a_i
            if i >= 1 and (j >= 1 or i == 1) and not reqB[j] and (
                (i, j) == (1, 0) or not reqA[i - 1]
            ):
                src = find(into_b[i - 1], max(rsB[j], floor - (i - 1)), j)
                if src >= 0:
                    ev_kind.append(0)
                    ev_from.append(j)
                    ev_to.append(i)
                    ev_parent.append(src)
                    into_a[j][0].append(i)
                    into_a[j][1].append(len(ev_kind) - 1)

    top = levels[-1] if levels else -1
    end = -1
    if okA[P] and not reqB[Q]:
        end = find(into_a[Q], max(rsA[P], top - Q), P)
    if end < 0 and okB[Q] and not reqA[P]:
        end = find(into_b[P], max(rsB[Q], top - P), Q)
    if end < 0:
        return None

    chain = []
    while end >= 0:
        chain.append(end)
        end = ev_parent[end]
    chain.reverse()
    path = [p]
    for pos, ev in enumerate(chain):
        nxt = chain[pos + 1] if pos + 1 < len(chain) else -1
        arc, last = (A, P) if ev_kind[ev] == 0 else (B, Q)
        stop = ev_from[nxt] if nxt >= 0 else last
        start = ev_to[ev]
        path.extend(arc[max(start, 1) : stop + 1])
    path.append(q)
    return path
