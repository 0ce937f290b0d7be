"""Exponential-time ground truth for Hamiltonian paths and cycles.

Used by the test-suite and ``twotree-hp verify``; independent of the
pruning pipeline in every respect except the :class:`Graph` type.
"""

from __future__ import annotations

import enum
import itertools
import os
from collections.abc import Collection, Iterable
from dataclasses import dataclass, field

from .errors import TooLarge
from .graph import Edge, Graph, components, edge_key

DEFAULT_BOUND = 20


def oracle_bound() -> int:
    return int(os.environ.get("TT_ORACLE_MAX", DEFAULT_BOUND))


class Mode(enum.Enum):
    HP = "hp"
    HC = "hc"
    HP_BETWEEN = "hp-between"
    COVERING_HP = "covering-hp"


@dataclass
class OracleQuery:
    graph: Graph
    mode: Mode = Mode.HP
    ends: tuple[int, int] | None = None
    required: frozenset[Edge] = frozenset()
    # covering mode: each end may be restricted to a candidate set
    start_candidates: Collection[int] | None = None
    end_candidates: Collection[int] | None = None
    bound: int = field(default_factory=oracle_bound)


def solve(q: OracleQuery) -> list[int] | None:
    """Witness path/cycle (cycle without the repeated first vertex) or None."""
    g = q.graph
    if len(g) > q.bound:
        raise TooLarge(f"oracle bound {q.bound} < {len(g)} vertices")
    if q.mode is Mode.HP:
        return hamiltonian_path(g)
    if q.mode is Mode.HC:
        return hamiltonian_cycle(g)
    if q.mode is Mode.HP_BETWEEN:
        s, t = q.ends
        return hamiltonian_path(g, starts=[s], ends=[t])
    return hamiltonian_path(
        g, required=q.required, starts=q.start_candidates, ends=q.end_candidates
    )


def hamiltonian_path(
    g: Graph,
    required: Iterable[Edge] = (),
    starts: Collection[int] | None = None,
    ends: Collection[int] | None = None,
) -> list[int] | None:
    """Backtracking search for a Hamiltonian path.

    Every edge in ``required`` must be traversed; ``starts``/``ends`` restrict
    the two endpoints (the returned path runs start -> end).
    """
    n = len(g)
    if n == 0:
        return None
    if n == 1:
        (v,) = g.adj
        ok = (starts is None or v in starts) and (ends is None or v in ends)
        return [v] if ok and not list(required) else None
    req: dict[int, set[int]] = {v: set() for v in g.adj}
    for a, b in required:
        if not g.has_edge(a, b):
            return None
        req[a].add(b)
        req[b].add(a)
    if any(len(r) > 2 for r in req.values()):
        return None
    if len(components(g)) > 1:
        return None
    end_set = set(ends) if ends is not None else None
    for s in sorted(starts) if starts is not None else sorted(g.adj):
        if s not in g.adj or len(req[s]) > 1:
            continue
        found = _search(g, req, s, end_set)
        if found is not None:
            return found
    return None


def _search(g: Graph, req: dict[int, set[int]], start: int, end_set) -> list[int] | None:
    adj = g.adj
    n = len(adj)
    path = [start]
    visited = {start}

    def frontier_ok(cur: int) -> bool:
        # unvisited vertices must stay reachable from cur
        unvisited = n - len(visited)
        if unvisited == 0:
            return True
        seen = set()
        stack = [w for w in adj[cur] if w not in visited]
        seen.update(stack)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in visited and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == unvisited

    def rec(cur: int, prev: int | None) -> bool:
        pending = [r for r in req[cur] if r != prev]
        if len(visited) == n:
            return not pending and (end_set is None or cur in end_set)
        if len(pending) > 1:
            return False
        if pending:
            options = pending if pending[0] not in visited else []
        else:
            options = sorted(w for w in adj[cur] if w not in visited)
        for w in options:
            # w is entered from cur; a required edge at w back to a visited
            # vertex other than cur can never be used
            if any(r in visited and r != cur for r in req[w]):
                continue
            visited.add(w)
            path.append(w)
            if frontier_ok(w) and rec(w, cur):
                return True
            path.pop()
            visited.discard(w)
        return False

    if any(r in visited for r in req[start] if r != start):
        return None
    return list(path) if rec(start, None) else None


def hamiltonian_cycle(g: Graph) -> list[int] | None:
    n = len(g)
    if n < 3:
        return None
    s = min(g.adj)
    for t in sorted(g.adj[s]):
        p = hamiltonian_path(g, starts=[s], ends=[t])
        if p is not None:
            return p
    return None


def covering_hp(
    g: Graph,
    required: Iterable[Edge],
    starts: Collection[int] | None = None,
    ends: Collection[int] | None = None,
) -> list[int] | None:
    return hamiltonian_path(g, required=required, starts=starts, ends=ends)


def all_covering_hps(
    g: Graph,
    required: Iterable[Edge] = (),
    starts: Collection[int] | None = None,
    ends: Collection[int] | None = None,
) -> list[list[int]]:
    """Every covering Hamiltonian path, each listed in both directions.

    Plain enumeration over permutations-by-DFS; only for small graphs.
    """
    req = {edge_key(a, b) for a, b in required}
    adj = g.adj
    n = len(adj)
    out: list[list[int]] = []
    path: list[int] = []
    visited: set[int] = set()

    def rec(cur: int) -> None:
        if len(path) == n:
            used = {edge_key(a, b) for a, b in zip(path, path[1:])}
            if req <= used and (ends is None or cur in ends):
                out.append(list(path))
            return
        for w in sorted(adj[cur]):
            if w not in visited:
                visited.add(w)
                path.append(w)
                rec(w)
                path.pop()
                visited.discard(w)

    for s in sorted(starts) if starts is not None else sorted(adj):
        visited.add(s)
        path.append(s)
        rec(s)
        path.pop()
        visited.discard(s)
    return out


def chvatal_check(g: Graph, max_subset: int | None = None) -> set[int] | None:
    """Smallest (then lexicographically first) S with c(G - S) > |S| + 1.

    Such an S rules out a Hamiltonian path.  Enumerates subsets up to
    ``max_subset`` elements (default: all proper subsets).
    """
    verts = sorted(g.adj)
    top = len(verts) - 1 if max_subset is None else min(max_subset, len(verts) - 1)
    for k in range(1, top + 1):
        for s in itertools.combinations(verts, k):
            if len(components(g, s)) > k + 1:
                return set(s)
    return None
