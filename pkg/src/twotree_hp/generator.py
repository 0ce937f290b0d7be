"""Seeded random and exhaustive 2-tree generation.

Randomness comes from SplitMix64 so a (seed, n, profile) triple names the
same graph in any language: draw ``x = next()`` and take ``x % m`` for a
choice among m items.  Except in the strip profiles, vertex k is the k-th
vertex added, attached to the chosen edge of the current 2-tree (vertices
0, 1 form the seed edge).  Strip instances are built in a fixed layout and
then relabelled by a seeded shuffle, so ids carry no structure.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass

from .errors import InfeasibleProfile, TooLarge
from .graph import Graph

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        return self.next() % m


@dataclass(frozen=True)
class Profile:
    """One of: any, 3pf, force3:<k>, force4, strip, strip-hp."""

    kind: str
    k: int = 0

    @classmethod
    def parse(cls, text: str) -> Profile:
        text = text.strip().lower()
        if text in ("any", "3pf", "force4", "strip", "strip-hp"):
            return cls(text)
        m = re.fullmatch(r"force3:(\d+)", text)
        if m:
            return cls("force3", int(m.group(1)))
        raise ValueError(f"unknown profile {text!r}")

    def __str__(self) -> str:
        return f"force3:{self.k}" if self.kind == "force3" else self.kind


ANY = Profile("any")
THREE_PYRAMID_FREE = Profile("3pf")
FORCE_FOUR = Profile("force4")
STRIP = Profile("strip")
STRIP_HP = Profile("strip-hp")


def force_three(k: int) -> Profile:
    return Profile("force3", k)


@dataclass(frozen=True)
class GenSpec:
    n: int
    seed: int = 0
    profile: Profile = ANY

    def check(self) -> None:
        if self.n < 2:
            raise InfeasibleProfile("a 2-tree needs at least 2 vertices")
        p = self.profile
        if p.kind == "force3" and p.k > 0 and self.n < 5 + 2 * (p.k - 1):
            raise InfeasibleProfile(f"{p} needs n >= {5 + 2 * (p.k - 1)}")
        if p.kind == "force4" and self.n < 6:
            raise InfeasibleProfile("force4 needs n >= 6")
        if p.kind in ("strip", "strip-hp") and self.n < STRIP_MIN:
            raise InfeasibleProfile(f"{p} needs n >= {STRIP_MIN}")


class _Builder:
    """Growing 2-tree with per-edge triangle counts and sampling pools.

    Pools hold edge indices bucketed by triangle count (0/1, 2, >=3) with
    swap-remove so every growth step is O(1).
    """

    def __init__(self, rng: SplitMix64):
        self.rng = rng
        self.ends: list[tuple[int, int]] = [(0, 1)]
        self.count: list[int] = [0]
        self.pools: list[list[int]] = [[0], [], []]
        self.slot: list[int] = [0]
        self.n = 2

    def _bucket(self, c: int) -> int:
        return 0 if c <= 1 else (1 if c == 2 else 2)

    def _move(self, e: int, new_count: int) -> None:
        old_b, new_b = self._bucket(self.count[e]), self._bucket(new_count)
        self.count[e] = new_count
        if old_b == new_b:
            return
        pool = self.pools[old_b]
        i = self.slot[e]
        last = pool[-1]
        pool[i] = last
        self.slot[last] = i
        pool.pop()
        self.slot[e] = len(self.pools[new_b])
        self.pools[new_b].append(e)

    def _new_edge(self, a: int, b: int) -> None:
        self.ends.append((a, b))
        self.count.append(1)
        self.slot.append(len(self.pools[0]))
        self.pools[0].append(len(self.ends) - 1)

    def grow(self, e: int) -> int:
        a, b = self.ends[e]
        z = self.n
        self.n += 1
        self._move(e, self.count[e] + 1)
        self._new_edge(a, z)
        self._new_edge(b, z)
        return z

    def pick(self, buckets) -> int:
        total = sum(len(self.pools[b]) for b in buckets)
        i = self.rng.below(total)
        for b in buckets:
            if i < len(self.pools[b]):
                return self.pools[b][i]
            i -= len(self.pools[b])
        raise AssertionError("unreachable")

    def pick_any(self) -> int:
        return self.rng.below(len(self.ends))

    def graph(self) -> Graph:
        return Graph(self.ends)


def generate(spec: GenSpec) -> Graph:
    spec.check()
    rng = SplitMix64(spec.seed)
    bld = _Builder(rng)
    p = spec.profile
    steps = spec.n - 2
    if p.kind == "any":
        for _ in range(steps):
            bld.grow(bld.pick_any())
    elif p.kind == "3pf":
        for _ in range(steps):
            bld.grow(bld.pick([0]))
    elif p.kind == "force3":
        _grow_force3(bld, steps, p.k)
    elif p.kind == "force4":
        _grow_force4(bld, spec.n)
    elif p.kind in ("strip", "strip-hp"):
        return _strip(rng, spec.n, p.kind == "strip-hp")
    else:
        raise InfeasibleProfile(f"unknown profile {p}")
    return bld.graph()


def _grow_force3(bld: _Builder, steps: int, k: int) -> None:
    """Exactly k edges end with three common neighbours, none with more."""
    need = k
    for left in range(steps, 0, -1):
        c2 = len(bld.pools[1])
        # steps still required to finish the remaining pyramids
        required = need + max(0, need - c2)
        if need and c2 and (left <= required or bld.rng.below(3) == 0):
            bld.grow(bld.pick([1]))
            need -= 1
        else:
            bld.grow(bld.pick([0]))
    if need:
        raise InfeasibleProfile(f"could not place {k} pyramids")


def _grow_force4(bld: _Builder, n: int) -> None:
    base_size = n - 3
    while bld.n < base_size:
        bld.grow(bld.pick_any())
    e = bld.pick_any()
    while bld.count[e] < 4:
        bld.grow(e)
    while bld.n < n:
        bld.grow(bld.pick_any())


STRIP_MIN = 8


def _strip(rng: SplitMix64, n: int, on_path: bool) -> Graph:
    """A strip core with pendant sub-2-trees, vertex ids shuffled.

    The core is built on 0..m-1 so that vertex k is adjacent to k-1, which
    makes 0, 1, ..., m-1 a Hamiltonian path of it.  Two ears s, t sit on
    the end edges (0, 1) and (m-2, m-1) and every other vertex hangs off an
    edge in a pendant.  Both end edges always receive a pendant so that
    s and t survive degree-2 pruning.  With ``on_path`` pendants only go on
    path edges or edges at s and t, and the result always has a
    Hamiltonian path; otherwise any edge may receive one.
    """
    pendants = 2 + rng.below(max(1, (n - 2) // 3 - 1))
    m = n - 2 - pendants
    edges: list[tuple[int, int]] = [(0, 1), (0, 2), (1, 2)]
    older, newest = (0, 1), 2
    for k in range(3, m):
        c = older[rng.below(2)]
        edges += [(newest, k), (c, k)]
        older, newest = (c, newest), k
    s, t = m, m + 1
    edges += [(0, s), (1, s), (m - 2, t), (m - 1, t)]
    if on_path:
        targets = [(i, i + 1) for i in range(m - 1)]
        targets += [(0, s), (1, s), (m - 2, t), (m - 1, t)]
    else:
        targets = list(edges)
    # an edge already carrying a pendant passes new ones on to the pendant's
    # outer edge so no edge gains more than one extra common neighbour
    outer: dict[tuple[int, int], tuple[int, int]] = {}
    z = m + 2
    for i in range(pendants):
        e = ((0, 1), (m - 2, m - 1))[i] if i < 2 else targets[rng.below(len(targets))]
        a, b = outer.get(e, e)
        edges += [(a, z), (b, z)]
        outer[e] = (a, z) if rng.below(2) else (z, b)
        z += 1
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return Graph((perm[a], perm[b]) for a, b in edges)


def enumerate_small(n: int, limit: int = 10) -> Iterator[Graph]:
    """Every 2-tree on 0..n-1 in which vertex k attaches at step k.

    Attaching vertex k to edge ab fixes N(k) = {a, b}, so distinct choice
    sequences give distinct labelled edge sets; there are 1*3*5*...*(2n-5).
    """
    if n > limit:
        raise TooLarge(f"enumerate_small is capped at n={limit}")
    if n < 2:
        return
    edges: list[tuple[int, int]] = [(0, 1)]

    def rec(k: int) -> Iterator[Graph]:
        if k == n:
            yield Graph(edges)
            return
        for i in range(len(edges)):
            a, b = edges[i]
            edges.append((a, k))
            edges.append((b, k))
            yield from rec(k + 1)
            del edges[-2:]

    yield from rec(2)
