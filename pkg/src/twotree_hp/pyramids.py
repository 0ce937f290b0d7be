"""Pyramid detection and case classification for 2-trees.

In a 2-tree the common neighbours of an edge are pairwise non-adjacent, so
an edge with k common neighbours is exactly the base of an induced k-pyramid.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass

from .errors import NotTwoTree
from .graph import Edge, Graph
from .twotree import ear_decomposition


class CaseLabel(enum.Enum):
    THREE_PYRAMID_FREE = "ThreePyramidFree"
    EXACTLY_ONE_THREE_PYRAMID = "ExactlyOneThreePyramid"
    TWO_PLUS_THREE_PYRAMIDS = "TwoPlusThreePyramids"
    HAS_FOUR_PYRAMID = "HasFourPyramid"

    def __str__(self) -> str:
        return self.value


@dataclass
class PyramidReport:
    counts: dict[Edge, int]
    three_pyramid_edges: set[Edge]
    four_plus_edges: set[Edge]

    def max_count(self) -> int:
        return max(self.counts.values(), default=0)


def counts_from_triangles(g: Graph, tris: Iterable[tuple[int, int, int]]) -> dict[Edge, int]:
    """Common-neighbour count of every edge, given the triangles of an ear
    decomposition (each triangle of a 2-tree shows up exactly once)."""
    counts = dict.fromkeys(g.iter_edges(), 0)
    for v, a, b in tris:
        counts[(v, a) if v < a else (a, v)] += 1
        counts[(v, b) if v < b else (b, v)] += 1
        counts[(a, b) if a < b else (b, a)] += 1
    return counts


def triangle_counts(g: Graph, order: list[int] | None = None) -> dict[Edge, int]:
    """Common-neighbour count of every edge of a 2-tree.

    Replays an elimination order: each eliminated vertex closes exactly one
    triangle with its two remaining neighbours, so the whole table costs
    O(n) instead of one set intersection per edge.
    """
    if order is None:
        dec = ear_decomposition(g)
        if dec is None:
            raise NotTwoTree(f"{g!r} is not a 2-tree")
        return counts_from_triangles(g, dec[0])
    pos = {v: i for i, v in enumerate(order)}
    adj = g.adj
    tris = []
    for v in order[:-2]:
        pv = pos[v]
        a, b = [w for w in adj[v] if pos[w] > pv]
        tris.append((v, a, b))
    return counts_from_triangles(g, tris)


def pyramid_report_from_counts(counts: dict[Edge, int]) -> PyramidReport:
    three = {e for e, c in counts.items() if c == 3}
    four = {e for e, c in counts.items() if c >= 4}
    return PyramidReport(counts, three, four)


def pyramid_report(g: Graph, order: list[int] | None = None) -> PyramidReport:
    return pyramid_report_from_counts(triangle_counts(g, order))


def classify(report: PyramidReport) -> CaseLabel:
    if report.four_plus_edges:
        return CaseLabel.HAS_FOUR_PYRAMID
    k = len(report.three_pyramid_edges)
    if k == 0:
        return CaseLabel.THREE_PYRAMID_FREE
    if k == 1:
        return CaseLabel.EXACTLY_ONE_THREE_PYRAMID
    return CaseLabel.TWO_PLUS_THREE_PYRAMIDS
