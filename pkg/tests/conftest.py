from __future__ import annotations

import pytest

from twotree_hp.graph import Graph, edge_key
from twotree_hp.pyramids import CaseLabel, classify, pyramid_report
from twotree_hp.twotree import Peo, peo_with_degree2_endpoints
from twotree_hp.vertex_pruning import (
    BlueState,
    G0Instance,
    G1Instance,
    check_g1_conditions,
    check_h_family,
    check_g0_conditions,
    derive_g1,
    vertex_prune,
)

# Named small 2-trees.  Letters follow the usual naming: u=0, v=1, a=2, ...
K2 = [(0, 1)]
TRI = [(0, 1), (0, 2), (1, 2)]
FAN6 = [(0, i) for i in range(1, 6)] + [(i, i + 1) for i in range(1, 5)]
P3 = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)]
P4 = P3 + [(0, 5), (1, 5)]
# uv, ua, va, ub, vb, uc, vc, ud, ad, ue, ae
TWIN = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4), (0, 5), (2, 5), (0, 6), (2, 6)]
# uv, ua, va, ub, vb, uc, vc, ud, bd, ue, be, uf, cf, ug, cg
NOHP = [
    (0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4),
    (0, 5), (3, 5), (0, 6), (3, 6), (0, 7), (4, 7), (0, 8), (4, 8),
]  # fmt: skip

FIXTURES = {"K2": K2, "TRI": TRI, "FAN6": FAN6, "P3": P3, "P4": P4, "TWIN": TWIN, "NOHP": NOHP}


def build(name: str) -> Graph:
    return Graph(FIXTURES[name])


def make_g1(edges, blue, s_nbrs=(0, 0), t_nbrs=(0, 0), sigma=None):
    """Hand-built G1 stage; s and t are placeholders outside the graph."""
    g = Graph(edges)
    blue = {edge_key(*e) for e in blue}
    state = BlueState(blue, {}, {v for e in blue for v in e})
    sigma = Peo.of(sigma) if sigma is not None else peo_with_degree2_endpoints(g)
    return G1Instance(g, state, -1, -2, s_nbrs, t_nbrs, sigma, G0Instance(g, state, []))


def reach_g1(g):
    """The G1 stage of g if the pipeline gets that far, else None."""
    if classify(pyramid_report(g)) is not CaseLabel.TWO_PLUS_THREE_PYRAMIDS:
        return None
    g0 = vertex_prune(g)
    if check_g0_conditions(g0) is not None or check_h_family(g0).witness:
        return None
    g1 = derive_g1(g0)
    if check_g1_conditions(g1) is not None:
        return None
    return g1


_criteria: dict[int, tuple[str, bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    num, title = mark.args
    ok = rep.passed
    prev = _criteria.get(num)
    _criteria[num] = (title, ok and (prev is None or prev[1]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, ok = _criteria[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
