import itertools

import pytest

from conftest import build
from twotree_hp.generator import GenSpec, Profile, enumerate_small, generate
from twotree_hp.graph import common_neighbors, components
from twotree_hp.pyramids import CaseLabel, classify, pyramid_report, triangle_counts
from twotree_hp.twotree import elimination_trace


def test_three_pyramid_counts():
    rep = pyramid_report(build("P3"))
    assert rep.counts[0, 1] == 3
    assert all(c == 1 for e, c in rep.counts.items() if e != (0, 1))
    assert rep.three_pyramid_edges == {(0, 1)}
    assert not rep.four_plus_edges


def test_four_pyramid_counts():
    rep = pyramid_report(build("P4"))
    assert rep.counts[0, 1] == 4
    assert rep.four_plus_edges == {(0, 1)}
    assert classify(rep) is CaseLabel.HAS_FOUR_PYRAMID


def test_fan_counts():
    rep = pyramid_report(build("FAN6"))
    assert rep.max_count() == 2
    assert {e for e, c in rep.counts.items() if c == 2} == {(0, 2), (0, 3), (0, 4)}
    assert not rep.three_pyramid_edges


@pytest.mark.parametrize(
    "name, label",
    [
        ("K2", CaseLabel.THREE_PYRAMID_FREE),
        ("TRI", CaseLabel.THREE_PYRAMID_FREE),
        ("FAN6", CaseLabel.THREE_PYRAMID_FREE),
        ("P3", CaseLabel.EXACTLY_ONE_THREE_PYRAMID),
        ("TWIN", CaseLabel.TWO_PLUS_THREE_PYRAMIDS),
        ("NOHP", CaseLabel.TWO_PLUS_THREE_PYRAMIDS),
        ("P4", CaseLabel.HAS_FOUR_PYRAMID),
    ],
)
def test_classify(name, label):
    assert classify(pyramid_report(build(name))) is label


def test_twin_pyramid_edges():
    assert pyramid_report(build("TWIN")).three_pyramid_edges == {(0, 1), (0, 2)}


@pytest.mark.parametrize("seed", range(20))
def test_counts_agree_with_intersection(seed):
    g = generate(GenSpec(60, seed))
    ears = triangle_counts(g)
    peo = triangle_counts(g, elimination_trace(g))
    assert ears == peo
    for e, c in ears.items():
        assert c == len(common_neighbors(g, e))


def _tough_violation(g):
    """Some S with c(G - S) > |S|, by brute force."""
    verts = g.vertices
    for k in range(1, len(verts)):
        for s in itertools.combinations(verts, k):
            if len(components(g, s)) > k:
                return s
    return None


@pytest.mark.parametrize("seed", range(12))
def test_pyramid_free_graphs_are_tough(seed):
    g = generate(GenSpec(6 + seed % 5, seed, Profile.parse("3pf")))
    assert _tough_violation(g) is None


def test_pyramid_edge_breaks_toughness():
    for g in enumerate_small(7):
        for (a, b) in pyramid_report(g).three_pyramid_edges:
            assert len(components(g, (a, b))) > 2
