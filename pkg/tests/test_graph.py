import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import build
from twotree_hp.errors import MissingEdge, MissingVertex
from twotree_hp.generator import GenSpec, Profile, generate
from twotree_hp.graph import (
    Graph,
    block_decomposition,
    blocks_and_cut_vertices,
    close_of_vertex,
    common_neighbors,
    components,
    edge_key,
    is_connected,
)
from twotree_hp.pyramids import pyramid_report


def test_edge_key_orders_endpoints():
    assert edge_key(5, 2) == (2, 5)
    assert edge_key(2, 5) == (2, 5)


def test_graph_basics():
    g = build("P3")
    assert len(g) == 5
    assert g.num_edges() == 7
    assert g.degree(0) == 4
    assert g.has_edge(1, 0) and not g.has_edge(2, 3)
    assert g.edges() == sorted(g.edges())
    h = g.copy()
    h.remove_edge(0, 1)
    assert g.has_edge(0, 1) and not h.has_edge(0, 1)
    with pytest.raises(MissingEdge):
        h.remove_edge(0, 1)


def test_common_neighbors():
    assert common_neighbors(build("P3"), (0, 1)) == {2, 3, 4}
    assert common_neighbors(build("K2"), (0, 1)) == set()
    for e in [(0, 1), (0, 2), (1, 2)]:
        assert common_neighbors(build("TRI"), e) == {0, 1, 2} - set(e)
    with pytest.raises(MissingEdge):
        common_neighbors(build("P3"), (2, 3))


def test_close_of_vertex():
    assert close_of_vertex(build("P3"), 2) == {(0, 1)}
    assert close_of_vertex(build("TRI"), 0) == {(1, 2)}
    assert close_of_vertex(build("K2"), 0) == set()


def test_components():
    assert components(build("P3"), {0, 1}) == [{2}, {3}, {4}]
    assert len(components(build("NOHP"), {0, 3, 4})) == 5
    assert components(build("TRI")) == [{0, 1, 2}]
    with pytest.raises(MissingVertex):
        components(build("TRI"), {9})


def test_blocks():
    blocks, cuts = blocks_and_cut_vertices(build("TRI"))
    assert blocks == [frozenset({0, 1, 2})] and cuts == set()

    blocks, cuts = blocks_and_cut_vertices(Graph([(0, 1), (1, 2)]))
    assert blocks == [frozenset({0, 1}), frozenset({1, 2})]
    assert cuts == {1}

    # the blue path v-u-a left over from the twin-pyramid instance
    blocks, cuts = blocks_and_cut_vertices(Graph([(0, 1), (0, 2)]))
    assert set(blocks) == {frozenset({0, 1}), frozenset({0, 2})}
    assert cuts == {0}


def test_block_decomposition_edges_point_at_their_block():
    # two triangles and a pendant edge hanging off a shared vertex
    g = Graph([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)])
    dec = block_decomposition(g)
    assert dec.cuts == {2, 4}
    assert len(dec.blocks) == 3
    for (a, b), k in dec.edge_block.items():
        assert {a, b} <= dec.blocks[k]
    assert set(dec.edge_block) == set(g.edges())


def test_is_connected():
    assert is_connected(build("FAN6"))
    assert not is_connected(Graph([(0, 1), (2, 3)]))
    assert is_connected(Graph(vertices=[7]))


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(3, 40),
    seed=st.integers(0, 2**32),
    prof=st.sampled_from(["any", "3pf", "force3:1", "force3:2", "force4"]),
)
def test_edge_cut_components_match_common_neighbors(n, seed, prof):
    spec = GenSpec(n, seed, Profile.parse(prof))
    try:
        spec.check()
    except Exception:
        spec = GenSpec(n, seed)
    g = generate(spec)
    counts = pyramid_report(g).counts
    for a, b in g.edges():
        assert len(components(g, (a, b))) == counts[a, b] == len(common_neighbors(g, (a, b)))
