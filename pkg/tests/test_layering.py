import networkx as nx
from hypothesis import given, settings, strategies as st

from planartd.embed import EmbeddedGraph, embedding_from_coords, restrict
from planartd.generators import gen_grid, gen_mountain_chain, gen_triangulation
from planartd.layering import compute_heights, find_crests, is_mountain

graphs = st.one_of(
    st.builds(gen_triangulation, st.integers(3, 120), st.integers(0, 10 ** 6)),
    st.builds(gen_grid, st.integers(1, 11), st.integers(1, 11)),
    st.builds(gen_mountain_chain, st.integers(1, 5), st.integers(2, 5), st.integers(0, 99)),
)


def _peel_heights(g):
    """Oracle: strip the outer face repeatedly, recomputing faces each round."""
    h = {}
    cur = g
    level = 1
    while True:
        outer = cur.outer_vertices()
        for v in outer:
            h[v] = level
        rest = set(cur.rot) - outer
        if not rest:
            return h
        sub = restrict(cur, rest)
        # each remaining piece gets its own peel; restrict picks one outer face
        # for all of them, so peel components separately
        G = nx.Graph(list(sub.edges()))
        G.add_nodes_from(sub.rot)
        if nx.number_connected_components(G) > 1:
            for comp in nx.connected_components(G):
                part = restrict(cur, comp)
                for v, x in _peel_heights(part).items():
                    h[v] = level + x
            return h
        cur = sub
        level += 1


def two_k4s():
    pos = {0: (0, 0), 1: (2, 0), 2: (1, 2), 3: (1, 0.7), 4: (4, 0), 5: (6, 0), 6: (5, 2), 7: (5, 0.7)}
    adj = {0: [1, 2, 3], 1: [0, 2, 3, 4], 2: [0, 1, 3], 3: [0, 1, 2],
           4: [1, 5, 6, 7], 5: [4, 6, 7], 6: [4, 5, 7], 7: [4, 5, 6]}
    return embedding_from_coords(adj, pos)


def test_grid_5x5_rings():
    hm = compute_heights(gen_grid(5, 5, False))
    # [DERIVED] hand peeling: ring index
    want = [1, 1, 1, 1, 1, 1, 2, 2, 2, 1, 1, 2, 3, 2, 1, 1, 2, 2, 2, 1, 1, 1, 1, 1, 1]
    assert [hm[v] for v in range(25)] == want
    assert hm.max_height == 3
    crests = find_crests(gen_grid(5, 5, False), hm)
    assert [(set(c.vertices), c.height) for c in crests] == [({12}, 3)]


def test_two_k4s_have_two_crests():
    g = two_k4s()
    hm = compute_heights(g)
    # [DERIVED] hand construction: the two centres
    assert sorted(sorted(c.vertices) for c in find_crests(g, hm)) == [[3], [7]]
    assert not is_mountain(g, hm)


def test_small_mountains():
    for g in (gen_triangulation(4, 0), gen_triangulation(3, 0), gen_mountain_chain(1, 3)):
        assert is_mountain(g, compute_heights(g))


def test_single_vertex():
    g = EmbeddedGraph({0: []})
    hm = compute_heights(g)
    assert hm[0] == 1
    assert len(find_crests(g, hm)) == 1


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_heights_match_repeated_peeling(g):
    assert compute_heights(g).h == _peel_heights(g)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_peeling_property_and_crests(g):
    hm = compute_heights(g)
    for i in range(2, hm.max_height + 1):
        sub = restrict(g, [v for v in g.rot if hm[v] >= i])
        layer = set(hm.layer(i))
        G = nx.Graph(list(sub.edges()))
        G.add_nodes_from(sub.rot)
        # every height-i vertex lies on the outer face of its piece
        on_outer = set()
        for comp in nx.connected_components(G):
            on_outer |= restrict(g, comp).outer_vertices()
        assert layer <= on_outer
    crests = find_crests(g, hm)
    assert crests
    seen = set()
    for c in crests:
        assert not (c.vertices & seen)
        seen |= c.vertices
        assert all(hm[v] == c.height for v in c.vertices)
        # no higher neighbour
        assert all(hm[u] <= c.height for v in c.vertices for u in g.rot[v])
