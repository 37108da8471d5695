import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from planartd.crestsep import (NotTriangulatedError, compute_down_info, crest_path,
                               enumerate_crest_separators, is_degenerate)
from planartd.embed import EmbeddedGraph
from planartd.generators import gen_grid, gen_mountain_chain, gen_triangulation
from planartd.layering import compute_heights

graphs = st.one_of(
    st.builds(gen_triangulation, st.integers(4, 60), st.integers(0, 10 ** 6)),
    st.builds(gen_grid, st.integers(2, 9), st.integers(2, 9)),
    st.builds(gen_mountain_chain, st.integers(1, 3), st.integers(2, 4), st.integers(0, 99)),
)


def _setup(g):
    hm = compute_heights(g)
    di = compute_down_info(g, hm)
    return hm, di, enumerate_crest_separators(g, hm, di)


def _dual_pieces(g, border):
    """Oracle: inner faces glued across edges that are not in ``border``."""
    of = g.outer_face()
    D = nx.Graph()
    D.add_nodes_from(i for i in range(len(g.faces)) if i != of)
    for a, b in g.edges():
        if (min(a, b), max(a, b)) in border:
            continue
        f1, f2 = g.face_of[(a, b)], g.face_of[(b, a)]
        if of not in (f1, f2):
            D.add_edge(f1, f2)
    return nx.number_connected_components(D)


def test_grid_centre_down_path():
    g = gen_grid(5, 5)
    hm, di, _ = _setup(g)
    # [DERIVED] hand evaluation: smallest-id lower neighbour at every step
    assert di.path(12) == [12, 7, 2]


def test_k4_separators():
    g = gen_triangulation(4, 0)
    hm, di, seps = _setup(g)
    centre = next(v for v in g.rot if hm[v] == 2)
    # [DERIVED] the centre's three lower neighbours form one run around it
    assert di.reps[centre] == [di.down[centre]]
    assert sorted(x.top_edge for x in seps) == sorted(e for e in g.edges() if centre not in e)
    assert all(is_degenerate(x, g) for x in seps)


def test_not_triangulated_rejected():
    # vertex 4 claims height 2 but has no lower neighbour
    rot = {0: [1, 3], 1: [2, 0], 2: [3, 1], 3: [0, 2], 4: []}
    bad = EmbeddedGraph(rot, (0, 1))
    hm = compute_heights(bad)
    hm.h[4] = 2
    with pytest.raises(NotTriangulatedError):
        compute_down_info(bad, hm)


def test_crest_path_avoids_lowpoint():
    found = 0
    for seed in range(40):
        g = gen_triangulation(40, seed)
        hm, di, seps = _setup(g)
        for x in seps:
            low = x.lowpoint
            if low is None:
                continue
            ess = sorted(x.essential_vertices)
            B = nx.Graph(list(x.border_edges))
            B.remove_node(low)
            for s in ess:
                for t in ess:
                    if s >= t or low in (s, t):
                        continue
                    p = crest_path(x, s, t)
                    assert low not in p[1:-1]
                    # [DERIVED] oracle: BFS on the border graph minus the lowpoint
                    assert len(p) - 1 == nx.shortest_path_length(B, s, t)
                    found += 1
    assert found > 50


def test_crest_path_rejects_foreign_vertices():
    g = gen_grid(5, 5)
    _, _, seps = _setup(g)
    x = seps[0]
    outside = next(v for v in g.rot if v not in x.vertices)
    with pytest.raises(ValueError):
        crest_path(x, outside, x.u)


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_down_paths_are_geodesic(g):
    hm, di, seps = _setup(g)
    G = nx.Graph(list(g.edges()))
    for x in seps[:30]:
        for p in (x.p1, x.p2):
            for i in range(len(p)):
                for j in range(i + 1, len(p)):
                    assert nx.shortest_path_length(G, p[i], p[j]) == j - i


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_separator_splits_faces_in_two(g):
    hm, di, seps = _setup(g)
    for x in seps:
        if is_degenerate(x, g):
            continue
        assert _dual_pieces(g, x.border_edges) == 2, x


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_separator_shape(g):
    hm, di, seps = _setup(g)
    h = hm.h
    for x in seps:
        for p in (x.p1, x.p2[1:] if x.kind == "rep" else x.p2):
            assert h[p[-1]] == 1
            assert all(h[p[i]] == h[p[i + 1]] + 1 for i in range(len(p) - 1))
        assert g.has_edge(x.u, x.v)
        if x.kind == "pair":
            assert h[x.u] == h[x.v]
        else:
            assert h[x.v] == h[x.u] - 1 and x.v != di.down[x.u]
