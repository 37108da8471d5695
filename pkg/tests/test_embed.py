import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from corpus import random_planar
from planartd.embed import (EmbeddedGraph, EmbeddingError, almost_triangulate,
                            articulation_points, biconnected_components, restrict,
                            restrict_edges, validate_embedding)
from planartd.generators import gen_grid, gen_mountain_chain, gen_triangulation
from planartd.layering import compute_heights
from planartd.verify import exact_treewidth

graphs = st.one_of(
    st.builds(gen_triangulation, st.integers(3, 80), st.integers(0, 10 ** 6)),
    st.builds(gen_grid, st.integers(1, 9), st.integers(1, 9), st.booleans()),
    st.builds(gen_mountain_chain, st.integers(1, 4), st.integers(2, 4), st.integers(0, 99)),
    st.builds(random_planar, st.integers(3, 30), st.integers(0, 10 ** 6)),
)


def _nx(g):
    G = nx.Graph()
    G.add_nodes_from(g.rot)
    G.add_edges_from(g.edges())
    return G


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_euler_and_dart_partition(g):
    rep = validate_embedding(g)
    assert rep["ok"] and rep["euler"]
    darts = [d for f in g.faces for d in f]
    assert len(darts) == len(set(darts)) == 2 * g.num_edges()
    isolated = sum(1 for ns in g.rot.values() if not ns)
    assert len(g.rot) - g.num_edges() + len(g.faces) + isolated == 2 * nx.number_connected_components(_nx(g))
    assert nx.check_planarity(_nx(g))[0]


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_almost_triangulate_is_idempotent(g):
    # the pipeline triangulates blocks; faces of a block are simple cycles
    if articulation_points(g) or len(g.rot) < 3:
        return
    t, added = almost_triangulate(g)
    t2, added2 = almost_triangulate(t)
    assert not added2
    assert t2.rot == t.rot
    assert validate_embedding(t)["euler"]
    of = t.outer_face()
    corners = [len({d[0] for d in f}) for i, f in enumerate(t.faces) if i != of]
    assert all(c <= 3 for c in corners)


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 11), st.integers(0, 10 ** 6), st.floats(0.1, 0.9))
def test_triangulation_loss_bounded(n, seed, keep):
    g = random_planar(n, seed, keep)
    t, added = almost_triangulate(g)
    if len(t.rot) > 15:
        return
    assert exact_treewidth(t) <= 4 * exact_treewidth(g) + 1


def test_grid_3x3_faces():
    # [DERIVED] 4 quads plus the outer face, counted by hand
    rep = validate_embedding(gen_grid(3, 3, False))
    assert rep["faces"] == 5
    assert not rep["almost_triangulated"]


def test_triangulate_grid_3x3():
    g = gen_grid(3, 3, False)
    t, added = almost_triangulate(g)
    # [DERIVED] one vertex per inner quad
    assert len(added) == 4
    assert all(len(face) == 4 for face in added.values())
    # [DERIVED] exact treewidth oracle: 3 for both, far below 4*3+1
    assert exact_treewidth(g) == 3
    assert exact_treewidth(t) <= 13
    assert validate_embedding(t)["almost_triangulated"]


def test_restrict_grid_to_inner_rings():
    g = gen_grid(5, 5, False)
    hm = compute_heights(g)
    r = restrict(g, [v for v in g.rot if hm[v] >= 2])
    # [DERIVED] hand construction: the 3x3 grid on ids 6-8, 11-13, 16-18
    assert sorted(r.edges()) == [(6, 7), (6, 11), (7, 8), (7, 12), (8, 13), (11, 12), (11, 16),
                                 (12, 13), (12, 17), (13, 18), (16, 17), (17, 18)]
    assert set(r.outer_vertices()) == {6, 7, 8, 11, 13, 16, 17, 18}


def test_restrict_errors():
    g = gen_grid(2, 2, False)
    with pytest.raises(EmbeddingError):
        restrict(g, [])
    with pytest.raises(EmbeddingError):
        restrict(g, [0, 99])


def test_restrict_edges_keeps_outer_region():
    g = gen_triangulation(30, 3)
    keep = [e for e in g.edges() if 0 not in e]
    r = restrict_edges(g, keep)
    assert r.outer is not None
    assert validate_embedding(r)["ok"]
    assert (g.outer_vertices() - {0}) <= r.outer_vertices()


def test_bowtie_blocks():
    # two triangles sharing vertex 2
    rot = {0: [1, 2], 1: [2, 0], 2: [0, 1, 3, 4], 3: [4, 2], 4: [2, 3]}
    g = EmbeddedGraph(rot, (0, 1))
    assert validate_embedding(g)["ok"]
    assert articulation_points(g) == {2}
    blocks = biconnected_components(g)
    assert sorted(sorted(b.graph.rot) for b in blocks) == [[0, 1, 2], [2, 3, 4]]
    assert all(b.cut_vertices == {2} for b in blocks)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 40), st.integers(0, 10 ** 6), st.floats(0.0, 0.5))
def test_blocks_match_networkx(n, seed, keep):
    g = random_planar(n, seed, keep)
    ours = sorted(sorted(b.graph.rot) for b in biconnected_components(g))
    theirs = sorted(sorted(c) for c in nx.biconnected_components(_nx(g)))
    assert ours == theirs
    assert articulation_points(g) == set(nx.articulation_points(_nx(g)))


def test_nonplanar_rotation_is_reported():
    # K4 with one rotation reversed has genus 1
    g = gen_triangulation(4, 0)
    rot = dict(g.rot)
    rot[0] = tuple(reversed(rot[0]))
    rep = validate_embedding(EmbeddedGraph(rot))
    assert not rep["euler"] and not rep["ok"]


def test_asymmetric_rotation_is_reported():
    rep = validate_embedding(EmbeddedGraph({0: [1], 1: []}))
    assert not rep["ok"]
    rep = validate_embedding(EmbeddedGraph({0: [1, 1], 1: [0, 0]}))
    assert not rep["simple"]
