import random

from hypothesis import given, settings, strategies as st

from oracles import shortcut_oracle
from planartd.crestsep import crest_path
from planartd.generators import gen_grid, gen_mountain_chain, gen_triangulation
from planartd.mountain import good_mountain_structure
from planartd.shortcuts import (classify_shortcut_free, composed_cycle, compute_shortcut_sets,
                                dart_potentials, extended_component, path_potential)

graphs = st.one_of(
    st.builds(gen_triangulation, st.integers(4, 120), st.integers(0, 10 ** 6)),
    st.builds(gen_grid, st.integers(2, 9), st.integers(2, 9)),
    st.builds(gen_mountain_chain, st.integers(1, 5), st.integers(2, 5), st.integers(0, 99)),
)


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_potentials_count_one_face_per_inner_face(g):
    pot = dart_potentials(g)
    of = g.outer_face()
    for i, f in enumerate(g.faces):
        walk = [d[0] for d in f] + [f[0][0]]
        s = path_potential(pot, walk)
        assert s == (1 - len(g.faces) if i == of else 1)


def test_extended_component_of_middle_summit():
    ms = good_mountain_structure(gen_mountain_chain(3, 3, 0))
    mid = next(c for c in range(3) if len(ms.mct.adj[c]) == 2)
    verts, edges = extended_component(ms, mid)
    # [DERIVED] both neighbouring separators are on its boundary
    for x in ms.mct.adj[mid].values():
        assert x.border_edges <= edges
        assert x.vertices <= verts


def _small_instances(count):
    seed = 0
    out = []
    while len(out) < count:
        n = random.Random(seed).randint(8, 12)
        g = gen_triangulation(n, seed)
        seed += 1
        ms = good_mountain_structure(g)
        if ms.separators:
            out.append(ms)
    return out


def test_lengths_match_exhaustive_search_small():
    for ms in _small_instances(25):
        for h in (1, 2, 3):
            sets = compute_shortcut_sets(ms, h)
            for key, want in shortcut_oracle(ms, h).items():
                got = {p: sc.length for p, sc in sets.get(*key).items()}
                assert got == want


@settings(max_examples=40, deadline=None)
@given(graphs, st.integers(1, 3))
def test_shortcut_shape(g, h):
    ms = good_mountain_structure(g)
    sets = compute_shortcut_sets(ms, h)
    hv = ms.heights.h
    by_sid = {x.sid: x for x in ms.separators}
    for (sid, side), table in sets.sets.items():
        x = by_sid[sid]
        for (s, t), p in table.items():
            assert s < t and p.path[0] == s and p.path[-1] == t
            assert len(set(p.path)) == len(p.path)
            assert all(hv[v] >= h for v in p.path)
            for a, b in zip(p.path, p.path[1:]):
                assert ms.graph.has_edge(a, b)
            assert p.length < len(crest_path(x, s, t)) - 1
            cyc = composed_cycle(x, p)
            for i in range(len(cyc)):
                assert ms.graph.has_edge(cyc[i - 1], cyc[i])


@settings(max_examples=30, deadline=None)
@given(graphs, st.integers(1, 3))
def test_free_sets_respect_their_definition(g, h):
    ms = good_mountain_structure(g)
    sets = compute_shortcut_sets(ms, h)
    limit = h
    free_seps, free_comps = classify_shortcut_free(ms, sets, limit, h)
    for x in ms.separators:
        if x.sid in free_seps:
            assert not sets.has_short(x.sid, "down", limit)
            assert not sets.has_short(x.sid, "up", limit)
    for c in free_comps:
        for nb, x in ms.mct.adj[c].items():
            side = "down" if ms.parent[c] == nb else "up"
            assert not sets.has_short(x.sid, side, limit)
