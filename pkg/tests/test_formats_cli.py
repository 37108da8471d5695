import os

import pytest
from hypothesis import given, settings, strategies as st

from planartd.cli import main
from planartd.embed import validate_embedding
from planartd.formats import (FormatError, graph_to_gr, parse_emb, parse_gr, parse_td, write_emb,
                              write_gr, write_td)
from planartd.decompose import decompose
from planartd.generators import gen_grid, gen_mountain_chain, gen_triangulation
from planartd.layering import compute_heights, find_crests
from planartd.mountain import good_mountain_structure

graphs = st.one_of(
    st.builds(gen_triangulation, st.integers(3, 80), st.integers(0, 10 ** 6)),
    st.builds(gen_grid, st.integers(1, 8), st.integers(1, 8), st.booleans()),
    st.builds(gen_mountain_chain, st.integers(1, 4), st.integers(2, 4), st.integers(0, 99)),
)


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_round_trips(g):
    n = len(g.rot)
    text = graph_to_gr(g)
    n2, edges = parse_gr(text)
    assert n2 == n and write_gr(n2, edges) == text
    g2 = parse_emb(write_emb(g))
    assert g2.rot == g.rot and write_emb(g2) == write_emb(g)
    td, _ = decompose(g)
    td_text = write_td(td, n)
    td2, n3 = parse_td(td_text)
    assert n3 == n and write_td(td2, n) == td_text


def test_generator_examples():
    assert len(gen_grid(1, 1).rot) == 1
    c4 = gen_grid(2, 2, False)
    assert sorted(c4.edges()) == [(0, 1), (0, 2), (1, 3), (2, 3)]
    g = gen_grid(3, 3, True)
    # [DERIVED] 12 grid edges plus 4 diagonals
    assert len(g.rot) == 9 and g.num_edges() == 16
    assert gen_triangulation(3, 0).num_edges() == 3
    assert gen_triangulation(4, 0).num_edges() == 6
    rep = validate_embedding(gen_triangulation(50, 1))
    assert rep["euler"] and rep["almost_triangulated"]
    for s in (1, 2, 3):
        g = gen_mountain_chain(s, 3, 0)
        assert len(find_crests(g, compute_heights(g))) == s
    ms = good_mountain_structure(gen_mountain_chain(3, 3, 0))
    assert sorted(len(a) for a in ms.mct.adj) == [1, 1, 2]


def test_deterministic_generators():
    assert write_emb(gen_triangulation(200, 9)) == write_emb(gen_triangulation(200, 9))
    assert write_emb(gen_mountain_chain(4, 3, 2)) == write_emb(gen_mountain_chain(4, 3, 2))


@pytest.mark.parametrize("text", [
    "p tw 2 1\n1 1\n",
    "p tw 2 2\n1 2\n",
    "1 2\n",
    "p tw 2 1\n1 x\n",
    "p td 2 1\n1 2\n",
])
def test_bad_gr(text):
    with pytest.raises(FormatError):
        parse_gr(text)


@pytest.mark.parametrize("text", [
    "s td 1 2 2\nb 1 1 3\n",
    "s td 2 2 2\nb 1 1 2\n",
    "s td 1 3 2\nb 1 1 2\n",
    "b 1 1\n",
])
def test_bad_td(text):
    with pytest.raises(FormatError):
        parse_td(text)


def test_bad_emb():
    with pytest.raises(FormatError):
        parse_emb("r 1: 2\nr 2:\nouter: 1 2\n")
    with pytest.raises(FormatError):
        parse_emb("r 1: 2\nr 2: 1\n")
    with pytest.raises(FormatError):
        parse_emb("r 1: 2 3\nr 2: 3 1\nr 3: 1 2\nouter: 1 3\n")


def _gen(tmp_path, *args):
    prefix = str(tmp_path / "g")
    assert main(["gen", *args, "--out", prefix]) == 0
    return prefix


def test_cli_decompose_and_validate(tmp_path, capsys):
    prefix = _gen(tmp_path, "grid", "--rows", "9", "--cols", "9")
    out = str(tmp_path / "g.td")
    stats = str(tmp_path / "s.json")
    assert main(["decompose", "--graph", prefix + ".gr", "--out", out, "--stats", stats]) == 0
    assert main(["validate", "--graph", prefix + ".gr", "--td", out]) == 0
    assert "valid width=" in capsys.readouterr().out
    assert os.path.getsize(stats) > 0


def test_cli_validate_reports_violation(tmp_path, capsys):
    prefix = _gen(tmp_path, "tri", "--n", "10", "--seed", "3")
    n, edges = parse_gr(open(prefix + ".gr").read())
    bad = tmp_path / "bad.td"
    bags = [set(range(n - 1)), {n - 1}]
    bad.write_text(f"s td 2 {n - 1} {n}\nb 1 " + " ".join(str(v + 1) for v in sorted(bags[0]))
                   + f"\nb 2 {n}\n1 2\n")
    assert main(["validate", "--graph", prefix + ".gr", "--td", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "violation:" in out and "edge" in out


def test_cli_exact_tw_k4(tmp_path, capsys):
    prefix = _gen(tmp_path, "tri", "--n", "4")
    capsys.readouterr()
    assert main(["exact-tw", "--graph", prefix + ".gr"]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_cli_k_too_small(tmp_path):
    prefix = _gen(tmp_path, "grid", "--rows", "12", "--cols", "12")
    out = str(tmp_path / "g.td")
    assert main(["decompose", "--graph", prefix + ".gr", "--k", "1", "--out", out, "--quiet"]) == 2


def test_cli_format_error(tmp_path):
    gr = tmp_path / "x.gr"
    gr.write_text("p tw 2 1\n1 2\n")
    assert main(["decompose", "--graph", str(gr), "--out", str(tmp_path / "x.td")]) == 1


def test_cli_chain_and_determinism(tmp_path):
    prefix = _gen(tmp_path, "chain", "--summits", "3", "--height", "3")
    a, b = str(tmp_path / "a.td"), str(tmp_path / "b.td")
    for out in (a, b):
        assert main(["decompose", "--graph", prefix + ".gr", "--embedding", prefix + ".emb",
                     "--out", out, "--quiet"]) == 0
    assert open(a).read() == open(b).read()


def test_cli_report_writes_table_and_figures(tmp_path, monkeypatch):
    import planartd.report as report
    monkeypatch.setattr(report, "default_corpus",
                        lambda quick=False: [("grid", 4), ("tri", 30), ("chain", 2)])
    out = tmp_path / "rep"
    assert main(["report", "--out", str(out), "--quick"]) == 0
    for name in ("results.tsv", "width_vs_n.png", "time_vs_n.png", "bag_sizes.png"):
        assert (out / name).stat().st_size > 0
    rows = (out / "results.tsv").read_text().splitlines()
    assert rows[0].split("\t")[:3] == ["family", "param", "n"] and len(rows) == 4
