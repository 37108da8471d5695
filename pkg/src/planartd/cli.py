"""Command line entry points."""

import argparse
import json
import os
import sys
import time

from .coastsep import KTooSmall
from .decompose import DecomposeStats, decompose
from .embed import EmbeddingError, validate_embedding
from .formats import (FormatError, check_same_graph, graph_to_gr, parse_emb, parse_gr,
                      parse_td, write_emb, write_td)
from .generators import gen_grid, gen_mountain_chain, gen_triangulation
from .verify import exact_treewidth, validate_td

EXIT_OK = 0
EXIT_FORMAT = 1
EXIT_K_TOO_SMALL = 2


def _read(path):
    with open(path) as fh:
        return fh.read()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def _fail(msg, code=EXIT_FORMAT):
    print(f"error: {msg}", file=sys.stderr)
    return code


def _load_graph(args):
    n, edges = parse_gr(_read(args.graph))
    emb = args.embedding
    if emb is None:
        stem = os.path.splitext(args.graph)[0] + ".emb"
        if not os.path.exists(stem):
            raise FormatError("an embedding is required (--embedding); none found next to the graph")
        emb = stem
    g = parse_emb(_read(emb))
    check_same_graph(n, edges, g)
    rep = validate_embedding(g)
    if not rep["ok"]:
        raise FormatError("embedding is not planar: " + "; ".join(map(str, rep["errors"][:3])))
    return n, edges, g


def cmd_decompose(args):
    try:
        n, _, g = _load_graph(args)
    except (OSError, FormatError, EmbeddingError) as e:
        return _fail(e)
    k = args.k if args.k == "auto" else int(args.k)
    st = DecomposeStats()
    t0 = time.perf_counter()
    try:
        td, k_used = decompose(g, k, st, jobs=args.jobs)
    except KTooSmall as e:
        return _fail(f"k too small: {e}", EXIT_K_TOO_SMALL)
    total = time.perf_counter() - t0
    _write(args.out, write_td(td, n))
    info = {"width": td.width, "k": k_used, "bags": len(td), "n": n,
            "seconds": round(total, 6), **st.as_dict()}
    if args.stats:
        _write(args.stats, json.dumps(info, indent=2, sort_keys=True) + "\n")
    if not args.quiet:
        print(f"width={td.width} k={k_used} bags={len(td)} seconds={total:.3f}")
    return EXIT_OK


def cmd_validate(args):
    try:
        n, edges = parse_gr(_read(args.graph))
        td, tn = parse_td(_read(args.td))
    except (OSError, FormatError) as e:
        return _fail(e)
    if tn != n:
        return _fail(f"decomposition is for {tn} vertices, graph has {n}")
    rep = validate_td((range(n), edges), td)
    if rep.ok:
        print(f"valid width={rep.width}")
        return EXIT_OK
    for p in rep.problems:
        print(f"violation: {_one_based(p)}")
    return EXIT_FORMAT


def _one_based(msg):
    """Shift the vertex numbers in a validator message to file ids."""
    out = []
    for tok in msg.split(" "):
        if "-" in tok and all(t.isdigit() for t in tok.split("-")):
            out.append("-".join(str(int(t) + 1) for t in tok.split("-")))
        elif tok.isdigit() and out and out[-1] == "vertex":
            out.append(str(int(tok) + 1))
        else:
            out.append(tok)
    return " ".join(out)


def cmd_gen(args):
    if args.family == "grid":
        g = gen_grid(args.rows, args.cols, not args.no_triangulate)
    elif args.family == "tri":
        g = gen_triangulation(args.n, args.seed)
    else:
        g = gen_mountain_chain(args.summits, args.height, args.seed)
    _write(args.out + ".gr", graph_to_gr(g))
    _write(args.out + ".emb", write_emb(g))
    print(f"wrote {args.out}.gr and {args.out}.emb (n={len(g.rot)}, m={g.num_edges()})")
    return EXIT_OK


def cmd_exact_tw(args):
    try:
        n, edges = parse_gr(_read(args.graph))
    except (OSError, FormatError) as e:
        return _fail(e)
    try:
        print(exact_treewidth((range(n), edges), limit=args.limit))
    except ValueError as e:
        return _fail(e)
    return EXIT_OK


def cmd_report(args):
    from .report import make_report
    rows, files = make_report(args.out, quick=args.quick, jobs=args.jobs,
                              figures=not args.no_figures)
    bad = sum(1 for r in rows if not r["valid"])
    for f in files:
        print(f"wrote {f}")
    return EXIT_OK if bad == 0 else EXIT_FORMAT


def build_parser():
    p = argparse.ArgumentParser(prog="planartd",
                                description="Tree decompositions of planar graphs.")
    sub = p.add_subparsers(dest="cmd", required=True)

    d = sub.add_parser("decompose", help="decompose an embedded planar graph")
    d.add_argument("--graph", required=True)
    d.add_argument("--embedding")
    d.add_argument("--k", default="auto", help="'auto' or a fixed integer")
    d.add_argument("--out", required=True, help="output .td file ('-' for stdout)")
    d.add_argument("--stats", help="write run statistics as JSON")
    d.add_argument("--jobs", type=int, default=1)
    d.add_argument("--quiet", action="store_true")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("validate", help="check a tree decomposition")
    v.add_argument("--graph", required=True)
    v.add_argument("--td", required=True)
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("gen", help="generate an instance (.gr and .emb)")
    gs = g.add_subparsers(dest="family", required=True)
    gg = gs.add_parser("grid")
    gg.add_argument("--rows", type=int, required=True)
    gg.add_argument("--cols", type=int, required=True)
    gg.add_argument("--no-triangulate", action="store_true")
    gt = gs.add_parser("tri")
    gt.add_argument("--n", type=int, required=True)
    gt.add_argument("--seed", type=int, default=0)
    gc = gs.add_parser("chain")
    gc.add_argument("--summits", type=int, required=True)
    gc.add_argument("--height", type=int, default=4)
    gc.add_argument("--seed", type=int, default=0)
    for q in (gg, gt, gc):
        q.add_argument("--out", required=True, help="output path prefix")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("exact-tw", help="exact treewidth of a small graph")
    e.add_argument("--graph", required=True)
    e.add_argument("--limit", type=int, default=15)
    e.set_defaults(func=cmd_exact_tw)

    r = sub.add_parser("report", help="benchmark table and figures")
    r.add_argument("--out", required=True, help="output directory")
    r.add_argument("--quick", action="store_true")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--no-figures", action="store_true")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
