"""Benchmark report: runs the decomposition on generated families and
writes a tab-separated table plus matplotlib figures."""

import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor

from .decompose import DecomposeStats, decompose
from .generators import gen_grid, gen_mountain_chain, gen_triangulation
from .verify import validate_td

FIELDS = ["family", "param", "n", "m", "k", "width", "max_bag", "nodes", "valid", "seconds"]


def default_corpus(quick=False):
    if quick:
        return ([("grid", r) for r in (4, 6, 8)] + [("tri", n) for n in (50, 100)]
                + [("chain", s) for s in (2, 3)])
    return ([("grid", r) for r in (4, 6, 8, 12, 16, 24)]
            + [("tri", n) for n in (50, 100, 200, 400, 800, 1600)]
            + [("chain", s) for s in (2, 3, 4, 6, 8, 10)])


def build(family, param, seed=0):
    if family == "grid":
        return gen_grid(param, param)
    if family == "tri":
        return gen_triangulation(param, seed)
    if family == "chain":
        return gen_mountain_chain(param, 4, seed)
    raise ValueError(f"unknown family {family!r}")


def run_one(item):
    family, param = item
    g = build(family, param)
    st = DecomposeStats()
    t0 = time.perf_counter()
    td, k = decompose(g, "auto", st)
    secs = time.perf_counter() - t0
    rep = validate_td(g, td)
    return {"family": family, "param": param, "n": len(g.rot), "m": g.num_edges(),
            "k": k, "width": td.width, "max_bag": td.max_bag(), "nodes": len(td),
            "valid": int(rep.ok), "seconds": round(secs, 4),
            "bags": sorted(len(b) for b in td.bags)}


def run_corpus(items, jobs=1):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_one, items))
    return [run_one(it) for it in items]


def write_table(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, FIELDS, delimiter="\t", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow(r)


def plot(rows, outdir):
    """Width and runtime against n per family, plus a bag-size histogram."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    files = []
    fams = sorted({r["family"] for r in rows})
    for key, label, name in (("width", "width", "width_vs_n.png"),
                             ("seconds", "seconds", "time_vs_n.png")):
        fig, ax = plt.subplots(figsize=(6, 4))
        for fam in fams:
            pts = sorted((r["n"], r[key]) for r in rows if r["family"] == fam)
            ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=fam)
        ax.set_xlabel("vertices")
        ax.set_ylabel(label)
        if key == "seconds":
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.legend()
        fig.tight_layout()
        path = os.path.join(outdir, name)
        fig.savefig(path, dpi=100)
        plt.close(fig)
        files.append(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    sizes = [s for r in rows for s in r.get("bags", [])]
    if sizes:
        ax.hist(sizes, bins=range(1, max(sizes) + 2), align="left")
    ax.set_xlabel("bag size")
    ax.set_ylabel("bags")
    fig.tight_layout()
    path = os.path.join(outdir, "bag_sizes.png")
    fig.savefig(path, dpi=100)
    plt.close(fig)
    files.append(path)
    return files


def make_report(outdir, quick=False, jobs=1, figures=True):
    os.makedirs(outdir, exist_ok=True)
    rows = run_corpus(default_corpus(quick), jobs)
    table = os.path.join(outdir, "results.tsv")
    write_table(rows, table)
    files = [table]
    if figures:
        files += plot(rows, outdir)
    return rows, files
