"""Tree decompositions of planar graphs of width O(tw).

One level of the recursion works on an almost triangulated biconnected
graph: tall regions (height >= 2k+1) are merged into single vertices,
every crest of height 2k+1 is cut off the coast by a short cycle, the flat
remainder is decomposed component by component, and the inner graph of
every cycle is handled recursively with the cycle as its new coast.
"""

import time
from collections import defaultdict

from .coastsep import CoastCycleError, KTooSmall, build_coast_cycles
from .embed import EmbeddedGraph, almost_triangulate, biconnected_components, restrict_edges
from .layering import compute_heights
from .mountain import good_mountain_structure
from .outer_td import ComponentTDError, TreeDecomposition, component_td
from .shortcuts import compute_shortcut_sets


class DecomposeStats:
    def __init__(self):
        self.timings = defaultdict(float)
        self.counts = defaultdict(int)
        self.depth = 0
        self.attempts = []
        self.cycles = []
        self.keep_cycles = False

    def add_time(self, phase, t):
        self.timings[phase] += t

    def as_dict(self):
        return {"timings": {k: round(v, 6) for k, v in self.timings.items()},
                "counts": dict(self.counts), "recursion_depth": self.depth,
                "attempts": self.attempts}


class _Timer:
    def __init__(self, stats, phase):
        self.stats = stats
        self.phase = phase

    def __enter__(self):
        self.t = time.perf_counter()

    def __exit__(self, *exc):
        if self.stats is not None:
            self.stats.add_time(self.phase, time.perf_counter() - self.t)


def merge_high_regions(g, hm, h, next_id=None):
    """Contract every maximal connected set of height >= h to one vertex.

    Returns ``(g2, regions)`` with ``regions`` mapping each new vertex to
    the set it replaces.  Identity when no vertex is that high.
    """
    hv = hm.h
    high = {v for v in g.rot if hv[v] >= h}
    if not high:
        return g, {}
    if next_id is None:
        next_id = max(g.rot) + 1
    rot = {v: list(ns) for v, ns in g.rot.items()}
    regions = {}
    label = {}
    for s in sorted(high):
        if s in label:
            continue
        vm = next_id
        next_id += 1
        comp = {s}
        label[s] = vm
        stack = [s]
        while stack:
            a = stack.pop()
            for b in g.rot[a]:
                if b in high and b not in label:
                    label[b] = vm
                    comp.add(b)
                    stack.append(b)
        regions[vm] = comp
    for vm, comp in regions.items():
        # clockwise walk around the region listing the outside neighbours
        start = None
        for a in sorted(comp):
            for b in g.rot[a]:
                if b not in comp:
                    start = (a, b)
                    break
            if start:
                break
        ring = []
        if start is not None:
            a, b = start
            guard = 0
            limit = 4 * sum(len(g.rot[v]) for v in comp) + 4
            while True:
                ring.append(b)
                c = g.succ(a, b)
                while c in comp:
                    a, c = c, g.succ(c, a)
                    guard += 1
                    if guard > limit:
                        raise RuntimeError("region walk did not close")
                b = c
                guard += 1
                if (a, b) == start or guard > limit:
                    break
        # drop cyclic repeats of the same neighbour
        out = []
        for w in ring:
            if not out or out[-1] != w:
                out.append(w)
        while len(out) > 1 and out[0] == out[-1]:
            out.pop()
        if len(set(out)) != len(out):
            raise RuntimeError("merged region touches a neighbour twice")
        for v in comp:
            del rot[v]
        rot[vm] = out
        for w in out:
            ns = rot[w]
            new = []
            for u in ns:
                if u in comp:
                    if not new or new[-1] != vm:
                        new.append(vm)
                else:
                    new.append(u)
            if len(new) > 1 and new[0] == vm and new[-1] == vm:
                new.pop()
            rot[w] = new
    outer = g.outer
    if outer is not None and (outer[0] in high or outer[1] in high):
        outer = None
    g2 = EmbeddedGraph(rot, outer)
    return g2, regions


def _cycle_record(ms, cycles, k):
    """Facts about one batch of cycles, for checking their guarantees."""
    hv = ms.heights.h
    out = []
    seen = set()
    overlap = False
    for cyc in cycles:
        m = set(cyc.m)
        if m & seen:
            overlap = True
        seen |= m
        reach = set()
        if m:
            s = next(iter(m))
            reach = {s}
            stack = [s]
            while stack:
                a = stack.pop()
                for b in ms.mct.adj[a]:
                    if b in m and b not in reach:
                        reach.add(b)
                        stack.append(b)
        out.append({"length": len(cyc), "min_height": min(hv[v] for v in cyc.vertices),
                    "m": sorted(m), "connected": reach == m and bool(m), "kind": cyc.kind,
                    "vertices": sorted(set(cyc.vertices)),
                    "heights": [hv[v] for v in sorted(set(cyc.vertices))]})
    tree = sorted((a, b) for a in range(len(ms.mct.adj)) for b in ms.mct.adj[a] if a < b)
    return {"k": k, "cycles": out, "disjoint": not overlap, "tree": tree}


def _expand(vs, regions):
    out = set()
    for v in vs:
        if v in regions:
            out |= regions[v]
        else:
            out.add(v)
    return out


def decompose_fixed_k(g, k, stats=None, depth=0, max_depth=200):
    """One recursion level on an almost triangulated biconnected graph.

    Returns ``(td, top)`` where ``top`` is the set of node indices created
    at this level (not by recursive calls), or None when k is too small.
    """
    if stats is not None:
        stats.depth = max(stats.depth, depth)
    if k <= 0:
        return None if g.num_edges() else (TreeDecomposition([set(g.rot)]), {0})
    if depth > max_depth:
        raise RecursionError("recursion depth limit reached")
    n = len(g.rot)
    if n <= 3:
        td = TreeDecomposition([set(g.rot)])
        return td, {0}
    with _Timer(stats, "heights"):
        hm = compute_heights(g)
    tall = 2 * k + 1
    top_h = max(hm.h.values())
    with _Timer(stats, "merge"):
        g2, regions = merge_high_regions(g, hm, tall)
        if regions:
            hm2 = compute_heights(g2)
        else:
            hm2 = hm
    with _Timer(stats, "mountain"):
        ms = good_mountain_structure(g2, hm2)
    cycles = []
    kept = ms.separators
    if top_h >= tall:
        with _Timer(stats, "shortcuts"):
            sets = compute_shortcut_sets(ms, k + 1)
        with _Timer(stats, "coast_cycles"):
            try:
                cycles, kept, cst = build_coast_cycles(ms, sets, k)
            except KTooSmall:
                if stats is not None:
                    stats.counts["k_too_small"] += 1
                return None
            except CoastCycleError:
                if stats is not None:
                    stats.counts["cycle_errors"] += 1
                return None
        if stats is not None:
            for key, v in cst.items():
                stats.counts["cycles_" + key] += v
            if stats.keep_cycles:
                stats.cycles.append(_cycle_record(ms, cycles, k))
    owner = {}
    for i, cyc in enumerate(cycles):
        for c in cyc.m:
            owner[c] = i
    with _Timer(stats, "components"):
        td = TreeDecomposition()
        designated = {}
        for c in range(len(ms.components)):
            try:
                tdc, des = component_td(ms, c)
            except ComponentTDError:
                if stats is not None:
                    stats.counts["component_errors"] += 1
                return None
            i = owner.get(c)
            if i is not None:
                cyc = cycles[i]
                inner = cyc.inner
                pset = set(cyc.vertices)
                for b in tdc.bags:
                    b -= inner
                    b |= pset
            off = td.absorb(tdc)
            for sid, node in des.items():
                designated[(c, sid)] = node + off
            if stats is not None:
                stats.counts["components"] += 1
        for x in ms.separators:
            a, b = ms.mct.sep_ends[x.sid]
            td.add_edge(designated[(a, x.sid)], designated[(b, x.sid)])
    top = set(range(len(td.bags)))
    # merged vertices can only remain inside cycles; expand defensively
    if regions:
        for bag in td.bags:
            hit = [v for v in bag if v in regions]
            for v in hit:
                bag.discard(v)
                bag |= regions[v]
                if stats is not None:
                    stats.counts["expanded_in_bag"] += 1
    # recursion on every inner graph
    for i, cyc in enumerate(cycles):
        pset = _expand(cyc.vertices, regions)
        inner = _expand(cyc.inner, regions)
        strict_inner = inner - pset
        if not strict_inner:
            continue
        edges = set()
        for f in g.faces:
            if any(a in strict_inner for a, _ in f):
                for a, b in f:
                    edges.add((a, b) if a < b else (b, a))
        with _Timer(stats, "restrict"):
            gp = restrict_edges(g, edges)
        res = decompose_general(gp, k, stats, depth + 1, max_depth)
        if res is None:
            return None
        sub, sub_top = res
        for j in sub_top:
            sub.bags[j] |= pset
        off = td.absorb(sub)
        # a bag of this level holding the cycle
        anchor = next(j for j in sorted(top) if pset <= td.bags[j])
        td.add_edge(anchor, off + min(sub_top))
        if stats is not None:
            stats.counts["recursions"] += 1
    return td, top


def decompose_general(g, k, stats=None, depth=0, max_depth=200):
    """Any embedded planar graph: split into blocks, almost triangulate each
    block, run one level per block and glue the blocks at cut vertices."""
    blocks = biconnected_components(g)
    td = TreeDecomposition()
    top = set()
    node_of = defaultdict(list)  # cut vertex -> nodes holding it
    next_id = max(g.rot, default=0) + 1
    for blk in blocks:
        bg = blk.graph
        if bg.outer is None and bg.num_edges():
            # a part not touching the outer face of g: any face may be outer
            f = max(bg.faces, key=len)
            bg = EmbeddedGraph(bg.rot, f[0])
        if len(bg.rot) <= 3:
            sub, sub_top = TreeDecomposition([set(bg.rot)]), {0}
        else:
            with _Timer(stats, "triangulate"):
                tg, added = almost_triangulate(bg, next_id)
            res = decompose_fixed_k(tg, k, stats, depth, max_depth)
            if res is None:
                return None
            sub, sub_top = res
            if added:
                for b in sub.bags:
                    b.difference_update(added)
        off = td.absorb(sub)
        top |= {j + off for j in sub_top}
        for v in blk.cut_vertices:
            j = next((t for t in sorted(sub_top) if v in sub.bags[t]), None)
            if j is None:
                j = next(t for t, b in enumerate(sub.bags) if v in b)
            node_of[v].append(j + off)
    # glue: the block-cut tree becomes a tree of bags
    parent = list(range(len(td.bags)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in td.edges:
        parent[find(a)] = find(b)
    for v, nodes in node_of.items():
        for j in nodes[1:]:
            ra, rb = find(nodes[0]), find(j)
            if ra != rb:
                parent[ra] = rb
                td.add_edge(nodes[0], j)
    td.connect_forest()
    return td, top


def _bag_bound(k):
    return 12 * k + 1


def _attempt(g, k, keep_cycles=False):
    """One run at fixed k; module level so worker processes can call it."""
    st = DecomposeStats()
    st.keep_cycles = keep_cycles
    t0 = time.perf_counter()
    res = decompose_general(g, k, st)
    td = res[0] if res is not None else None
    ok = td is not None and td.max_bag() <= _bag_bound(k)
    if td is not None and not ok:
        st.counts["bag_bound_rejections"] += 1
    st.attempts.append({"k": k, "ok": ok, "seconds": round(time.perf_counter() - t0, 6),
                        "max_bag": td.max_bag() if td is not None else None})
    return (td if ok else None), st


def _merge_stats(into, part):
    for key, v in part.timings.items():
        into.timings[key] += v
    for key, v in part.counts.items():
        into.counts[key] += v
    into.depth = max(into.depth, part.depth)
    into.attempts.extend(part.attempts)
    into.cycles.extend(part.cycles)


def decompose(g, k="auto", stats=None, compact=True, jobs=1):
    """Tree decomposition of an embedded planar graph.

    With ``k='auto'`` the smallest k (geometric search, then bisection) is
    found for which one run succeeds and keeps every bag within 12k+1.
    ``jobs > 1`` runs the geometric candidates in worker processes.
    Returns ``(td, k_used)``; raises KTooSmall for a fixed k that fails.
    """
    if stats is None:
        stats = DecomposeStats()
    if not g.rot:
        return TreeDecomposition(), 0
    if g.num_edges() == 0:
        td = TreeDecomposition([{v} for v in g.rot])
        td.connect_forest()
        return td, 0

    def attempt(kk):
        td, st = _attempt(g, kk, stats.keep_cycles)
        _merge_stats(stats, st)
        return td

    def finish(td, kk):
        return (td.compact() if compact else td), kk

    if k != "auto":
        k = int(k)
        td = attempt(k)
        if td is None:
            raise KTooSmall(f"no decomposition with k={k}")
        return finish(td, k)
    n = len(g.rot)
    lo, hi, best = 0, 1, None
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            while best is None:
                ks = [hi << i for i in range(jobs)]
                outs = list(pool.map(_attempt, [g] * jobs, ks, [stats.keep_cycles] * jobs))
                for kk, (td, st) in zip(ks, outs):
                    _merge_stats(stats, st)
                for kk, (td, st) in zip(ks, outs):
                    if td is not None:
                        best, hi = td, kk
                        break
                    lo = kk
                if best is None:
                    if ks[-1] >= n:
                        return TreeDecomposition([set(g.rot)]), n
                    hi = ks[-1] * 2
    else:
        while True:
            td = attempt(hi)
            if td is not None:
                best = td
                break
            lo = hi
            if hi >= n:
                # a single bag is always valid
                return TreeDecomposition([set(g.rot)]), n
            hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        td = attempt(mid)
        if td is not None:
            best, hi = td, mid
        else:
            lo = mid
    return finish(best, hi)
