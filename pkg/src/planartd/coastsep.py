"""Coast separators: minimum vertex cuts around tall crests and the set of
non-crossing cycles that cut every tall crest off the coast.

A coast separator for a crest H is a vertex set that disconnects H from
the coast.  It is h-high when all its vertices have height at least h and
h-minimal when it has minimum size and, among those, encloses as few inner
faces as possible.
"""

from collections import deque

from .shortcuts import classify_shortcut_free, composed_cycle, side_of

INF = 1 << 30


class KTooSmall(RuntimeError):
    """Raised when a required coast separator does not exist for this k."""


class CoastCycleError(RuntimeError):
    pass


class CoastCycle:
    """A cycle used as coast separator.

    ``vertices`` is the cyclic vertex order when known, ``inner`` the vertex
    set of its inner graph (cycle included) and ``m`` the ids of components
    whose crest it encloses.
    """

    def __init__(self, vertices, kind, owner, inner=None, m=None, sep=None):
        self.vertices = list(vertices)
        self.kind = kind
        self.owner = owner
        self.inner = inner
        self.m = m
        self.sep = sep

    @property
    def vset(self):
        return set(self.vertices)

    def __len__(self):
        return len(set(self.vertices))

    def __repr__(self):
        return f"CoastCycle({self.kind}, owner={self.owner}, len={len(self)}, m={sorted(self.m or ())})"


def inner_graph(g, hm, cycle, start):
    """Vertices enclosed by ``cycle`` plus the cycle itself.

    Depth-first search from the vertices of ``start`` that never enters a
    cycle vertex.  Reaching the coast means ``start`` was not enclosed.
    """
    h = hm.h
    cyc = set(cycle)
    for v in cyc:
        if h[v] <= 1:
            raise ValueError(f"cycle vertex {v} lies on the coast")
    seen = set(cyc)
    stack = [v for v in start if v not in cyc]
    seen.update(stack)
    while stack:
        v = stack.pop()
        if h[v] <= 1:
            raise ValueError("start vertices are not enclosed by the cycle")
        for u in g.rot[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def _boundary_order(g, region_vertices, cut):
    """Cyclic order of ``cut`` along the boundary of the faces that touch
    ``region_vertices``; falls back to sorted order for pinched regions."""
    fo = g.face_of
    faces = g.faces
    inside = set()
    for v in region_vertices:
        for u in g.rot[v]:
            inside.add(fo[(v, u)])
    nxt = {}
    for f in inside:
        for a, b in faces[f]:
            if fo[(b, a)] not in inside:
                if a in nxt:
                    return sorted(cut)
                nxt[a] = b
    if not nxt:
        return sorted(cut)
    start = min(nxt)
    order = [start]
    v = nxt[start]
    while v != start and len(order) <= len(nxt):
        order.append(v)
        v = nxt.get(v)
        if v is None:
            return sorted(cut)
    if len(order) != len(nxt) or set(order) != set(cut):
        return sorted(cut)
    return order


def _max_flow_cut(g, region, sources, sinks, attach, capped, limit):
    """Unit vertex-capacity cut between ``sources`` and ``sinks`` inside
    ``region``; vertices in ``attach`` also lead to the sink.

    Returns the cut closest to the sources, or None if more than ``limit``
    vertices are needed.
    """
    S, T = ("s",), ("t",)
    cap = {}

    def arc(a, b, c):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    for v in region:
        if v in sinks:
            continue
        vin, vout = (v, 0), (v, 1)
        if v in sources:
            arc(S, vout, INF)
            arc(vin, vout, INF)
        elif v in capped:
            arc(vin, vout, 1)
        else:
            # unusable vertex: traffic passes but it cannot be cut
            arc(vin, vout, INF)
        if v in attach:
            arc(vout, T, INF)
        for u in g.rot[v]:
            if u not in region or u in sources:
                continue
            if u in sinks:
                arc(vout, T, INF)
            else:
                arc(vout, (u, 0), INF)
    if S not in cap:
        return None
    flow = 0
    while True:
        prev = {S: None}
        dq = deque([S])
        while dq and T not in prev:
            a = dq.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    dq.append(b)
        if T not in prev:
            break
        # unit augmentation is enough: every path crosses a capacity-1 arc
        # unless it is uncuttable, which the INF check below catches
        b = T
        bott = INF
        while prev[b] is not None:
            a = prev[b]
            bott = min(bott, cap[a][b])
            b = a
        if bott >= INF:
            return None
        b = T
        while prev[b] is not None:
            a = prev[b]
            cap[a][b] -= bott
            cap[b][a] += bott
            b = a
        flow += bott
        if flow > limit:
            return None
    reach = set(prev)
    cut = [v for v in region if (v, 0) in reach and (v, 1) not in reach]
    return sorted(cut)


def h_minimal_coast_separator(g, hm, crest, h, limit, region=None, attach=()):
    """Smallest h-high vertex set cutting ``crest`` off the coast.

    Only vertices in ``region`` (default: all) are used; vertices in
    ``attach`` count as connected to the coast through an extra outer
    vertex.  Among all minimum cuts the one closest to the crest is
    returned, which encloses the fewest faces.  None when more than
    ``limit`` vertices would be needed.
    """
    hv = hm.h
    if region is None:
        region = set(g.rot)
    else:
        region = set(region)
    src = set(crest.vertices) if hasattr(crest, "vertices") else set(crest)
    if any(hv[v] < h for v in src) or src & set(attach):
        return None
    sinks = {v for v in region if hv[v] <= h - 1}
    capped = {v for v in region if hv[v] >= h and v not in src}
    return _max_flow_cut(g, region, src, sinks, set(attach), capped, limit)


def essential_cycle(x):
    """Cyclic vertex order of the essential boundary of a separator with a
    lowpoint: down P1 to the lowpoint, back up P2."""
    low = x.lowpoint
    p1, p2 = list(x.p1), list(x.p2)
    a = p1[: p1.index(low) + 1]
    b = p2[: p2.index(low) + 1]
    back = b[:-1]
    if back and back[0] == a[0]:
        back = back[1:]
    return a + list(reversed(back))


def _best_shortcut(sets, sid, side, limit):
    best = None
    for p in sets.get(sid, side).values():
        if p.length > limit:
            continue
        key = (p.length, abs(p.w), p.s, p.t)
        if best is None or key < best[0]:
            best = (key, p)
    return best[1] if best else None


def s_prime_component(ms, c, free_seps):
    """Component ids reachable from ``c`` without crossing a free separator."""
    out = {c}
    stack = [c]
    while stack:
        a = stack.pop()
        for b, x in ms.mct.adj[a].items():
            if b not in out and x.sid not in free_seps:
                out.add(b)
                stack.append(b)
    return out


def build_coast_cycles(ms, sets, k, strict=True):
    """Cycles cutting every crest of height 2k+1 off the coast.

    Returns ``(cycles, kept)`` where ``kept`` are the separators whose top
    edge does not lie between two components of one cycle's m-set.
    Raises KTooSmall when a needed cycle does not exist.
    """
    g = ms.graph
    hm = ms.heights
    hv = hm.h
    h = k + 1
    tall = 2 * k + 1
    ncomp = len(ms.components)
    stats = {"mincut": 0, "essential": 0, "composed": 0, "step_c": 0,
             "step_c_enclosed": 0, "roots": 0}
    free_seps, free_comps = classify_shortcut_free(ms, sets, k, h)
    enc = ms.enclosed_side()
    xc = {}
    for x in ms.separators:
        low = x.lowpoint
        if low is not None and hv[low] >= h:
            xc[enc[x.sid]] = x
    crest_of = {}
    for c, comp in enumerate(ms.components):
        for v in comp.crest.vertices:
            crest_of[v] = c

    cycles = []
    covered = [False] * ncomp

    def finish(cyc, start_comp):
        start = ms.components[start_comp].crest.vertices
        try:
            inner = inner_graph(g, hm, cyc.vertices, start)
        except ValueError as e:
            raise CoastCycleError(f"{cyc.kind} cycle of component {start_comp}: {e}")
        m = set()
        for v in inner:
            c = crest_of.get(v)
            if c is not None and c not in m:
                if all(u in inner for u in ms.components[c].crest.vertices):
                    m.add(c)
        cyc.inner = inner
        cyc.m = m
        for c in m:
            if covered[c] and strict:
                raise CoastCycleError(f"component {c} enclosed by two cycles")
            covered[c] = True
        cycles.append(cyc)
        stats[cyc.kind] = stats.get(cyc.kind, 0) + 1
        return cyc

    # crests in shortcut-free components: minimum cuts
    hplus = set(free_comps)
    for c in sorted(hplus):
        cr = ms.components[c].crest
        if cr.height != tall or covered[c]:
            continue
        region_ids = s_prime_component(ms, c, free_seps)
        region = set()
        for r in region_ids:
            region |= ms.components[r].vertices
        attach = set()
        for r in region_ids:
            for b, x in ms.mct.adj[r].items():
                if x.sid in free_seps and b not in region_ids:
                    attach |= x.vertices & region
        cut = h_minimal_coast_separator(g, hm, cr, h, k, region, attach)
        if cut is None:
            raise KTooSmall(f"no {h}-high coast separator of size <= {k} for crest {sorted(cr.vertices)[:4]}")
        inside = inner_graph(g, hm, cut, cr.vertices) - set(cut)
        order = _boundary_order(g, inside, cut)
        finish(CoastCycle(order, "mincut", c), c)

    # forest of the remaining crests
    alive = [not covered[c] and c not in hplus for c in range(ncomp)]
    nbrs = [[] for _ in range(ncomp)]
    for a, b, x in ms.mct.edges():
        if alive[a] and alive[b] and x.sid not in free_seps:
            nbrs[a].append(b)
            nbrs[b].append(a)
    seen = [False] * ncomp
    trees = []
    for c in range(ncomp):
        if alive[c] and not seen[c]:
            tree = [c]
            seen[c] = True
            i = 0
            while i < len(tree):
                for b in nbrs[tree[i]]:
                    if not seen[b]:
                        seen[b] = True
                        tree.append(b)
                i += 1
            trees.append(tree)

    def cycle_for(c, x, side):
        p = _best_shortcut(sets, x.sid, side, k)
        if p is None:
            return None
        return CoastCycle(composed_cycle(x, p), "composed", c, sep=x)

    def ess_for(c):
        x = xc[c]
        return CoastCycle(essential_cycle(x), "essential", c, sep=x)

    for tree in trees:
        marked = set()
        parent = {}
        ph = {}
        unmarked_deg = {c: len(nbrs[c]) for c in tree}
        work = deque(c for c in tree if unmarked_deg[c] == 1)
        in_w = set(tree)
        while work:
            c = work.popleft()
            if c not in in_w or unmarked_deg[c] != 1:
                continue
            in_w.discard(c)
            other = next(b for b in nbrs[c] if b not in marked)
            if c in xc:
                ph[c] = ess_for(c)
            else:
                x = ms.mct.adj[c][other]
                cyc = cycle_for(c, x, side_of(ms, x, c))
                if cyc is None:
                    continue
                ph[c] = cyc
            marked.add(c)
            parent[c] = other
            for b in nbrs[c]:
                unmarked_deg[b] -= 1
                if b in in_w and unmarked_deg[b] == 1:
                    work.append(b)
        roots = [c for c in tree if c not in marked]
        stats["roots"] += len(roots)
        for c in roots:
            stats["step_c"] += 1
            if c in xc:
                stats["step_c_enclosed"] += 1
                ph[c] = ess_for(c)
                continue
            best = None
            for b, x in sorted(ms.mct.adj[c].items()):
                cyc = cycle_for(c, x, side_of(ms, x, c))
                if cyc is not None and (best is None or len(cyc) < len(best)):
                    best = cyc
            if best is None:
                raise KTooSmall(f"component {c} has no cycle around its crest")
            ph[c] = best
        # depth in the intree
        children = {c: [] for c in tree}
        for c, p in parent.items():
            children[p].append(c)
        depth = {}
        for r in roots:
            depth[r] = 0
            stack = [r]
            while stack:
                a = stack.pop()
                for b in children[a]:
                    depth[b] = depth[a] + 1
                    stack.append(b)
        if len(depth) != len(tree):
            raise CoastCycleError("marking did not produce an intree")
        removed = set()

        def take(c):
            cyc = finish(ph[c], c)
            for d in cyc.m:
                removed.add(d)
            if c not in cyc.m:
                raise CoastCycleError(f"cycle of component {c} misses its own crest")

        for r in roots:
            # deepest node whose enclosing separator points at a child
            best = None
            sub = [r]
            i = 0
            while i < len(sub):
                a = sub[i]
                i += 1
                sub.extend(children[a])
                if a in xc and any(ms.mct.adj[a].get(b) is xc[a] for b in children[a]):
                    if best is None or depth[a] > depth[best]:
                        best = a
            take(best if best is not None else r)
        # top-down over what is left
        order = sorted(tree, key=lambda c: (depth[c], c))
        for c in order:
            if c in removed:
                continue
            take(c)

    # separators inside one m-set are dropped
    owner = {}
    for i, cyc in enumerate(cycles):
        for c in cyc.m:
            owner[c] = i
    kept = []
    for x in ms.separators:
        a, b = ms.mct.sep_ends[x.sid]
        if a in owner and owner.get(a) == owner.get(b):
            continue
        kept.append(x)
    for cyc in cycles:
        if len(cyc) > 3 * k - 1 or any(hv[v] < h for v in cyc.vertices):
            if strict:
                raise CoastCycleError(f"cycle violates size/height bounds: {cyc}")
    stats["cycles"] = len(cycles)
    stats["free_separators"] = len(free_seps)
    stats["free_components"] = len(free_comps)
    return cycles, kept, stats
