"""Extended components, pseudo shortcut sets and shortcut-free classification.

A pseudo shortcut of a separator X on one side D is a path inside D between
two essential-boundary vertices of X that is strictly shorter than the crest
path joining them and avoids the coast.  Among shortest ones we keep the one
whose cycle with the crest path encloses the fewest inner faces.  Enclosed
face counts come from dart potentials: every non-tree edge of a primal
spanning tree carries the signed size of its dual subtree, so that the sum
over a simple cycle traversed counter-clockwise equals the number of faces
it encloses.
"""

import heapq
from collections import deque


class Shortcut:
    __slots__ = ("sid", "side", "s", "t", "path", "length", "w")

    def __init__(self, sid, side, path, w):
        self.sid = sid
        self.side = side
        self.s = path[0]
        self.t = path[-1]
        self.path = tuple(path)
        self.length = len(path) - 1
        self.w = w

    def __repr__(self):
        return f"Shortcut(sep={self.sid}, {self.side}, {list(self.path)})"


def dart_potentials(g):
    """Dart weights whose sum around a simple ccw cycle counts enclosed faces."""
    faces = g.faces
    fo = g.face_of
    of = g.outer_face()
    pot = {}
    if of is None:
        return pot
    # primal BFS tree
    tree = set()
    for comp in g.components():
        root = min(comp)
        seen = {root}
        dq = deque([root])
        while dq:
            v = dq.popleft()
            for u in g.rot[v]:
                if u not in seen:
                    seen.add(u)
                    tree.add((v, u) if v < u else (u, v))
                    dq.append(u)
    # dual tree over the remaining edges, rooted at the outer face
    parent = {of: None}
    via = {}
    order = [of]
    i = 0
    while i < len(order):
        f = order[i]
        i += 1
        for a, b in faces[f]:
            e = (a, b) if a < b else (b, a)
            if e in tree:
                continue
            f2 = fo[(b, a)]
            if f2 not in parent:
                parent[f2] = f
                via[f2] = (b, a)  # dart of the edge whose left face is f2
                order.append(f2)
    size = {f: (0 if f == of else 1) for f in order}
    for f in reversed(order):
        p = parent[f]
        if p is not None:
            size[p] += size[f]
    for f, d in via.items():
        pot[d] = size[f]
        pot[(d[1], d[0])] = -size[f]
    return pot


def path_potential(pot, path):
    return sum(pot.get((path[i], path[i + 1]), 0) for i in range(len(path) - 1))


def extended_component(ms, c):
    """(vertices, edges) of component c plus the border edges of every
    separator with a top edge in c."""
    comp = ms.components[c]
    edges = set(comp.edges)
    for x in ms.separators_at(c):
        edges |= x.border_edges
    verts = set(comp.vertices)
    for a, b in edges:
        verts.add(a)
        verts.add(b)
    return verts, edges


class ShortcutSets:
    """``sets[(sid, side)]`` maps an endpoint pair (s < t) to a Shortcut.

    ``side`` is ``'down'`` for the side holding the child component of the
    separator's tree edge and ``'up'`` for the other one.
    """

    def __init__(self, ms, h, sets):
        self.ms = ms
        self.h = h
        self.sets = sets

    def get(self, sid, side):
        return self.sets.get((sid, side), {})

    def long_view(self, sid, side, limit):
        return {k: p for k, p in self.get(sid, side).items() if p.length <= limit}

    def has_short(self, sid, side, limit):
        return any(p.length <= limit for p in self.get(sid, side).values())


def _crest_lengths(x, s, pot):
    """BFS distance and potential along border edges from s, never passing
    through the lowpoint (it may still be an endpoint)."""
    adj = {}
    for a, b in x.border_edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    low = x.lowpoint
    dist = {s: 0}
    prev = {s: None}
    dq = deque([s])
    while dq:
        a = dq.popleft()
        if a == low and a != s:
            continue
        for b in sorted(adj[a]):
            if b not in dist:
                dist[b] = dist[a] + 1
                prev[b] = a
                dq.append(b)
    return dist, prev


def _search(adj, s, targets, limits, pot_back, skip):
    """Shortest paths from s; among shortest ones pick, per target, the
    extreme potential that makes the closed cycle smallest."""
    maxlim = max(limits.values(), default=0)
    dist = {s: 0}
    heap = [(0, s)]
    order = []
    done = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done or d > dist[v]:
            continue
        done.add(v)
        order.append(v)
        for u, wgt, wp, lab, ex in adj.get(v, ()):
            if lab is not None and lab == skip:
                continue
            nd = d + wgt
            if nd > maxlim:
                continue
            if u not in dist or nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    lo = {s: (0, None)}
    hi = {s: (0, None)}
    for v in order:
        dv = dist[v]
        lv, hv = lo[v][0], hi[v][0]
        for e in adj.get(v, ()):
            u, wgt, wp, lab, ex = e
            if lab is not None and lab == skip:
                continue
            if u not in dist or dist[u] != dv + wgt:
                continue
            cand = lv + wp
            if u not in lo or cand < lo[u][0]:
                lo[u] = (cand, (v, e))
            cand = hv + wp
            if u not in hi or cand > hi[u][0]:
                hi[u] = (cand, (v, e))
    out = {}
    for t in targets:
        if t == s or t not in dist or dist[t] >= limits[t] + 1:
            continue
        back = pot_back[t]
        table = lo if abs(lo[t][0] + back) <= abs(hi[t][0] + back) else hi
        seq = []
        v = t
        while table[v][1] is not None:
            pv, e = table[v][1]
            seq.append((pv, e))
            v = pv
        seq.reverse()
        path = [s]
        for pv, (u, wgt, wp, lab, ex) in seq:
            if ex is None:
                path.append(u)
            elif ex[0] == pv:
                path.extend(ex[1:])
            else:
                path.extend(reversed(ex[:-1]))
        out[t] = (path, table[t][0])
    return out


def _base_adj(ms, c, thr, pot, hgt):
    verts, edges = extended_component(ms, c)
    adj = {}
    for a, b in edges:
        if hgt[a] >= thr and hgt[b] >= thr:
            adj.setdefault(a, []).append((b, 1, pot.get((a, b), 0), None, None))
            adj.setdefault(b, []).append((a, 1, pot.get((b, a), 0), None, None))
    return adj


def _add_shortcut_edges(adj, scs, label):
    for p in scs.values():
        a, b = p.s, p.t
        adj.setdefault(a, []).append((b, p.length, p.w, label, p.path))
        adj.setdefault(b, []).append((a, p.length, -p.w, label, p.path))


def _compute_for(ms, x, side, adj, thr, pot, hgt, skip=None):
    ess = sorted(v for v in x.essential_vertices if hgt[v] >= thr)
    res = {}
    for s in ess:
        targets = [t for t in ess if t > s]
        if not targets or s not in adj:
            continue
        cdist, cprev = _crest_lengths(x, s, pot)
        limits = {}
        pot_back = {}
        for t in targets:
            if t not in cdist:
                continue
            limits[t] = cdist[t] - 1
            # crest path t -> s
            cp = [t]
            while cp[-1] != s:
                cp.append(cprev[cp[-1]])
            pot_back[t] = path_potential(pot, cp)
        targets = [t for t in targets if t in limits]
        found = _search(adj, s, targets, limits, pot_back, skip)
        for t, (path, w) in found.items():
            res[(s, t)] = Shortcut(x.sid, side, path, w)
    return res


def compute_shortcut_sets(ms, h, pot=None):
    """h-high pseudo shortcut sets for every separator and both sides."""
    if pot is None:
        pot = dart_potentials(ms.graph)
    hgt = ms.heights.h
    sets = {}
    parent, order = ms.parent, ms.order
    base = {}
    for c in order:
        base[c] = _base_adj(ms, c, h, pot, hgt)
    # bottom-up: the side of each parent separator that holds the child
    for c in reversed(order):
        p = parent[c]
        if p < 0:
            continue
        x0 = ms.mct.adj[c][p]
        adj = {v: list(es) for v, es in base[c].items()}
        for ch in ms.children(c):
            xi = ms.mct.adj[ch][c]
            _add_shortcut_edges(adj, sets.get((xi.sid, "down"), {}), xi.sid)
        sets[(x0.sid, "down")] = _compute_for(ms, x0, "down", adj, h, pot, hgt)
    # top-down: the side of each child separator that holds the parent
    for p in order:
        kids = ms.children(p)
        if not kids:
            continue
        adj = {v: list(es) for v, es in base[p].items()}
        up = ms.sep_to_parent(p)
        if up is not None:
            _add_shortcut_edges(adj, sets.get((up.sid, "up"), {}), up.sid)
        for ch in kids:
            xi = ms.mct.adj[ch][p]
            _add_shortcut_edges(adj, sets.get((xi.sid, "down"), {}), xi.sid)
        for ch in kids:
            xi = ms.mct.adj[ch][p]
            sets[(xi.sid, "up")] = _compute_for(ms, xi, "up", adj, h, pot, hgt, skip=xi.sid)
    return ShortcutSets(ms, h, sets)


def side_of(ms, x, c):
    """'down' if component c lies in the subtree below x, else 'up'."""
    child, _ = ms.sides(x)
    sub = ms.parent
    v = c
    while v >= 0:
        if v == child:
            return "down"
        v = sub[v]
    return "up"


def classify_shortcut_free(ms, sets, limit, h):
    """Separators and components free of limit-long h-high pseudo shortcuts."""
    hgt = ms.heights.h
    free_seps = set()
    for x in ms.separators:
        low = x.lowpoint
        if low is not None and hgt[low] >= h:
            continue
        if sets.has_short(x.sid, "down", limit) or sets.has_short(x.sid, "up", limit):
            continue
        free_seps.add(x.sid)
    enc = ms.enclosed_side()
    free_comps = set()
    for c in range(len(ms.components)):
        ok = True
        for nb, x in ms.mct.adj[c].items():
            side = "down" if ms.parent[c] == nb else "up"
            if sets.has_short(x.sid, side, limit):
                ok = False
                break
            if enc.get(x.sid) == c and hgt[x.lowpoint] >= h:
                ok = False
                break
        if ok:
            free_comps.add(c)
    return free_seps, free_comps


def composed_cycle(x, p):
    """Shortcut followed by the crest path back to its start."""
    if p.s not in x.essential_vertices or p.t not in x.essential_vertices:
        raise ValueError("shortcut endpoints are not on the separator")
    _, prev = _crest_lengths(x, p.s, None)
    back = [p.t]
    while back[-1] != p.s:
        back.append(prev[back[-1]])
    return list(p.path) + back[1:-1]
