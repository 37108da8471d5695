"""Tree decompositions of width 3l-1 for extended components.

The construction follows the classical scheme for l-outerplanar graphs:
split high-degree vertices into paths of degree-3 copies, pick a spanning
tree whose restriction to every height level stays connected and uses as
many inner edges as possible, and put one endpoint of every non-tree edge
into all bags along its fundamental cycle.

To get one bag holding every vertex of each separator with its top edge
in the component, each such separator receives a ladder of virtual
vertices on its far side before the degree reduction.  The ladder is
hung into the spanning tree below the top edge, so the tree-edge node
joining it collects all separator vertices.
"""

from collections import defaultdict

from .embed import EmbeddedGraph, restrict_edges
from .layering import compute_heights
from .shortcuts import extended_component


class TreeDecomposition:
    """Bags indexed 0..n-1 plus an undirected edge list forming a forest."""

    def __init__(self, bags=None, edges=None):
        self.bags = [set(b) for b in (bags or [])]
        self.edges = [tuple(e) for e in (edges or [])]

    def add_bag(self, bag):
        self.bags.append(set(bag))
        return len(self.bags) - 1

    def add_edge(self, a, b):
        self.edges.append((a, b))

    def absorb(self, other):
        """Append ``other``'s nodes; returns the index offset."""
        off = len(self.bags)
        self.bags.extend(set(b) for b in other.bags)
        self.edges.extend((a + off, b + off) for a, b in other.edges)
        return off

    @property
    def width(self):
        return max((len(b) for b in self.bags), default=0) - 1

    def max_bag(self):
        return max((len(b) for b in self.bags), default=0)

    def __len__(self):
        return len(self.bags)

    def vertices(self):
        out = set()
        for b in self.bags:
            out |= b
        return out

    def adjacency(self):
        adj = [[] for _ in self.bags]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def connect_forest(self):
        """Join the trees of the forest by arbitrary edges."""
        n = len(self.bags)
        if n == 0:
            return
        adj = self.adjacency()
        seen = [False] * n
        roots = []
        for s in range(n):
            if seen[s]:
                continue
            roots.append(s)
            seen[s] = True
            stack = [s]
            while stack:
                a = stack.pop()
                for b in adj[a]:
                    if not seen[b]:
                        seen[b] = True
                        stack.append(b)
        for r in roots[1:]:
            self.edges.append((roots[0], r))

    def compact(self):
        """Contract tree edges whose one end bag is a subset of the other."""
        n = len(self.bags)
        if n <= 1:
            return self
        adj = [set() for _ in range(n)]
        for a, b in self.edges:
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        alive = [True] * n
        changed = True
        while changed:
            changed = False
            for a in range(n):
                if not alive[a]:
                    continue
                for b in list(adj[a]):
                    if self.bags[a] <= self.bags[b]:
                        # fold a into b
                        for c in adj[a]:
                            if c != b:
                                adj[c].discard(a)
                                adj[c].add(b)
                                adj[b].add(c)
                        adj[b].discard(a)
                        adj[a] = set()
                        alive[a] = False
                        changed = True
                        break
        idx = {}
        bags = []
        for a in range(n):
            if alive[a]:
                idx[a] = len(bags)
                bags.append(self.bags[a])
        edges = []
        for a in range(n):
            if alive[a]:
                for b in adj[a]:
                    if a < b and alive[b]:
                        edges.append((idx[a], idx[b]))
        self.bags = bags
        self.edges = edges
        return self

    def __repr__(self):
        return f"TreeDecomposition(nodes={len(self.bags)}, width={self.width})"


class ComponentTDError(RuntimeError):
    pass


def _insert_after(rot, v, a, x):
    ns = rot[v]
    ns.insert(ns.index(a) + 1, x)


def _insert_before(rot, v, a, x):
    ns = rot[v]
    ns.insert(ns.index(a), x)


def _replace(rot, v, old, new):
    ns = rot[v]
    ns[ns.index(old)] = new


def _between(ns, a, b):
    """Neighbours strictly clockwise after ``a`` and before ``b``."""
    i = ns.index(a)
    out = []
    d = len(ns)
    for k in range(1, d):
        w = ns[(i + k) % d]
        if w == b:
            return out
        out.append(w)
    raise ComponentTDError("rotation does not contain the closing neighbour")


def degree_reduce(rot, heights, outer_dart, keep=()):
    """Split every vertex of degree >= 4 (not in ``keep``) into a path of
    degree-3 copies laid along a face that contains a lower vertex, or the
    outer face on the coast.

    Returns ``(rot2, copy_of, outer_dart2)``; ``copy_of`` maps every new
    vertex to the vertex it replaces.
    """
    g = EmbeddedGraph(rot, outer_dart)
    faces = g.faces
    fo = g.face_of
    of = g.outer_face()
    fmin = [min(heights[d[0]] for d in f) for f in faces]
    next_id = max(rot) + 1
    attach = {}
    chains = {}
    copy_of = {}
    for v in sorted(rot):
        ns = rot[v]
        d = len(ns)
        if d < 4 or v in keep:
            continue
        hv = heights[v]
        pick = None
        for a in ns:
            f = fo[(a, v)]
            if (hv == 1 and f == of) or (hv > 1 and f != of and fmin[f] == hv - 1):
                pick = a
                break
        if pick is None:
            for a in ns:
                if fmin[fo[(a, v)]] < hv or fo[(a, v)] == of:
                    pick = a
                    break
        if pick is None:
            pick = ns[-1]
        i = ns.index(pick)
        order = [ns[(i + 1 + t) % d] for t in range(d)]  # u_1 .. u_d
        cps = [v] + list(range(next_id, next_id + d - 3))
        next_id += d - 3
        for c in cps[1:]:
            copy_of[c] = v
        at = {}
        at[order[0]] = cps[0]
        at[order[1]] = cps[0]
        for t in range(2, d - 2):
            at[order[t]] = cps[t - 1]
        at[order[d - 2]] = cps[-1]
        at[order[d - 1]] = cps[-1]
        attach[v] = at
        chains[v] = (cps, order)

    def tr(self_v, u):
        if u in attach:
            return attach[u][self_v]
        return u

    out = {}
    for v, ns in rot.items():
        if v in chains:
            cps, order = chains[v]
            m = len(cps)
            for t, c in enumerate(cps):
                if m == 1:
                    r = [tr(v, u) for u in order]
                elif t == 0:
                    r = [tr(v, order[0]), tr(v, order[1]), cps[1]]
                elif t == m - 1:
                    r = [cps[t - 1], tr(v, order[-2]), tr(v, order[-1])]
                else:
                    r = [cps[t - 1], tr(v, order[t + 1]), cps[t + 1]]
                out[c] = r
        else:
            out[v] = [tr(v, u) for u in ns]
    a, b = outer_dart
    a2 = tr(b, a) if a in attach else a
    b2 = tr(a, b) if b in attach else b
    return out, copy_of, (a2, b2)


class _Sep:
    __slots__ = ("sid", "x", "A", "B", "deg", "ladder")

    def __init__(self, sid, x, A, B):
        self.sid = sid
        self.x = x
        self.A = A
        self.B = B
        self.deg = False
        self.ladder = None


def _up_connected_tree(vertices, edges, heights, outer_edge):
    """Spanning forest built level by level from the top, inner edges first."""
    parent = {v: v for v in vertices}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    levels = defaultdict(list)
    for a, b in edges:
        levels[min(heights[a], heights[b])].append((a, b))
    tree = []
    for i in sorted(levels, reverse=True):
        cand = sorted(levels[i], key=lambda e: (outer_edge(e, i), e))
        for a, b in cand:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                tree.append((a, b))
    return tree


def standard_td(vertices, edges, tree_edges, choose=None):
    """Tree decomposition with skeleton ``tree_edges``.

    Nodes are the vertices and the tree edges; every non-tree edge puts one
    endpoint (``choose(a, b)``, default the smaller) into all bags on its
    fundamental cycle.  Returns ``(td, vnode, enode)``.
    """
    vs = list(vertices)
    vnode = {v: i for i, v in enumerate(vs)}
    bags = [{v} for v in vs]
    tedges = []
    enode = {}
    adj = defaultdict(list)
    for a, b in tree_edges:
        k = len(bags)
        bags.append({a, b})
        enode[(a, b)] = k
        enode[(b, a)] = k
        tedges.append((vnode[a], k))
        tedges.append((vnode[b], k))
        adj[a].append(b)
        adj[b].append(a)
    # root every tree of the skeleton
    par = {}
    dep = {}
    for s in vs:
        if s in par:
            continue
        par[s] = None
        dep[s] = 0
        stack = [s]
        while stack:
            a = stack.pop()
            for b in adj[a]:
                if b not in par:
                    par[b] = a
                    dep[b] = dep[a] + 1
                    stack.append(b)
    tset = {(a, b) for a, b in tree_edges} | {(b, a) for a, b in tree_edges}
    for a, b in edges:
        if (a, b) in tset:
            continue
        z = choose(a, b) if choose else min(a, b)
        x, y = a, b
        bags[vnode[x]].add(z)
        bags[vnode[y]].add(z)
        while x != y:
            if dep[x] < dep[y]:
                x, y = y, x
            p = par[x]
            if p is None:
                raise ComponentTDError("non-tree edge joins two skeleton trees")
            bags[enode[(x, p)]].add(z)
            x = p
            bags[vnode[x]].add(z)
    td = TreeDecomposition(bags, tedges)
    return td, vnode, enode


def _orient(ms, c, x):
    """(A, B) with the far side of x on the left of reversed(A) + B."""
    g = ms.graph
    A, B = list(x.p1), list(x.p2)
    a, b = A[0], B[1] if x.kind == "rep" else B[0]
    f = g.face_of[(a, b)]
    if ms.face_comp.get(f) == c:
        return B, A, True
    return A, B, False


def component_td(ms, c, with_stats=False):
    """Decomposition of ext(c) with one designated node per separator whose
    top edge lies in c.  Returns ``(td, designated)`` (plus stats)."""
    g = ms.graph
    hv = ms.heights.h
    stats = {"strip": 0, "lowpoint_splits": 0, "one_top": 0, "ladders": 0,
             "height_mismatch": 0, "tree_fallback": 0, "reduced": 0}
    verts, edges = extended_component(ms, c)
    seps = ms.separators_at(c)
    enc = ms.enclosing_separator(c)
    extra = set()
    strip = 0
    if enc is not None:
        strip = hv[enc.lowpoint]
        stats["strip"] = strip
        extra = {v for v in verts if hv[v] <= strip}
        edges = {(a, b) for a, b in edges if hv[a] > strip and hv[b] > strip}
        verts = {v for v in verts if hv[v] > strip}
    sub = restrict_edges(g, edges, find_outer=False) if edges else EmbeddedGraph({v: [] for v in verts})
    for v in verts:
        if v not in sub.rot:
            # isolated after stripping
            sub = EmbeddedGraph({**{u: list(ns) for u, ns in sub.rot.items()}, v: []}, sub.outer)

    anchor = _coast_corner(g, sub, hv, strip)
    if anchor is None and any(sub.rot.values()):
        # no lowest vertex sees the outside of g: search the faces instead
        sub = restrict_edges(g, edges)
        if sub.outer is not None:
            anchor = (sub.outer[1], sub.outer[0])
    rel_h = {v: hv[v] - strip for v in sub.rot}
    ell = max(rel_h.values(), default=1)
    plain = ell <= 1 or not seps

    sep_objs = []
    for x in seps:
        if plain:
            break
        A, B, _ = _orient(ms, c, x)
        A = [v for v in A if hv[v] > strip]
        B = [v for v in B if hv[v] > strip]
        so = _Sep(x.sid, x, A, B)
        if len(A) == 0 or len(B) == 0 or (len(A) == 1 and A == B):
            so.deg = True
        sep_objs.append(so)

    if plain:
        td = _plain_td(sub, rel_h, anchor)
        res = _finish(td, {}, extra, seps, stats, ms, c)
        return res if with_stats else res[:2]

    rot = {v: list(ns) for v, ns in sub.rot.items()}
    orig = {v: v for v in rot}
    virtual = set()
    next_id = [max(max(g.rot), max(rot)) + 1]

    def new(of=None):
        i = next_id[0]
        next_id[0] += 1
        if of is None:
            virtual.add(i)
        else:
            orig[i] = orig[of]
        return i

    # pendant marker in the outer face
    # Hang the marker into a corner that is outside in g itself.  Corners of
    # the restricted outer face next to a top edge get closed by ladders.
    if anchor is None:
        td = _plain_td(sub, rel_h, anchor)
        res = _finish(td, {}, extra, seps, stats, ms, c)
        return res if with_stats else res[:2]
    omega = new()
    ob, oa = anchor
    _insert_after(rot, ob, oa, omega)
    rot[omega] = [ob]
    heights = dict(rel_h)
    heights[omega] = 1

    # one top vertex: subdivide the top edge by a copy of the top vertex
    for so in sep_objs:
        if so.deg:
            continue
        A, B = so.A, so.B
        if A[0] == B[0]:
            u = A[0]
            r = so.x.v if so.x.u == u else so.x.u
            long_ = next((P for P in (A, B) if len(P) > 1 and P[1] == r), None)
            if long_ is None:
                # the representant was cut off by the strip
                so.deg = True
                continue
            u, r = long_[0], long_[1]
            w = new(u)
            _replace(rot, u, r, w)
            _replace(rot, r, u, w)
            rot[w] = [r, u]
            heights[w] = heights[u]
            long_[0] = w
            # the top edge is now u-w; keep the down path of u as the other side
            stats["one_top"] += 1
        if len(so.A) != len(so.B):
            so.deg = True

    # lowpoints: split the shared tail
    root = {}
    group = defaultdict(list)

    def cands(v):
        return group.get(root.get(v, v)) or [v]

    def follow(first, path):
        out = [first]
        for v in path[1:]:
            cs = cands(v)
            out.append(next((w for w in cs if out[-1] in rot[w]), cs[0]))
        return out

    def rename(so):
        """Re-point a separator's paths at the copies that still form it."""
        ca, cb = cands(so.A[0]), cands(so.B[0])
        pair = next(((a, b) for a in ca for b in cb if b in rot[a]), (ca[0], cb[0]))
        so.A = follow(pair[0], so.A)
        so.B = follow(pair[1], so.B)

    for so in sep_objs:
        if so.deg:
            continue
        rename(so)
        A, B = so.A, so.B
        q = len(A)
        j = next((t for t in range(1, q) if A[t] == B[t]), None)
        if j is None:
            continue
        stats["lowpoint_splits"] += 1
        eg = EmbeddedGraph(rot, (omega, ob_now(rot, omega)))
        fo = eg.face_of
        ofc = eg.outer_face()
        newB = list(B[:j])
        for t in range(j, q):
            v = A[t]
            ns = rot[v]
            last = t == q - 1
            up_a = A[t - 1]
            up_b = B[j - 1] if t == j else newB[t - 1]
            # the sector that stays on this side of the slit
            if t == j:
                arc = _between(ns, up_a, B[j - 1])
            else:
                i0 = ns.index(up_a)
                arc = ns[i0 + 1:] + ns[:i0]
            if not last:
                dn = A[t + 1]
                k = arc.index(dn)
                s1, s2 = arc[:k], arc[k + 1:]
            else:
                cand = [up_a] + arc
                y = next((w for w in cand if fo[(w, v)] == ofc), None)
                if y is None:
                    raise ComponentTDError("no outer corner at the bottom of a split tail")
                k = cand.index(y)
                s1, s2 = cand[1:k + 1], cand[k + 1:]
            v2 = new(v)
            heights[v2] = heights[v]
            r0 = root.get(v, v)
            root[v2] = r0
            if not group[r0]:
                group[r0].append(r0)
            group[r0].append(v2)
            rot[v] = [up_a] + s1 + ([dn] if not last else [])
            # the down link is fixed when the next copy is created
            rot[v2] = ([dn] if not last else []) + s2 + [up_b]
            for w in s2:
                _replace(rot, w, v, v2)
            _replace(rot, up_b, v, v2)
            newB.append(v2)
        so.B = newB
        for other in sep_objs:
            if other is not so and not other.deg:
                rename(other)

    # ladders on the far side of every separator
    for so in sep_objs:
        if so.deg:
            continue
        rename(so)
        A, B = so.A, so.B
        q = len(A)
        xs = []
        for t in range(q):
            x = new()
            heights[x] = heights[A[t]]
            if t < q - 1:
                _insert_after(rot, A[t], A[t + 1], x)
            elif q >= 2:
                _insert_before(rot, A[t], A[t - 1], x)
            else:
                _insert_before(rot, A[t], B[0], x)
            if t == 0:
                _insert_after(rot, B[0], A[0], x)
            else:
                _insert_after(rot, B[t], B[t - 1], x)
            rot[x] = [B[t], A[t]]
            xs.append(x)
        so.ladder = xs
        stats["ladders"] += 1

    # check planarity of what we built so far
    eg = EmbeddedGraph(rot, (omega, rot[omega][0]))
    n_, m_ = len(rot), eg.num_edges()
    if n_ - m_ + len(eg.faces) != 2 * len(eg.components()):
        raise ComponentTDError("ladder construction broke planarity")
    hcur = compute_heights(eg).h
    for v in rot:
        if v != omega and v not in virtual and hcur[v] != heights[v]:
            stats["height_mismatch"] += 1
    # degree reduction of real vertices
    rot2, copy_of, od = degree_reduce(rot, hcur, (omega, rot[omega][0]), keep=virtual)
    for cp, v in copy_of.items():
        orig[cp] = orig[v]
        hcur[cp] = hcur[v]
    stats["reduced"] = len(set(copy_of.values()))
    # a ladder rung may now end in a copy
    eg = EmbeddedGraph(rot2, od)
    fo = eg.face_of
    faces = eg.faces
    pending = []
    for so in sep_objs:
        if so.ladder is None:
            continue
        xs = so.ladder
        for t in range(len(xs) - 1):
            a, b = xs[t], xs[t + 1]
            fa = {fo[(p, a)]: p for p in rot2[a]}
            hit = None
            for p in rot2[b]:
                f = fo[(p, b)]
                if f in fa:
                    hit = (f, fa[f], p)
                    break
            if hit is None:
                raise ComponentTDError("consecutive ladder vertices share no face")
            pending.append((a, hit[1], b, hit[2], hit[0]))
    used = set()
    for a, pa, b, pb, f in pending:
        if f in used:
            raise ComponentTDError("two vertical ladder edges in one face")
        used.add(f)
        _insert_after(rot2, a, pa, b)
        _insert_after(rot2, b, pb, a)
    eg = EmbeddedGraph(rot2, od)
    if len(rot2) - eg.num_edges() + len(eg.faces) != 2 * len(eg.components()):
        raise ComponentTDError("vertical ladder edges broke planarity")
    hplus = compute_heights(eg).h
    for v in rot2:
        if v == omega:
            continue
        want = hcur.get(v, heights.get(v))
        if want is not None and hplus[v] != want:
            stats["height_mismatch"] += 1
    # outer-edge test on C+
    fo = eg.face_of
    faces = eg.faces
    ofc = eg.outer_face()
    fmin = [0 if i == ofc else min(hplus[d[0]] for d in f) for i, f in enumerate(faces)]

    def outer_edge(e, i):
        a, b = e
        return min(fmin[fo[(a, b)]], fmin[fo[(b, a)]]) < i

    real = [v for v in rot2 if v != omega and v not in virtual]
    realset = set(real)
    all_edges = [(a, b) for a, ns in rot2.items() for b in ns
                 if a < b and a != omega and b != omega]
    real_edges = [(a, b) for a, b in all_edges if a in realset and b in realset]
    tree = _up_connected_tree(real, real_edges, hplus, outer_edge)
    designated_edge = {}
    for so in sep_objs:
        if so.ladder is None:
            continue
        xs = so.ladder
        top = so.A[0]
        # the copy of the top vertex that carries the first rung
        a0 = next(p for p in rot2[xs[0]] if p not in virtual and orig.get(p) == orig[top])
        tree.append((a0, xs[0]))
        designated_edge[so.sid] = (a0, xs[0])
        for t in range(len(xs) - 1):
            tree.append((xs[t], xs[t + 1]))
    nodes = real + sorted(virtual - {omega})
    if len(tree) != len(nodes) - 1:
        stats["tree_fallback"] += 1
        tree = _complete_tree(nodes, all_edges, tree)

    def choose(a, b):
        va, vb = a in virtual, b in virtual
        if va and not vb:
            return b
        if vb and not va:
            return a
        return min(a, b)

    td, vnode, enode = standard_td(nodes, all_edges, tree, choose)
    stats["skeleton_degree"] = _max_degree(tree)
    # back to original vertices
    for i, bag in enumerate(td.bags):
        td.bags[i] = {orig[v] for v in bag if v not in virtual}
    designated = {sid: enode[e] for sid, e in designated_edge.items()}
    res = _finish(td, designated, extra, seps, stats, ms, c)
    return res if with_stats else res[:2]


def _coast_corner(g, sub, hv, strip):
    """(v, a): a corner of ``sub`` at a lowest vertex v, right after
    neighbour a, that contains a corner of g lying outside ``sub``."""
    of = g.outer_face()
    fo = g.face_of
    for v in sorted(sub.rot):
        if hv[v] != strip + 1 or not sub.rot[v]:
            continue
        ns = g.rot[v]
        d = len(ns)
        for i, y in enumerate(ns):
            if strip:
                hit = hv[y] <= strip
            else:
                hit = fo[(y, v)] == of
            if not hit:
                continue
            have = set(sub.rot[v])
            for k in range(d):
                a = ns[(i - k) % d]
                if a in have:
                    return v, a
    return None


def ob_now(rot, omega):
    return rot[omega][0]


def _max_degree(tree):
    deg = defaultdict(int)
    for a, b in tree:
        deg[a] += 1
        deg[b] += 1
    return max(deg.values(), default=0)


def _complete_tree(nodes, edges, tree):
    parent = {v: v for v in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    out = []
    for a, b in list(tree) + list(edges):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            out.append((a, b))
    return out


def _plain_td(sub, heights, anchor):
    """Plain construction without ladders.  ``anchor`` = (v, a) is a
    corner of the outer face, right after neighbour a at v."""
    rot = {v: list(ns) for v, ns in sub.rot.items()}
    if anchor is None or not any(rot.values()):
        td = TreeDecomposition([{v} for v in rot], [])
        for a, ns in rot.items():
            for b in ns:
                if a < b:
                    td.add_bag({a, b})
        return td
    omega = max(rot) + 1
    ob, oa = anchor
    _insert_after(rot, ob, oa, omega)
    rot[omega] = [ob]
    h = dict(heights)
    h[omega] = 1
    rot2, copy_of, od = degree_reduce(rot, h, (omega, ob), keep={omega})
    orig = {v: v for v in rot}
    for cp, v in copy_of.items():
        orig[cp] = v
    eg = EmbeddedGraph(rot2, od)
    hp = compute_heights(eg).h
    fo = eg.face_of
    faces = eg.faces
    ofc = eg.outer_face()
    fmin = [0 if i == ofc else min(hp[d[0]] for d in f) for i, f in enumerate(faces)]

    def outer_edge(e, i):
        a, b = e
        return min(fmin[fo[(a, b)]], fmin[fo[(b, a)]]) < i

    nodes = [v for v in rot2 if v != omega]
    edges = [(a, b) for a, ns in rot2.items() for b in ns if a < b and omega not in (a, b)]
    tree = _up_connected_tree(nodes, edges, hp, outer_edge)
    if len(tree) != len(nodes) - 1:
        tree = _complete_tree(nodes, edges, tree)
    td, _, _ = standard_td(nodes, edges, tree)
    for i, bag in enumerate(td.bags):
        td.bags[i] = {orig[v] for v in bag}
    return td


def _finish(td, designated, extra, seps, stats, ms, c):
    if extra:
        for b in td.bags:
            b |= extra
    td.connect_forest()
    for x in seps:
        node = designated.get(x.sid)
        need = x.vertices
        if node is not None and need <= td.bags[node]:
            continue
        node = next((i for i, b in enumerate(td.bags) if need <= b), None)
        if node is None:
            raise ComponentTDError(f"no bag holds separator {x.sid} in component {c}")
        designated[x.sid] = node
        stats.setdefault("designated_by_scan", 0)
        stats["designated_by_scan"] += 1
    return td, designated, stats
