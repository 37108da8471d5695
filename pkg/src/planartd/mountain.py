"""Components cut out by crest separators, the connection tree and pruning
to one crest per component."""

import heapq

from .crestsep import compute_down_info, enumerate_crest_separators, is_degenerate
from .layering import compute_heights, find_crests


class SComponent:
    __slots__ = ("cid", "faces", "vertices", "edges", "crest")

    def __init__(self, cid, faces, vertices, edges):
        self.cid = cid
        self.faces = faces
        self.vertices = vertices
        self.edges = edges
        self.crest = None

    def __repr__(self):
        return f"SComponent({self.cid}, faces={len(self.faces)}, n={len(self.vertices)})"


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[a] = b
        return a != b


def border_edge_set(S):
    out = set()
    for x in S:
        out |= x.border_edges
    return out


def split_components(g, S, border=None):
    """Maximal sets of inner faces connected across non-border edges."""
    if border is None:
        border = border_edge_set(S)
    faces = g.faces
    fo = g.face_of
    of = g.outer_face()
    uf = _UF(len(faces))
    for v, ns in g.rot.items():
        for u in ns:
            if v < u and (v, u) not in border:
                a, b = fo[(v, u)], fo[(u, v)]
                if a != of and b != of:
                    uf.union(a, b)
    groups = {}
    for fid in range(len(faces)):
        if fid == of:
            continue
        groups.setdefault(uf.find(fid), []).append(fid)
    comps = []
    face_comp = {}
    for key in sorted(groups, key=lambda r: min(groups[r])):
        fl = sorted(groups[key])
        verts = set()
        edges = set()
        for f in fl:
            for a, b in faces[f]:
                verts.add(a)
                edges.add((a, b) if a < b else (b, a))
        c = SComponent(len(comps), fl, verts, edges)
        for f in fl:
            face_comp[f] = c.cid
        comps.append(c)
    return comps, face_comp


class MCTree:
    """Tree on components; ``adj[c]`` maps a neighbour to the separator
    whose top edge the two components share."""

    def __init__(self, n):
        self.n = n
        self.adj = [dict() for _ in range(n)]
        self.sep_ends = {}

    def add(self, a, b, x):
        self.adj[a][b] = x
        self.adj[b][a] = x
        self.sep_ends[x.sid] = (a, b)

    def edges(self):
        out = []
        for a in range(self.n):
            for b, x in self.adj[a].items():
                if a < b:
                    out.append((a, b, x))
        return out

    def rooted(self, root=0):
        """(parent, order) for a traversal from ``root``; parent[root] = -1."""
        parent = [None] * self.n
        parent[root] = -1
        order = [root]
        i = 0
        while i < len(order):
            a = order[i]
            i += 1
            for b in sorted(self.adj[a]):
                if parent[b] is None:
                    parent[b] = a
                    order.append(b)
        return parent, order


class TreeStructureError(RuntimeError):
    pass


def mountain_connection_tree(g, components, face_comp, S):
    t = MCTree(len(components))
    fo = g.face_of
    for x in S:
        a, b = x.top_edge
        ca, cb = face_comp.get(fo[(a, b)]), face_comp.get(fo[(b, a)])
        if ca is None or cb is None:
            raise TreeStructureError(f"top edge of {x} touches the outer face")
        if ca == cb:
            raise TreeStructureError(f"separator {x} does not split its top edge faces")
        if cb in t.adj[ca]:
            raise TreeStructureError("two separators between the same components")
        t.add(ca, cb, x)
    parent, order = t.rooted(0) if components else ([], [])
    if len(order) != len(components) or len(S) != max(len(components) - 1, 0):
        raise TreeStructureError(
            f"connection graph is not a tree: {len(components)} nodes, {len(S)} edges")
    return t


def sep_key(x):
    """Ordering for 'largest separator': height, then top-vertex count,
    then smallest top-vertex id wins."""
    return (x.height, len(x.top_vertices), -min(x.top_vertices), -max(x.top_vertices))


def goes_between(g, x, A, B):
    """'strongly', 'weakly' or 'no' for vertex sets A and B."""
    comps, _ = split_components(g, [x])
    A, B = set(A), set(B)
    if len(comps) != 2:
        return "no"
    v1, v2 = comps[0].vertices, comps[1].vertices
    if (A <= v1 and B <= v2) or (A <= v2 and B <= v1):
        if (A | B) & x.vertices:
            return "weakly"
        return "strongly"
    return "no"


class MountainStructure:
    def __init__(self, graph, heights, crests, separators, components, face_comp, mct):
        self.graph = graph
        self.heights = heights
        self.crests = crests
        self.separators = separators
        self.components = components
        self.face_comp = face_comp
        self.mct = mct
        self.root = 0
        self.parent, self.order = mct.rooted(0) if components else ([], [])
        self._enclosed = None
        self.stats = {}

    def sep_to_parent(self, c):
        p = self.parent[c]
        return None if p < 0 else self.mct.adj[c][p]

    def children(self, c):
        return [b for b in self.mct.adj[c] if self.parent[b] == c]

    def separators_at(self, c):
        """Separators whose top edge lies in component c."""
        return list(self.mct.adj[c].values())

    def sides(self, x):
        """Component ids on the two sides of x: (child subtree, rest)."""
        a, b = self.mct.sep_ends[x.sid]
        child = a if self.parent[a] == b else b
        return child, (b if child == a else a)

    def subtree(self, c):
        out = [c]
        i = 0
        while i < len(out):
            a = out[i]
            i += 1
            out.extend(self.children(a))
        return out

    def enclosed_side(self):
        """For each separator with a lowpoint: the component next to its top
        edge on the enclosed side.  Computed with one pass over the tree."""
        if self._enclosed is not None:
            return self._enclosed
        g = self.graph
        of = g.outer_face()
        outer_touch = [False] * len(self.components)
        for a, b in g.faces[of]:
            f = g.face_of[(b, a)]
            c = self.face_comp.get(f)
            if c is not None:
                outer_touch[c] = True
        sub = outer_touch[:]
        for c in reversed(self.order):
            p = self.parent[c]
            if p >= 0:
                sub[p] = sub[p] or sub[c]
        res = {}
        for x in self.separators:
            if x.lowpoint is None:
                continue
            child, par = self.sides(x)
            res[x.sid] = child if not sub[child] else par
        self._enclosed = res
        return res

    def enclosing_separator(self, c):
        """The separator with a top edge in c that encloses c, if any."""
        enc = self.enclosed_side()
        found = [x for x in self.separators_at(c) if enc.get(x.sid) == c]
        if len(found) > 1:
            raise TreeStructureError(f"component {c} enclosed by two separators")
        return found[0] if found else None


def _components_and_tree(g, S):
    comps, face_comp = split_components(g, S)
    mct = mountain_connection_tree(g, comps, face_comp, S)
    return comps, face_comp, mct


def good_mountain_structure(g, hm=None):
    """Prune all crest separators down to one crest per component."""
    if hm is None:
        hm = compute_heights(g)
    crests = find_crests(g, hm)
    crest_of = {}
    for i, cr in enumerate(crests):
        for v in cr.vertices:
            crest_of[v] = i
    di = compute_down_info(g, hm)
    allS = enumerate_crest_separators(g, hm, di)
    S0 = [x for x in allS if not is_degenerate(x, g) and not (x.vertices & crest_of.keys())]
    comps, face_comp, mct = _components_and_tree(g, S0)
    n = len(comps)
    parent, order = mct.rooted(0)
    depth = [0] * n
    for c in order[1:]:
        depth[c] = depth[parent[c]] + 1
    children = [set() for _ in range(n)]
    for c in order[1:]:
        children[parent[c]].add(c)
    up = [None] * n  # separator to parent
    for c in order[1:]:
        up[c] = mct.adj[c][parent[c]]
    crest_flag = [any(v in crest_of for v in comps[c].vertices) for c in range(n)]
    finished = [False] * n
    alive = [True] * n
    removed = set()
    stats = {"delays": 0, "merges_child": 0, "merges_parent": 0}

    keys = {x.sid: sep_key(x) for x in S0}

    def rank(x):
        return keys[x.sid]

    def largest(cands):
        best = None
        for x in cands:
            if best is None or rank(x) > rank(best):
                best = x
        return best

    # lazy max-heaps of children by separator rank
    chheap = [[] for _ in range(n)]

    idheap = [[] for _ in range(n)]

    def push_child(p, c):
        k = rank(up[c])
        heapq.heappush(chheap[p], ((-k[0], -k[1], -k[2], -k[3]), c))
        heapq.heappush(idheap[p], c)

    def min_other_open_child(p, w):
        """Smallest unfinished child of p other than w, or None."""
        h = idheap[p]
        while h and (finished[h[0]] or h[0] not in children[p]):
            heapq.heappop(h)
        if not h:
            return None
        if h[0] != w:
            return h[0]
        top = heapq.heappop(h)
        while h and (finished[h[0]] or h[0] not in children[p] or h[0] == w):
            heapq.heappop(h)
        res = h[0] if h else None
        heapq.heappush(h, top)
        return res

    for c in order[1:]:
        push_child(parent[c], c)

    def max_child_sep(w):
        h = chheap[w]
        while h and h[0][1] not in children[w]:
            heapq.heappop(h)
        return up[h[0][1]] if h else None

    heap = [(-depth[c], c) for c in range(n)]
    heapq.heapify(heap)
    while heap:
        _, w = heapq.heappop(heap)
        if not alive[w] or finished[w]:
            continue
        p = parent[w]
        if p >= 0:
            other = min_other_open_child(p, w)
            if other is not None and max_child_sep(p) is up[w]:
                stats["delays"] += 1
                heapq.heappush(heap, (-depth[w], w))
                w = other
                p = parent[w]
        if crest_flag[w]:
            finished[w] = True
            continue
        cands = [max_child_sep(w)]
        if p >= 0:
            cands.append(up[w])
        x = largest(c for c in cands if c is not None)
        if x is None:
            raise TreeStructureError("component without crest and without neighbours")
        removed.add(x.sid)
        if p >= 0 and x is up[w]:
            # merge w into its parent, which stays unfinished
            stats["merges_parent"] += 1
            alive[w] = False
            children[p].discard(w)
            for c in children[w]:
                parent[c] = p
                children[p].add(c)
                push_child(p, c)
            children[w] = set()
        else:
            c = next(c for c in children[w] if up[c] is x)
            stats["merges_child"] += 1
            alive[c] = False
            children[w].discard(c)
            for d in children[c]:
                parent[d] = w
                children[w].add(d)
                push_child(w, d)
            children[c] = set()
            finished[w] = True
            crest_flag[w] = True
    S = [x for x in S0 if x.sid not in removed]
    comps, face_comp, mct = _components_and_tree(g, S)
    for c in comps:
        ids = {crest_of[v] for v in c.vertices if v in crest_of}
        c.crest = crests[min(ids)] if len(ids) == 1 else None
        if len(ids) != 1:
            raise TreeStructureError(f"component {c.cid} holds {len(ids)} crests")
    ms = MountainStructure(g, hm, crests, S, comps, face_comp, mct)
    stats.update(all_separators=len(allS), after_crest_filter=len(S0), kept=len(S))
    ms.stats = stats
    ms.down_info = di
    ms.all_separators = allS
    return ms
