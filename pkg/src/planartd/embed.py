"""Combinatorial embeddings: rotation systems, faces, restriction, blocks.

Conventions used throughout the package:

* ``rot[v]`` lists the neighbours of ``v`` in clockwise order.
* A dart is an ordered pair ``(u, v)``.  The face to the left of ``(u, v)``
  continues with ``(v, w)`` where ``w`` follows ``u`` clockwise around ``v``.
  Inner faces are therefore traced counter-clockwise and the outer face
  clockwise.
* The outer face is named by one of its darts.
"""

from collections import defaultdict


class EmbeddingError(ValueError):
    pass


class EmbeddedGraph:
    """Simple planar graph with a rotation system and an outer face.

    Treat instances as immutable; the helper builders return new objects.
    """

    def __init__(self, rotation, outer=None):
        self.rot = {v: tuple(ns) for v, ns in rotation.items()}
        self._pos = {v: {u: i for i, u in enumerate(ns)} for v, ns in self.rot.items()}
        if outer is not None:
            outer = (outer[0], outer[1])
        self.outer = outer
        self._faces = None
        self._face_of = None

    # basic queries
    def vertices(self):
        return list(self.rot)

    def __len__(self):
        return len(self.rot)

    def __contains__(self, v):
        return v in self.rot

    def degree(self, v):
        return len(self.rot[v])

    def has_edge(self, u, v):
        return u in self._pos and v in self._pos[u]

    def edges(self):
        out = []
        for v, ns in self.rot.items():
            for u in ns:
                if v < u:
                    out.append((v, u))
        return out

    def num_edges(self):
        return sum(len(ns) for ns in self.rot.values()) // 2

    def succ(self, v, u):
        """Neighbour following ``u`` clockwise around ``v``."""
        ns = self.rot[v]
        return ns[(self._pos[v][u] + 1) % len(ns)]

    def pred(self, v, u):
        ns = self.rot[v]
        return ns[(self._pos[v][u] - 1) % len(ns)]

    def next_dart(self, d):
        u, v = d
        return (v, self.succ(v, u))

    # faces
    def _build_faces(self):
        faces = []
        face_of = {}
        for v, ns in self.rot.items():
            for u in ns:
                d = (v, u)
                if d in face_of:
                    continue
                fid = len(faces)
                walk = []
                while d not in face_of:
                    face_of[d] = fid
                    walk.append(d)
                    d = self.next_dart(d)
                faces.append(tuple(walk))
        self._faces = faces
        self._face_of = face_of

    @property
    def faces(self):
        """List of faces, each a tuple of darts in boundary order."""
        if self._faces is None:
            self._build_faces()
        return self._faces

    @property
    def face_of(self):
        if self._face_of is None:
            self._build_faces()
        return self._face_of

    def outer_face(self):
        """Index of the outer face, or None for an edgeless graph."""
        if self.outer is None:
            return None
        return self.face_of[self.outer]

    def face_vertices(self, fid):
        return [d[0] for d in self.faces[fid]]

    def inner_faces(self):
        of = self.outer_face()
        return [i for i in range(len(self.faces)) if i != of]

    def outer_vertices(self):
        if self.outer is None:
            return set(self.rot)
        return set(self.face_vertices(self.outer_face()))

    def components(self):
        seen = set()
        comps = []
        for s in self.rot:
            if s in seen:
                continue
            seen.add(s)
            stack = [s]
            comp = [s]
            while stack:
                v = stack.pop()
                for u in self.rot[v]:
                    if u not in seen:
                        seen.add(u)
                        comp.append(u)
                        stack.append(u)
            comps.append(comp)
        return comps

    def is_connected(self):
        return len(self.components()) <= 1

    def __repr__(self):
        return f"EmbeddedGraph(n={len(self.rot)}, m={self.num_edges()}, outer={self.outer})"


def from_faces_check(rotation):
    """Reject loops, parallel edges and asymmetric rotations."""
    for v, ns in rotation.items():
        if v in ns:
            raise EmbeddingError(f"not simple: self-loop at {v}")
        if len(set(ns)) != len(ns):
            raise EmbeddingError(f"not simple: parallel edges at {v}")
        for u in ns:
            if u not in rotation or v not in rotation[u]:
                raise EmbeddingError(f"rotation not symmetric for edge {v}-{u}")


def validate_embedding(g):
    """Structural diagnostics for an embedding.  Never raises."""
    rep = {"ok": True, "errors": [], "simple": True}
    rot = g.rot
    for v, ns in rot.items():
        if v in ns:
            rep["simple"] = False
            rep["errors"].append(f"not simple: self-loop at {v}")
        if len(set(ns)) != len(ns):
            rep["simple"] = False
            rep["errors"].append(f"not simple: parallel edges at {v}")
        for u in ns:
            if u not in rot or v not in rot[u]:
                rep["errors"].append(f"asymmetric rotation for edge {v}-{u}")
    if rep["errors"]:
        rep["ok"] = False
        rep.update(euler=False, faces=None, almost_triangulated=False, biconnected=False)
        return rep
    faces = g.faces
    comps = g.components()
    n, m = len(rot), g.num_edges()
    # each component contributes its own outer orbit; an isolated vertex
    # has no darts but still one face around it
    isolated = sum(1 for ns in rot.values() if not ns)
    nf = len(faces) + isolated
    rep["faces"] = nf - len(comps) + 1 if comps else 0
    rep["euler"] = n - m + nf == 2 * len(comps)
    if not rep["euler"]:
        rep["errors"].append("Euler formula violated: rotation system is not planar")
    if g.outer is not None and g.outer not in g.face_of:
        rep["errors"].append("outer dart is not a dart of the graph")
    rep["connected"] = len(comps) <= 1
    of = g.outer_face() if g.outer is not None and g.outer in g.face_of else None
    rep["almost_triangulated"] = rep["connected"] and all(
        len(f) == 3 for i, f in enumerate(faces) if i != of)
    rep["biconnected"] = rep["connected"] and n >= 2 and not articulation_points(g)
    rep["ok"] = not rep["errors"]
    return rep


def _outer_class_dart(g, keep_v, keep_e):
    """Pick a kept dart whose left face lies in the old outer region."""
    if g.outer is None:
        return None
    # fast path: a kept vertex on the old outer face; the kept corner
    # around its outer corner lies in the old outer region
    for a, b in g.faces[g.outer_face()]:
        if b not in keep_v:
            continue
        ns = g.rot[b]
        d = len(ns)
        i = ns.index(a)
        for t in range(d):
            p = ns[(i - t) % d]
            if keep_e(b, p):
                return (p, b)
    parent = list(range(len(g.faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    fo = g.face_of
    for v, ns in g.rot.items():
        for u in ns:
            if v < u and not keep_e(v, u):
                a, b = find(fo[(v, u)]), find(fo[(u, v)])
                if a != b:
                    parent[a] = b
    root = find(g.outer_face())
    for v, ns in g.rot.items():
        if v not in keep_v:
            continue
        for u in ns:
            if keep_e(v, u) and find(fo[(v, u)]) == root:
                return (v, u)
    return None


def restrict(g, keep):
    """Induced sub-embedding on ``keep``; the outer face contains the old one."""
    keep = set(keep)
    if not keep:
        raise EmbeddingError("restrict: empty vertex set")
    missing = keep - set(g.rot)
    if missing:
        raise EmbeddingError(f"restrict: unknown vertices {sorted(missing)[:5]}")
    rot = {v: [u for u in g.rot[v] if u in keep] for v in g.rot if v in keep}
    outer = _outer_class_dart(g, keep, lambda a, b: a in keep and b in keep)
    return EmbeddedGraph(rot, outer)


def restrict_edges(g, edges, find_outer=True):
    """Sub-embedding on an edge set (plus the edges' endpoints)."""
    es = set()
    for a, b in edges:
        es.add((a, b))
        es.add((b, a))
    keep = {a for a, _ in es}
    rot = {v: [u for u in g.rot[v] if (v, u) in es] for v in g.rot if v in keep}
    outer = _outer_class_dart(g, keep, lambda a, b: (a, b) in es) if find_outer else None
    return EmbeddedGraph(rot, outer)


def almost_triangulate(g, next_id=None):
    """Put a new vertex into every inner face with more than three corners.

    Returns ``(g2, added)`` where ``added`` maps each new vertex to the face
    (tuple of corner vertices) it was placed in.
    """
    if next_id is None:
        next_id = max(g.rot, default=-1) + 1
    rot = {v: list(ns) for v, ns in g.rot.items()}
    of = g.outer_face()
    added = {}
    inserts = []
    for fid, f in enumerate(g.faces):
        if fid == of or len(f) <= 3:
            continue
        corners = [d[0] for d in f]
        if len(set(corners)) <= 2:
            continue
        x = next_id
        next_id += 1
        seen = set()
        ring = []
        for i, d in enumerate(f):
            v = d[0]
            if v in seen:
                continue
            seen.add(v)
            prev = f[i - 1][0]
            ring.append(v)
            inserts.append((v, prev, x))
        rot[x] = list(reversed(ring))
        added[x] = tuple(ring)
    for v, prev, x in inserts:
        ns = rot[v]
        ns.insert(ns.index(prev) + 1, x)
    return EmbeddedGraph(rot, g.outer), added


def articulation_points(g):
    return set(_blocks(g)[1])


def _blocks(g):
    """Iterative Hopcroft-Tarjan; returns (list of edge lists, cut vertices)."""
    disc, low = {}, {}
    blocks = []
    cuts = set()
    timer = 0
    estack = []
    for root in g.rot:
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        children = 0
        stack = [(root, None, iter(g.rot[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    continue
                if u not in disc:
                    disc[u] = low[u] = timer
                    timer += 1
                    estack.append((v, u))
                    stack.append((u, v, iter(g.rot[u])))
                    if v == root:
                        children += 1
                    advanced = True
                    break
                elif disc[u] < disc[v]:
                    estack.append((v, u))
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            stack.pop()
            if parent is not None:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    if parent != root:
                        cuts.add(parent)
                    blk = []
                    while True:
                        e = estack.pop()
                        blk.append(e)
                        if e == (parent, v):
                            break
                    blocks.append(blk)
        if children > 1:
            cuts.add(root)
    return blocks, cuts


class Block:
    def __init__(self, graph, cut_vertices):
        self.graph = graph
        self.cut_vertices = cut_vertices

    def __repr__(self):
        return f"Block({self.graph!r}, cuts={sorted(self.cut_vertices)})"


def biconnected_components(g):
    """Blocks with their restricted embeddings, plus the cut vertices in each."""
    blocks, cuts = _blocks(g)
    out = []
    for blk in blocks:
        sub = restrict_edges(g, blk)
        out.append(Block(sub, cuts & set(sub.rot)))
    for v, ns in g.rot.items():
        if not ns:
            out.append(Block(EmbeddedGraph({v: []}), set()))
    return out


def embedding_from_coords(adj, pos, outer_hint=None):
    """Rotation system from straight-line coordinates.

    The outer face is the face with negative signed area (clockwise walk).
    """
    import math
    rot = {}
    for v, ns in adj.items():
        x0, y0 = pos[v]
        # clockwise = decreasing angle
        rot[v] = sorted(ns, key=lambda u: -math.atan2(pos[u][1] - y0, pos[u][0] - x0))
    g = EmbeddedGraph(rot)
    best, best_area = None, None
    for f in g.faces:
        area = 0.0
        for a, b in f:
            area += pos[a][0] * pos[b][1] - pos[b][0] * pos[a][1]
        if best_area is None or area < best_area:
            best, best_area = f, area
    outer = best[0] if best else None
    return EmbeddedGraph(rot, outer)


def face_degree_histogram(g):
    hist = defaultdict(int)
    of = g.outer_face()
    for i, f in enumerate(g.faces):
        if i != of:
            hist[len(f)] += 1
    return dict(hist)
