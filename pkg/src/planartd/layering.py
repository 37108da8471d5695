"""Vertex heights by coast peeling, crests and the mountain test."""

from collections import deque


class HeightMap:
    """Per-vertex peeling depth.  ``h[v] == 1`` exactly on the outer face."""

    def __init__(self, h):
        self.h = h
        self.max_height = max(h.values(), default=0)

    def __getitem__(self, v):
        return self.h[v]

    def __contains__(self, v):
        return v in self.h

    def layer(self, i):
        return [v for v, x in self.h.items() if x == i]

    def __repr__(self):
        return f"HeightMap(n={len(self.h)}, max_height={self.max_height})"


class Crest:
    def __init__(self, vertices, height):
        self.vertices = frozenset(vertices)
        self.height = height

    def __repr__(self):
        return f"Crest(h={self.height}, {sorted(self.vertices)})"


def compute_heights(g):
    """Heights via breadth-first search on the vertex-face incidence graph.

    Starting at the outer face, a vertex first reached at incidence distance
    ``d`` has height ``(d + 1) // 2``.  Each face and vertex is touched once.
    """
    if g.outer is None:
        return HeightMap({v: 1 for v in g.rot})
    faces = g.faces
    face_of = g.face_of
    h = {}
    fdone = [False] * len(faces)
    of = g.outer_face()
    fdone[of] = True
    frontier = [of]
    level = 1
    while frontier:
        verts = []
        for f in frontier:
            for d in faces[f]:
                v = d[0]
                if v not in h:
                    h[v] = level
                    verts.append(v)
        nxt = []
        for v in verts:
            for u in g.rot[v]:
                f = face_of[(v, u)]
                if not fdone[f]:
                    fdone[f] = True
                    nxt.append(f)
        frontier = nxt
        level += 1
    for v in g.rot:
        # isolated vertices or vertices of other components
        h.setdefault(v, 1)
    return HeightMap(h)


def find_crests(g, hm):
    h = hm.h
    seen = set()
    crests = []
    for s in sorted(g.rot):
        if s in seen:
            continue
        hs = h[s]
        comp = [s]
        seen.add(s)
        q = deque([s])
        top = True
        while q:
            v = q.popleft()
            for u in g.rot[v]:
                if h[u] > hs:
                    top = False
                elif h[u] == hs and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    q.append(u)
        if top:
            crests.append(Crest(comp, hs))
    return crests


def is_mountain(g, hm):
    return len(find_crests(g, hm)) == 1
