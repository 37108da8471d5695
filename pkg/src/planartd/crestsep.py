"""Down paths, neighbourhood representants and crest separators."""

from collections import deque


class NotTriangulatedError(RuntimeError):
    pass


class DownInfo:
    """``down[v]``: lowest-numbered lower neighbour; ``reps[v]``: one
    representant per maximal run of lower neighbours around ``v``."""

    def __init__(self, down, reps):
        self.down = down
        self.reps = reps

    def path(self, v):
        out = [v]
        d = self.down
        while v in d:
            v = d[v]
            out.append(v)
        return out


def compute_down_info(g, hm):
    h = hm.h
    down = {}
    reps = {}
    for v, ns in g.rot.items():
        q = h[v]
        if q < 2:
            reps[v] = []
            continue
        low = [u for u in ns if h[u] == q - 1]
        if not low:
            raise NotTriangulatedError(f"not almost triangulated: vertex {v} has no lower neighbour")
        down[v] = min(low)
        d = len(ns)
        flags = [h[u] == q - 1 for u in ns]
        if all(flags):
            reps[v] = [down[v]]
            continue
        # rotate so that we start right after a non-lower neighbour
        start = next(i for i in range(d) if not flags[i])
        runs = []
        cur = None
        for k in range(1, d + 1):
            i = (start + k) % d
            if flags[i]:
                if cur is None:
                    cur = []
                    runs.append(cur)
                cur.append(ns[i])
            else:
                cur = None
        reps[v] = [min(r) for r in runs]
    return DownInfo(down, reps)


def _edge(a, b):
    return (a, b) if a < b else (b, a)


class CrestSeparator:
    """Pair of down paths joined by a top edge.

    ``u`` starts ``p1``.  For ``kind == 'pair'`` the second path is the down
    path of the equal-height neighbour ``v``; for ``kind == 'rep'`` it is
    ``u`` followed by the down path of the lower representant ``v``.
    """

    __slots__ = ("u", "v", "kind", "_di", "_cache", "sid", "heights")

    def __init__(self, u, v, kind, di, heights):
        self.u = u
        self.v = v
        self.kind = kind
        self._di = di
        self._cache = {}
        self.sid = None
        self.heights = heights

    def _get(self, key, fn):
        c = self._cache
        if key not in c:
            c[key] = fn()
        return c[key]

    @property
    def p1(self):
        return self._get("p1", lambda: tuple(self._di.path(self.u)))

    @property
    def p2(self):
        if self.kind == "pair":
            return self._get("p2", lambda: tuple(self._di.path(self.v)))
        return self._get("p2", lambda: (self.u,) + tuple(self._di.path(self.v)))

    @property
    def top_vertices(self):
        return (self.u, self.v) if self.kind == "pair" else (self.u,)

    @property
    def top_edge(self):
        return _edge(self.u, self.v)

    @property
    def height(self):
        return self.heights[self.u]

    @property
    def vertices(self):
        return self._get("verts", lambda: frozenset(self.p1) | frozenset(self.p2))

    @property
    def lowpoint(self):
        def find():
            s2 = set(self.p2)
            for w in self.p1[1:]:
                if w in s2:
                    return w
            return None
        return self._get("low", find)

    def path_edges(self, p):
        return {_edge(p[i], p[i + 1]) for i in range(len(p) - 1)}

    @property
    def border_edges(self):
        def make():
            e1 = self.path_edges(self.p1)
            e2 = self.path_edges(self.p2)
            return frozenset(e1 | e2 | {self.top_edge})
        return self._get("border", make)

    @property
    def essential_edges(self):
        def make():
            e1 = self.path_edges(self.p1)
            e2 = self.path_edges(self.p2)
            return frozenset((e1 ^ e2) | {self.top_edge})
        return self._get("ess", make)

    @property
    def essential_vertices(self):
        def make():
            out = set()
            for a, b in self.essential_edges:
                out.add(a)
                out.add(b)
            return frozenset(out)
        return self._get("essv", make)

    @property
    def chord(self):
        """Vertices of P1 reversed followed by P2 (shared tail listed twice)."""
        p1, p2 = self.p1, self.p2
        if self.kind == "rep":
            return tuple(reversed(p1)) + p2[1:]
        return tuple(reversed(p1)) + p2

    def crest_path(self, s1, s2):
        return crest_path(self, s1, s2)

    def __repr__(self):
        return f"CrestSeparator(top={self.top_vertices}, p1={list(self.p1)}, p2={list(self.p2)})"


def enumerate_crest_separators(g, hm, di):
    """All crest separators, one per top edge, sorted by top edge."""
    h = hm.h
    found = {}
    for u in g.rot:
        q = h[u]
        for w in g.rot[u]:
            if h[w] == q and u < w:
                found[_edge(u, w)] = CrestSeparator(u, w, "pair", di, h)
        if q >= 2:
            for r in di.reps[u]:
                if r != di.down[u]:
                    found[_edge(u, r)] = CrestSeparator(u, r, "rep", di, h)
    out = [found[k] for k in sorted(found)]
    for i, x in enumerate(out):
        x.sid = i
    return out


def crest_path(x, s1, s2):
    """Shortest walk along border edges of ``x`` from ``s1`` to ``s2``.

    When both ends lie on the essential boundary the lowpoint may not be an
    inner vertex of the path.
    """
    verts = x.vertices
    if s1 not in verts or s2 not in verts:
        raise ValueError("crest path endpoints must lie on the separator")
    if s1 == s2:
        return [s1]
    adj = {}
    for a, b in x.border_edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    ess = x.essential_vertices
    low = x.lowpoint
    avoid = low if (low is not None and s1 in ess and s2 in ess) else None
    prev = {s1: None}
    dq = deque([s1])
    while dq:
        a = dq.popleft()
        if a == s2:
            break
        if a == avoid and a != s1:
            continue
        for b in sorted(adj[a]):
            if b not in prev:
                prev[b] = a
                dq.append(b)
    if s2 not in prev:
        raise ValueError("no crest path between the given vertices")
    out = [s2]
    while out[-1] != s1:
        out.append(prev[out[-1]])
    out.reverse()
    return out


def is_degenerate(x, g):
    """Height-1 separator whose top edge lies on the outer face: splits nothing."""
    if x.kind != "pair" or len(x.p1) != 1:
        return False
    of = g.outer_face()
    fo = g.face_of
    return fo[(x.u, x.v)] == of or fo[(x.v, x.u)] == of
