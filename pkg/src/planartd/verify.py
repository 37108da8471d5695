"""Validators and brute-force oracles used by tests and the CLI."""

from collections import defaultdict, deque


class ValidationReport:
    def __init__(self):
        self.vertex_ok = True
        self.edge_ok = True
        self.subtree_ok = True
        self.tree_ok = True
        self.width = -1
        self.problems = []

    @property
    def ok(self):
        return self.vertex_ok and self.edge_ok and self.subtree_ok and self.tree_ok

    def __bool__(self):
        return self.ok

    def __repr__(self):
        state = "valid" if self.ok else "INVALID: " + "; ".join(self.problems[:5])
        return f"ValidationReport(width={self.width}, {state})"


def _vertices_edges(g):
    """Accept an EmbeddedGraph, an adjacency dict or ``(vertices, edges)``."""
    if hasattr(g, "rot"):
        return list(g.rot), list(g.edges())
    if isinstance(g, tuple):
        return list(g[0]), [tuple(e) for e in g[1]]
    vs = list(g)
    es = {(min(a, b), max(a, b)) for a in g for b in g[a]}
    return vs, sorted(es)


def validate_td(g, td, max_problems=20):
    """Exact check of the three tree-decomposition conditions plus the
    requirement that the bag graph is a tree (a forest is reported)."""
    rep = ValidationReport()
    vs, es = _vertices_edges(g)
    bags = td.bags
    n = len(bags)
    rep.width = max((len(b) for b in bags), default=0) - 1

    def note(msg):
        if len(rep.problems) < max_problems:
            rep.problems.append(msg)

    # skeleton must be a tree
    adj = [[] for _ in range(n)]
    for a, b in td.edges:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            rep.tree_ok = False
            note(f"bad tree edge {a}-{b}")
            continue
        adj[a].append(b)
        adj[b].append(a)
    if rep.tree_ok and n:
        if len(td.edges) != n - 1:
            rep.tree_ok = False
            note(f"tree has {len(td.edges)} edges for {n} nodes")
        seen = [False] * n
        seen[0] = True
        dq = deque([0])
        while dq:
            a = dq.popleft()
            for b in adj[a]:
                if not seen[b]:
                    seen[b] = True
                    dq.append(b)
        if not all(seen):
            rep.tree_ok = False
            note("tree is disconnected")

    where = defaultdict(list)
    for i, b in enumerate(bags):
        for v in b:
            where[v].append(i)
    for v in vs:
        if v not in where:
            rep.vertex_ok = False
            note(f"vertex {v} in no bag")
    for a, b in es:
        la, lb = where.get(a, ()), where.get(b, ())
        if len(la) > len(lb):
            a, b, la = b, a, lb
        if not any(b in bags[i] for i in la):
            rep.edge_ok = False
            note(f"edge {a}-{b} in no bag")
    if rep.tree_ok:
        # in a tree, a node set is connected iff nodes - internal edges == 1
        inner = defaultdict(int)
        for a, b in td.edges:
            ba, bb = bags[a], bags[b]
            if len(ba) > len(bb):
                ba, bb = bb, ba
            for v in ba:
                if v in bb:
                    inner[v] += 1
        for v, nodes in where.items():
            if len(nodes) - inner[v] != 1:
                rep.subtree_ok = False
                note(f"bags of vertex {v} are not connected")
    return rep


def exact_treewidth(g, limit=15):
    """Exact treewidth by dynamic programming over vertex subsets."""
    vs, es = _vertices_edges(g)
    n = len(vs)
    if n > limit:
        raise ValueError(f"exact treewidth limited to {limit} vertices, got {n}")
    if n == 0:
        return -1
    idx = {v: i for i, v in enumerate(vs)}
    nb = [0] * n
    for a, b in es:
        if a != b:
            nb[idx[a]] |= 1 << idx[b]
            nb[idx[b]] |= 1 << idx[a]
    if not es:
        return 0

    def q_size(s, v):
        # vertices outside s + v reachable from v through s
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            x = stack.pop()
            m = nb[x] & ~seen
            seen |= m
            while m:
                low = m & -m
                y = low.bit_length() - 1
                m ^= low
                if s >> y & 1:
                    stack.append(y)
                else:
                    out += 1
        return out

    full = (1 << n) - 1
    best = {0: -1}
    # order subsets by size so every predecessor is ready
    by_size = defaultdict(list)
    for s in range(1, full + 1):
        by_size[bin(s).count("1")].append(s)
    ub = n - 1
    for size in range(1, n + 1):
        for s in by_size[size]:
            val = ub + 1
            m = s
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                prev = best.get(s ^ low)
                if prev is None or prev >= val:
                    continue
                c = max(prev, q_size(s ^ low, v))
                if c < val:
                    val = c
            if val <= ub:
                best[s] = val
    return best.get(full, ub)


def check_separator(g, S, A, B, mode="weak"):
    """True iff S disconnects A and B; strong mode also needs S disjoint from both."""
    vs, es = _vertices_edges(g)
    S, A, B = set(S), set(A), set(B)
    if mode == "strong" and (S & A or S & B):
        return False
    adj = defaultdict(list)
    for a, b in es:
        adj[a].append(b)
        adj[b].append(a)
    start = A - S
    target = B - S
    if start & target:
        return False
    seen = set(start)
    dq = deque(start)
    while dq:
        a = dq.popleft()
        for b in adj[a]:
            if b in S or b in seen:
                continue
            if b in target:
                return False
            seen.add(b)
            dq.append(b)
    return True


def ridge_depth(g, hm, s, t):
    """Largest d such that s and t connect through vertices of height >= d."""
    h = hm.h if hasattr(hm, "h") else hm
    vs, es = _vertices_edges(g)
    adj = defaultdict(list)
    for a, b in es:
        adj[a].append(b)
        adj[b].append(a)
    for d in range(min(h[s], h[t]), 0, -1):
        seen = {s}
        dq = deque([s])
        while dq:
            a = dq.popleft()
            if a == t:
                return d
            for b in adj[a]:
                if b not in seen and h[b] >= d:
                    seen.add(b)
                    dq.append(b)
    if s == t:
        return h[s]
    raise ValueError("s and t are not connected")


def min_vertex_cut(g, A, B):
    """Size of a minimum vertex set disjoint from A and B separating them
    (None when an edge joins A and B).  Unit-capacity augmenting paths."""
    vs, es = _vertices_edges(g)
    A, B = set(A), set(B)
    adj = defaultdict(list)
    for a, b in es:
        adj[a].append(b)
        adj[b].append(a)
    for a in A:
        if any(b in B for b in adj[a]):
            return None
    # node (v, 0) = in, (v, 1) = out; A collapsed into source, B into sink
    cap = defaultdict(int)
    nbr = defaultdict(set)

    def arc(x, y, c):
        cap[(x, y)] += c
        nbr[x].add(y)
        nbr[y].add(x)

    big = len(vs) + 1

    def node(v, side):
        if v in A:
            return "s"
        if v in B:
            return "t"
        return (v, side)

    for v in vs:
        if v not in A and v not in B:
            arc((v, 0), (v, 1), 1)
    for a, b in es:
        for x, y in ((a, b), (b, a)):
            arc(node(x, 1), node(y, 0), big)
    flow = 0
    while True:
        par = {"s": None}
        dq = deque(["s"])
        while dq and "t" not in par:
            x = dq.popleft()
            for y in nbr[x]:
                if y not in par and cap[(x, y)] > 0:
                    par[y] = x
                    dq.append(y)
        if "t" not in par:
            return flow
        y = "t"
        while par[y] is not None:
            x = par[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1
