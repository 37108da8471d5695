"""Instance generators that emit graphs together with their embeddings."""

import random

from .embed import EmbeddedGraph, embedding_from_coords


def _grid_adj(cells):
    """Vertices/edges of a union of unit cells, each split by its SW-NE diagonal.

    ``cells`` holds (row, col) of the cell's top-left corner; rows grow downwards.
    """
    adj = {}

    def link(a, b):
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    for (i, j) in cells:
        tl, tr, bl, br = (i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)
        link(tl, tr)
        link(bl, br)
        link(tl, bl)
        link(tr, br)
        link(bl, tr)
    return adj


def _relabel(adj):
    order = sorted(adj)
    ids = {p: n for n, p in enumerate(order)}
    rel = {ids[p]: [ids[q] for q in ns] for p, ns in adj.items()}
    pos = {ids[p]: (p[1], -p[0]) for p in order}
    return rel, pos


def gen_grid(r, c, triangulate=True):
    """r x c grid, row-major ids; optional SW-NE diagonal in every cell."""
    if r < 1 or c < 1:
        raise ValueError("grid needs r, c >= 1")
    adj = {(i, j): set() for i in range(r) for j in range(c)}
    for i in range(r):
        for j in range(c):
            if j + 1 < c:
                adj[(i, j)].add((i, j + 1))
                adj[(i, j + 1)].add((i, j))
            if i + 1 < r:
                adj[(i, j)].add((i + 1, j))
                adj[(i + 1, j)].add((i, j))
            if triangulate and i + 1 < r and j + 1 < c:
                adj[(i + 1, j)].add((i, j + 1))
                adj[(i, j + 1)].add((i + 1, j))
    rel, pos = _relabel(adj)
    return embedding_from_coords(rel, pos)


def gen_triangulation(n, seed=0, flips=None):
    """Random triangulated disk: insert vertices into random inner faces,
    then apply random diagonal flips (``flips`` attempts, default n) so that
    the result is not always a stacked triangulation.
    """
    if n < 3:
        raise ValueError("triangulation needs n >= 3")
    rng = random.Random(seed)
    rot = {0: [2, 1], 1: [0, 2], 2: [1, 0]}
    faces = [(0, 1, 2)]
    for x in range(3, n):
        fi = rng.randrange(len(faces))
        a, b, c = faces[fi]
        rot[x] = [c, b, a]
        for v, prev in ((a, c), (b, a), (c, b)):
            ns = rot[v]
            ns.insert(ns.index(prev) + 1, x)
        faces[fi] = (a, b, x)
        faces.append((b, c, x))
        faces.append((c, a, x))
    if flips is None:
        flips = n
    outer_edges = {(0, 1), (1, 2), (0, 2)}
    for _ in range(flips if n > 4 else 0):
        a = rng.randrange(n)
        b = rng.choice(rot[a])
        if (min(a, b), max(a, b)) in outer_edges:
            continue
        rb, ra = rot[b], rot[a]
        c = rb[(rb.index(a) + 1) % len(rb)]   # left face a->b->c
        d = ra[(ra.index(b) + 1) % len(ra)]   # left face b->a->d
        if c == d or d in rot[c] or len(rot[a]) <= 3 or len(rot[b]) <= 3:
            continue
        rot[a].remove(b)
        rot[b].remove(a)
        # c sees b then a clockwise; d sees a then b
        rc = rot[c]
        rc.insert(rc.index(b) + 1, d)
        rd = rot[d]
        rd.insert(rd.index(a) + 1, c)
    return EmbeddedGraph(rot, (1, 0))


def gen_mountain_chain(summits, height, seed=0):
    """Row of square summits joined by thin corridors at mid height.

    Each summit is a (2*height-1)-wide block of triangulated cells, so its
    centre sits at ``height``; corridors are too thin to rise above 2, hence
    every summit forms its own crest.
    """
    if summits < 1 or height < 2:
        raise ValueError("chain needs summits >= 1 and height >= 2")
    rng = random.Random(seed)
    s = 2 * height - 1
    mid = height - 1
    cells = set()
    col = 0
    for k in range(summits):
        width = s + (rng.randint(0, 2) if summits > 1 else 0)
        for i in range(s - 1):
            for j in range(col, col + width - 1):
                cells.add((i, j))
        col += width - 1
        if k + 1 < summits:
            length = rng.randint(1, 3)
            rows = [mid] if height == 2 else [mid - 1, mid]
            for i in rows:
                for j in range(col, col + length):
                    cells.add((i, j))
            col += length
    rel, pos = _relabel(_grid_adj(cells))
    return embedding_from_coords(rel, pos)
