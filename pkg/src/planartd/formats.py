"""Readers and writers for graph (.gr), decomposition (.td) and
embedding (.emb) files.  Files use 1-indexed vertex ids, memory 0-indexed."""

from .embed import EmbeddedGraph
from .outer_td import TreeDecomposition


class FormatError(ValueError):
    pass


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield no, line


def _int(tok, no):
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {no}: expected an integer, got {tok!r}") from None


def parse_gr(text):
    """Returns ``(n, edges)`` with 0-indexed endpoints."""
    n = m = None
    edges = []
    for no, line in _lines(text):
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "tw":
                raise FormatError(f"line {no}: bad header {line!r}")
            n, m = _int(parts[2], no), _int(parts[3], no)
            continue
        if n is None:
            raise FormatError(f"line {no}: edge before header")
        if len(parts) != 2:
            raise FormatError(f"line {no}: expected two endpoints")
        a, b = _int(parts[0], no), _int(parts[1], no)
        if not (1 <= a <= n and 1 <= b <= n) or a == b:
            raise FormatError(f"line {no}: bad edge {a} {b}")
        edges.append((a - 1, b - 1))
    if n is None:
        raise FormatError("missing 'p tw' header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    return n, edges


def write_gr(n, edges):
    out = [f"p tw {n} {len(edges)}"]
    out.extend(f"{a + 1} {b + 1}" for a, b in edges)
    return "\n".join(out) + "\n"


def parse_td(text):
    """Returns ``(TreeDecomposition, n)``."""
    header = None
    bags = {}
    edges = []
    for no, line in _lines(text):
        parts = line.split()
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(f"line {no}: bad header {line!r}")
            header = tuple(_int(p, no) for p in parts[2:])
            continue
        if header is None:
            raise FormatError(f"line {no}: content before header")
        nb, _, n = header
        if parts[0] == "b":
            if len(parts) < 2:
                raise FormatError(f"line {no}: bag line without id")
            i = _int(parts[1], no)
            if not 1 <= i <= nb or i in bags:
                raise FormatError(f"line {no}: bad or repeated bag id {i}")
            vs = [_int(p, no) for p in parts[2:]]
            if any(not 1 <= v <= n for v in vs):
                raise FormatError(f"line {no}: vertex out of range")
            bags[i] = {v - 1 for v in vs}
            continue
        if len(parts) != 2:
            raise FormatError(f"line {no}: expected a tree edge")
        a, b = _int(parts[0], no), _int(parts[1], no)
        if not (1 <= a <= nb and 1 <= b <= nb):
            raise FormatError(f"line {no}: tree edge to unknown bag")
        edges.append((a - 1, b - 1))
    if header is None:
        raise FormatError("missing 's td' header")
    nb, wp1, n = header
    if len(bags) != nb:
        raise FormatError(f"header announces {nb} bags, found {len(bags)}")
    td = TreeDecomposition([bags[i] for i in range(1, nb + 1)], edges)
    if td.max_bag() != wp1 and nb:
        raise FormatError(f"header width+1 is {wp1} but the largest bag has {td.max_bag()}")
    return td, n


def write_td(td, n):
    out = [f"s td {len(td.bags)} {td.max_bag()} {n}"]
    for i, bag in enumerate(td.bags, 1):
        vs = " ".join(str(v + 1) for v in sorted(bag))
        out.append(f"b {i} {vs}".rstrip())
    for a, b in td.edges:
        out.append(f"{a + 1} {b + 1}")
    return "\n".join(out) + "\n"


def parse_emb(text):
    rot = {}
    outer_walk = None
    for no, line in _lines(text):
        if line.startswith("outer:"):
            outer_walk = [_int(t, no) - 1 for t in line[6:].split()]
            continue
        if not line.startswith("r "):
            raise FormatError(f"line {no}: expected 'r <v>: ...' or 'outer: ...'")
        head, _, rest = line[2:].partition(":")
        v = _int(head.strip(), no) - 1
        if v in rot:
            raise FormatError(f"line {no}: vertex {v + 1} listed twice")
        ns = [_int(t, no) - 1 for t in rest.split()]
        if len(set(ns)) != len(ns):
            raise FormatError(f"line {no}: repeated neighbour in rotation of {v + 1}")
        rot[v] = ns
    if outer_walk is None:
        raise FormatError("missing 'outer:' line")
    for v, ns in rot.items():
        for u in ns:
            if u not in rot or v not in rot[u]:
                raise FormatError(f"rotation of {v + 1} lists {u + 1} but not vice versa")
    outer = None
    if len(outer_walk) >= 2:
        outer = (outer_walk[0], outer_walk[1])
        a, b = outer
        if a not in rot or b not in rot[a]:
            raise FormatError("outer walk does not start with an edge")
    g = EmbeddedGraph(rot, outer)
    if outer is not None:
        if _outer_walk(g) != outer_walk:
            raise FormatError("outer walk is not a face of the rotation system")
    return g


def _outer_walk(g):
    """Vertices of the outer face in walk order, starting with the outer dart."""
    if g.outer is None:
        return []
    walk = []
    d = g.outer
    while True:
        walk.append(d[0])
        d = g.next_dart(d)
        if d == g.outer:
            return walk


def write_emb(g):
    out = []
    for v in sorted(g.rot):
        ns = " ".join(str(u + 1) for u in g.rot[v])
        out.append(f"r {v + 1}: {ns}".rstrip())
    out.append("outer: " + " ".join(str(v + 1) for v in _outer_walk(g)))
    return "\n".join(out).rstrip() + "\n"


def graph_to_gr(g):
    """Canonical .gr text for an embedded graph with ids 0..n-1."""
    n = len(g.rot)
    if set(g.rot) != set(range(n)):
        raise FormatError("vertex ids must be 0..n-1")
    return write_gr(n, sorted(g.edges()))


def check_same_graph(n, edges, g):
    es = {(min(a, b), max(a, b)) for a, b in edges}
    ge = {(min(a, b), max(a, b)) for a, b in g.edges()}
    if set(g.rot) != set(range(n)):
        raise FormatError("embedding and graph disagree on the vertex set")
    if es != ge:
        diff = sorted(es ^ ge)[:3]
        raise FormatError(f"embedding and graph disagree on edges, e.g. {diff}")
