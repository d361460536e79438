"""Immutable simple graphs, text formats, and the connectivity toolbox."""

from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

UNREACHABLE = -1

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


class GraphFormatError(GraphError):
    """Malformed input text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(GraphError):
    pass


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable. ``labels`` optionally records what each vertex
    stands for (original ids of an induced subgraph, the edge behind a
    line-graph vertex, ...).
    """

    __slots__ = ("n", "m", "adj", "labels", "__dict__")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), labels=None):
        if n < 1:
            raise GraphError("a graph needs at least one vertex")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        self.n = n
        self.m = m
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise GraphError("one label per vertex required")

    @classmethod
    def from_adjacency(cls, adj: Sequence[Sequence[int]], labels=None) -> "Graph":
        """Trusted constructor: ``adj`` must already be symmetric, sorted, loop-free."""
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = tuple(tuple(a) for a in adj)
        g.m = sum(len(a) for a in g.adj) // 2
        g.labels = tuple(labels) if labels is not None else None
        return g

    @cached_property
    def nbrsets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(a) for a in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbrsets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def vertices(self) -> range:
        return range(self.n)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled in increasing vertex order.

        ``labels`` of the result maps each new vertex to its id here.
        """
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        adj = [[index[w] for w in self.adj[v] if w in index] for v in vs]
        return Graph.from_adjacency(adj, labels=vs)

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and is_connected(self)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self):
        return hash(self.adj)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_edge_list(text: str) -> Graph:
    header = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError(f"expected integers, got {line!r}", lineno) from None
        if len(nums) != 2:
            raise GraphFormatError(f"expected two integers, got {len(nums)}", lineno)
        if header is None:
            n, m = nums
            if n < 1 or m < 0:
                raise GraphFormatError(f"bad header 'n m' = {n} {m}", lineno)
            header = (n, m)
            continue
        n = header[0]
        u, v = nums
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range 0..{n - 1}: {u} {v}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        e = _norm(u, v)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphFormatError("missing header 'n m'", 1)
    if len(edges) != header[1]:
        raise GraphFormatError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges)


def _graph6_decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise GraphFormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 4 and data[1] != 126:
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        return n, 4
    if len(data) >= 8:
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    raise GraphFormatError("truncated graph6 size field")


def _parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    lines = [ln for ln in s.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise GraphFormatError(f"expected exactly one graph6 line, got {len(lines)}")
    return graph6_decode(lines[0].strip())


def graph6_decode(s: str) -> Graph:
    data = s.encode("ascii")
    for pos, b in enumerate(data):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"invalid graph6 byte {chr(b)!r} at position {pos}")
    n, off = _graph6_decode_n(data)
    if n < 1:
        raise GraphFormatError("graph6 graph with no vertices")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[off:]
    if len(body) != need:
        raise GraphFormatError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def graph6_encode(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        out = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = []
    for j in range(1, n):
        nb = g.nbrsets[j]
        bits.extend(1 if i in nb else 0 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out).decode("ascii")


def parse_graph(text: str, format: str = "edge-list") -> Graph:
    """Parse ``text`` as ``edge-list`` or ``graph6``."""
    if format == "edge-list":
        return _parse_edge_list(text)
    if format == "graph6":
        return _parse_graph6(text)
    raise GraphFormatError(f"unknown format {format!r}")


def serialize_graph(g: Graph, format: str = "edge-list") -> str:
    if format == "edge-list":
        lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
        return "\n".join(lines) + "\n"
    if format == "graph6":
        return graph6_encode(g) + "\n"
    raise GraphFormatError(f"unknown format {format!r}")


# ---------------------------------------------------------------------------
# distances and connectivity
# ---------------------------------------------------------------------------

def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get ``UNREACHABLE``."""
    if not 0 <= source < g.n:
        raise GraphError(f"source {source} not a vertex")
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    q = deque([source])
    adj = g.adj
    while q:
        u = q.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = du
                q.append(w)
    return dist


def _components(adj, alive: Sequence[bool] | None, n: int) -> list[list[int]]:
    seen = [False] * n
    if alive is not None:
        for v in range(n):
            if not alive[v]:
                seen[v] = True
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def connected_components(g: Graph) -> list[list[int]]:
    return _components(g.adj, None, g.n)


def is_connected(g: Graph) -> bool:
    return len(_components(g.adj, None, g.n)) == 1


def _articulation(adj, alive: Sequence[bool] | None, n: int) -> tuple[set[int], list[Edge]]:
    """Cut vertices and bridges of the subgraph induced by ``alive`` (iterative low-point DFS)."""
    disc = [0] * n
    low = [0] * n
    if alive is not None:
        for v in range(n):
            if not alive[v]:
                disc[v] = -1
    cuts: set[int] = set()
    bridges: list[Edge] = []
    t = 0
    for root in range(n):
        if disc[root] != 0:
            continue
        t += 1
        disc[root] = low[root] = t
        root_children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                dw = disc[w]
                if dw == -1 or w == parent:
                    continue
                if dw == 0:
                    t += 1
                    disc[w] = low[w] = t
                    stack.append((w, u, iter(adj[w])))
                    advanced = True
                    break
                if dw < low[u]:
                    low[u] = dw
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                if low[u] < low[parent]:
                    low[parent] = low[u]
                if low[u] > disc[parent]:
                    bridges.append(_norm(parent, u))
                if parent == root:
                    root_children += 1
                elif low[u] >= disc[parent]:
                    cuts.add(parent)
        if root_children >= 2:
            cuts.add(root)
    bridges.sort()
    return cuts, bridges


def cut_vertices(g: Graph) -> set[int]:
    return _articulation(g.adj, None, g.n)[0]


def bridges(g: Graph) -> list[Edge]:
    return _articulation(g.adj, None, g.n)[1]


def _has_separating_pair(adj, alive: list[bool], n: int) -> tuple[int, int] | None:
    """Some pair whose removal disconnects the (2-connected, >= 4 vertex) alive subgraph."""
    for a in range(n):
        if not alive[a]:
            continue
        alive[a] = False
        cuts, _ = _articulation(adj, alive, n)
        alive[a] = True
        if cuts:
            b = min(cuts)
            return (a, b) if a < b else (b, a)
    return None


def separating_pairs(g: Graph) -> list[Edge]:
    """All vertex pairs whose removal leaves at least two components."""
    pairs = []
    alive = [True] * g.n
    for a, b in combinations(range(g.n), 2):
        alive[a] = alive[b] = False
        if len(_components(g.adj, alive, g.n)) > 1:
            pairs.append((a, b))
        alive[a] = alive[b] = True
    return pairs


@dataclass(frozen=True)
class ConnectivityReport:
    connected: bool
    cut_vertices: frozenset
    bridges: tuple
    is_biconnected: bool
    is_triconnected: bool


def connectivity(g: Graph) -> ConnectivityReport:
    """Cut vertices, bridges, 2- and 3-connectivity.

    K1 and K2 are connected but neither biconnected nor triconnected.
    ``is_triconnected`` means biconnected with no separating pair; the
    separating-pair scan removes each vertex in turn and looks for a cut
    vertex of the rest, so it costs O(n (n + m)).
    """
    connected = is_connected(g)
    cuts, brs = _articulation(g.adj, None, g.n)
    bicon = connected and not cuts and g.n >= 3
    tricon = False
    if bicon:
        tricon = g.n <= 3 or _has_separating_pair(g.adj, [True] * g.n, g.n) is None
    return ConnectivityReport(connected, frozenset(cuts), tuple(brs), bicon, tricon)


# ---------------------------------------------------------------------------
# triconnected components (maximal pair-inseparable vertex sets)
# ---------------------------------------------------------------------------

def _split_set(g: Graph, s: frozenset) -> list[frozenset] | None:
    """None when ``g[s]`` is pair-inseparable, else the pieces any larger
    pair-inseparable subset of ``s`` must fall into."""
    n = g.n
    alive = [False] * n
    for v in s:
        alive[v] = True
    comps = _components(g.adj, alive, n)
    if len(comps) > 1:
        return [frozenset(c) for c in comps]
    if len(s) <= 3:
        return None
    cuts, _ = _articulation(g.adj, alive, n)
    if cuts:
        c = min(cuts)
        alive[c] = False
        pieces = _components(g.adj, alive, n)
        return [frozenset(p) | {c} for p in pieces]
    pair = _has_separating_pair(g.adj, alive, n)
    if pair is None:
        return None
    a, b = pair
    alive[a] = alive[b] = False
    pieces = _components(g.adj, alive, n)
    return [frozenset(p) | {a, b} for p in pieces]


def is_pair_inseparable(g: Graph, s: Iterable[int]) -> bool:
    """``g[s]`` is connected and no two of its vertices disconnect it."""
    return _split_set(g, frozenset(s)) is None


@dataclass(frozen=True)
class TriconnectedComponents:
    components: tuple


def triconnected_components(g: Graph) -> TriconnectedComponents:
    """Maximal vertex sets inducing a subgraph that no two vertices disconnect.

    Components may overlap (C4 yields its four induced P3's). Sorted
    lexicographically as sorted tuples.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("triconnected components need a connected graph")
    found: set[frozenset] = set()
    seen: set[frozenset] = set()
    todo = [frozenset(range(g.n))]
    while todo:
        s = todo.pop()
        if s in seen:
            continue
        seen.add(s)
        pieces = _split_set(g, s)
        if pieces is None:
            found.add(s)
        else:
            todo.extend(p for p in pieces if p not in seen)
    # sets of size <= 3 escape the splitting argument; add every connected one
    for v in range(g.n):
        nb = g.adj[v]
        if not nb:
            found.add(frozenset([v]))
        for x in nb:
            found.add(frozenset((v, x)))
        for x, y in combinations(nb, 2):
            found.add(frozenset((v, x, y)))
    maximal: list[frozenset] = []
    for s in sorted(found, key=len, reverse=True):
        if not any(s < t for t in maximal):
            maximal.append(s)
    return TriconnectedComponents(tuple(sorted(tuple(sorted(c)) for c in maximal)))


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    n = g.n
    adj = []
    for v in range(n):
        nb = g.nbrsets[v]
        adj.append([w for w in range(n) if w != v and w not in nb])
    return Graph.from_adjacency(adj)


def universal_vertices(g: Graph) -> list[int]:
    """Vertices of degree n-1, read off the degree sequence."""
    target = g.n - 1
    return [v for v in range(g.n) if len(g.adj[v]) == target]


def complement_components(g: Graph) -> list[list[int]]:
    """Connected components of the complement without building it.

    BFS over the complement keeps the set of unvisited vertices and splits
    it at every step, which is O(n + m) overall.
    """
    unvisited = set(range(g.n))
    comps = []
    nbrsets = g.nbrsets
    while unvisited:
        s = min(unvisited)
        unvisited.discard(s)
        comp = [s]
        q = deque([s])
        while q:
            u = q.popleft()
            fresh = unvisited - nbrsets[u]
            for w in fresh:
                unvisited.discard(w)
                comp.append(w)
                q.append(w)
        comps.append(sorted(comp))
    comps.sort()
    return comps
