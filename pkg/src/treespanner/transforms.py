"""Graph constructions: inflation, subdivision, line graphs, cycle powers,
seeded class generators, and canonical forms for small graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, GraphError, is_connected
from .recognition import CliqueCover, InflationWitness


# ---------------------------------------------------------------------------
# inflation and friends
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InflationSpec:
    """Replace base vertex v by a clique of ``sizes[v]`` vertices.

    ``matching`` optionally fixes, for a base edge (u, v) with u < v, which
    clique members realise it: ``{(u, v): (i, j)}`` with i, j positions
    inside the cliques of u and v. Unspecified edges take the next unused
    member of each clique, in edge order.
    """

    base: Graph
    sizes: tuple | None = None
    matching: dict | None = None


def inflate(spec: InflationSpec) -> tuple[Graph, InflationWitness]:
    base = spec.base
    if not is_connected(base):
        raise GraphError("inflation needs a connected base graph")
    degs = base.degrees()
    sizes = list(spec.sizes) if spec.sizes is not None else [max(1, d) for d in degs]
    if len(sizes) != base.n:
        raise GraphError("one clique size per base vertex required")
    for v, (s, d) in enumerate(zip(sizes, degs)):
        if s < max(1, d):
            raise GraphError(f"clique for base vertex {v} has size {s} < degree {d}")
    offset = [0] * base.n
    for v in range(1, base.n):
        offset[v] = offset[v - 1] + sizes[v - 1]
    total = offset[-1] + sizes[-1]
    cliques = [tuple(range(offset[v], offset[v] + sizes[v])) for v in range(base.n)]

    matching = dict(spec.matching or {})
    used: list[set[int]] = [set() for _ in range(base.n)]
    for (u, v), (i, j) in matching.items():
        for w, pos in ((u, i), (v, j)):
            if not 0 <= pos < sizes[w]:
                raise GraphError(f"representative {pos} outside clique of base vertex {w}")
            if pos in used[w]:
                raise GraphError(f"representative {pos} of base vertex {w} used twice")
            used[w].add(pos)
    nxt = [0] * base.n

    def take(w: int) -> int:
        while nxt[w] in used[w]:
            nxt[w] += 1
        used[w].add(nxt[w])
        return nxt[w]

    edges = []
    for clique in cliques:
        edges.extend((a, b) for k, a in enumerate(clique) for b in clique[k + 1:])
    cross = {}
    for u, v in base.edges():
        if (u, v) in matching:
            i, j = matching[(u, v)]
        else:
            i, j = take(u), take(v)
        e = (offset[u] + i, offset[v] + j)
        cross[(u, v)] = e
        edges.append(e)
    h = Graph(total, edges)
    witness = InflationWitness(CliqueCover(tuple(cliques)), base, cross)
    return h, witness


def subdivide(g: Graph) -> Graph:
    """Each edge vw becomes a path v, x, w; x = n + (index of vw in sorted order)."""
    edges = []
    for i, (u, v) in enumerate(g.edges()):
        x = g.n + i
        edges.append((u, x))
        edges.append((v, x))
    return Graph(g.n + g.m, edges)


def line_graph(g: Graph) -> Graph:
    """Vertex i stands for the i-th edge in sorted order; ``labels`` keeps the edges."""
    es = g.edges()
    if not es:
        raise GraphError("line graph of an edgeless graph is empty")
    incident: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(es):
        incident[u].append(i)
        incident[v].append(i)
    adj: list[set[int]] = [set() for _ in es]
    for inc in incident:
        for a in inc:
            adj[a].update(inc)
    for i, s in enumerate(adj):
        s.discard(i)
    return Graph.from_adjacency([sorted(s) for s in adj], labels=es)


def cycle_power(n: int, k: int) -> Graph:
    """i ~ j iff their cyclic distance is at most k."""
    if n < 3 or not 1 <= k < n / 2:
        raise GraphError(f"cycle_power needs n >= 3 and 1 <= k < n/2, got n={n}, k={k}")
    edges = {(min(i, (i + d) % n), max(i, (i + d) % n)) for i in range(n) for d in range(1, k + 1)}
    return Graph(n, sorted(edges))


def complete_graph(n: int) -> Graph:
    return Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need n >= 3")
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*gs: Graph) -> Graph:
    edges, off = [], 0
    for g in gs:
        edges.extend((u + off, v + off) for u, v in g.edges())
        off += g.n
    return Graph(off, edges)


def join(*gs: Graph) -> Graph:
    edges, off, blocks = [], 0, []
    for g in gs:
        edges.extend((u + off, v + off) for u, v in g.edges())
        blocks.append(range(off, off + g.n))
        off += g.n
    for i, a in enumerate(blocks):
        for b in blocks[i + 1:]:
            edges.extend((x, y) for x in a for y in b)
    return Graph(off, edges)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Vertex v becomes perm[v]."""
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


# ---------------------------------------------------------------------------
# spiders
# ---------------------------------------------------------------------------

def spider(k: int, thin: bool = True, r: Graph | None = None) -> Graph:
    """S = 0..k-1, K = k..2k-1 with f(i) = k + i, R = 2k.. (joined to K)."""
    if k < 2:
        raise GraphError("spiders need |K| >= 2")
    edges = [(k + a, k + b) for a in range(k) for b in range(a + 1, k)]
    for i in range(k):
        if thin:
            edges.append((i, k + i))
        else:
            edges.extend((i, k + j) for j in range(k) if j != i)
    rn = 0
    if r is not None:
        rn = r.n
        edges.extend((2 * k + u, 2 * k + v) for u, v in r.edges())
        edges.extend((2 * k + x, k + j) for x in range(rn) for j in range(k))
    return Graph(2 * k + rn, edges)


ALMOST_SPIDER_CASES = tuple(
    f"{part}-{twin}-{kind}"
    for kind in ("thin", "thick")
    for part, twin in (("S", "false"), ("K", "false"), ("S", "true"), ("K", "true"))
)


def almost_spider(case: str, k: int, r: Graph | None = None, which: int = 0) -> Graph:
    """Spider plus a twin of S-vertex ``which`` (or K-vertex k + which).

    ``case`` is ``"{S|K}-{false|true}-{thin|thick}"``; the twin is the last vertex.
    """
    part, twin, kind = case.split("-")
    if part not in "SK" or twin not in ("false", "true") or kind not in ("thin", "thick"):
        raise GraphError(f"unknown almost-spider case {case!r}")
    base = spider(k, thin=(kind == "thin"), r=r)
    v = which if part == "S" else k + which
    new = base.n
    nbrs = list(base.adj[v])
    if twin == "true":
        nbrs.append(v)
    return Graph(new + 1, base.edges() + [(x, new) for x in nbrs])


# ---------------------------------------------------------------------------
# canonical forms (small graphs only)
# ---------------------------------------------------------------------------

CANON_LIMIT = 10


def _refine(adj, colors: list[int]) -> list[int]:
    n = len(adj)
    ncls = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == ncls:
            return new
        colors, ncls = new, len(ranks)


def canonical_form(g: Graph, limit: int = CANON_LIMIT) -> tuple:
    """Isomorphism-invariant key: minimum adjacency code over the leaves of
    an individualisation-refinement search (twins pruned)."""
    n = g.n
    if n > limit:
        raise GraphError(f"canonical forms limited to n <= {limit}")
    adj = g.adj
    nbrsets = g.nbrsets
    best = None

    def code(order: list[int]) -> tuple:
        bits = []
        for j in range(1, n):
            vj = order[j]
            bits.extend(1 if order[i] in nbrsets[vj] else 0 for i in range(j))
        return tuple(bits)

    def search(colors: list[int]) -> None:
        nonlocal best
        colors = _refine(adj, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            order = sorted(range(n), key=lambda v: colors[v])
            c = code(order)
            if best is None or c < best:
                best = c
            return
        target = min((c for c in cells if len(cells[c]) > 1), key=lambda c: (len(cells[c]), c))
        tried: list[int] = []
        for v in cells[target]:
            if any(nbrsets[v] - {u} == nbrsets[u] - {v} for u in tried):
                continue
            tried.append(v)
            new = [2 * c + 1 for c in colors]
            new[v] = 2 * target
            search(new)

    search([len(a) for a in adj])
    return (n, best)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# seeded generators
# ---------------------------------------------------------------------------

def _random_cograph(rng: random.Random, n: int, connected: bool) -> Graph:
    if n == 1:
        return Graph(1)
    parts = rng.randint(2, min(n, 3))
    cuts = sorted(rng.sample(range(1, n), parts - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    # children of a join are cotree children of the opposite type
    if connected:
        kids = [_random_cograph(rng, s, connected=False) for s in sizes]
        return join(*kids)
    kids = [_random_cograph(rng, s, connected=True) for s in sizes]
    if rng.random() < 0.3:
        return join(*kids)
    return disjoint_union(*kids)


def _random_p4_sparse(rng: random.Random, n: int, connected: bool) -> Graph:
    if n == 1:
        return Graph(1)
    if n >= 4 and rng.random() < 0.4:
        k = rng.randint(2, n // 2)
        rn = n - 2 * k
        r = _random_p4_sparse(rng, rn, connected=rng.random() < 0.5) if rn else None
        return spider(k, thin=rng.random() < 0.5, r=r)
    parts = rng.randint(2, min(n, 3))
    cuts = sorted(rng.sample(range(1, n), parts - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    if connected:
        return join(*[_random_p4_sparse(rng, s, connected=rng.random() < 0.5) for s in sizes])
    return disjoint_union(*[_random_p4_sparse(rng, s, connected=True) for s in sizes])


_TIDY_BASES = {
    "P5": path_graph(5),
    "C5": cycle_graph(5),
    "co-P5": Graph(5, [(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4)]),
}


def _random_p4_tidy(rng: random.Random, n: int, connected: bool) -> Graph:
    if n == 1:
        return Graph(1)
    roll = rng.random()
    if n == 5 and roll < 0.3:
        name = rng.choice(["C5", "co-P5"] + ([] if connected else ["P5"]))
        return _TIDY_BASES[name]
    if n >= 5 and roll < 0.45:
        k = rng.randint(2, (n - 1) // 2)
        rn = n - 2 * k - 1
        r = _random_p4_tidy(rng, rn, connected=rng.random() < 0.5) if rn else None
        return almost_spider(rng.choice(ALMOST_SPIDER_CASES), k, r=r, which=rng.randrange(k))
    if n >= 4 and roll < 0.6:
        k = rng.randint(2, n // 2)
        rn = n - 2 * k
        r = _random_p4_tidy(rng, rn, connected=rng.random() < 0.5) if rn else None
        return spider(k, thin=rng.random() < 0.5, r=r)
    parts = rng.randint(2, min(n, 3))
    cuts = sorted(rng.sample(range(1, n), parts - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    if connected:
        return join(*[_random_p4_tidy(rng, s, connected=rng.random() < 0.5) for s in sizes])
    return disjoint_union(*[_random_p4_tidy(rng, s, connected=True) for s in sizes])


def _random_split(rng: random.Random, clique: int, stable: int, max_degree: int | None) -> Graph:
    edges = [(a, b) for a in range(clique) for b in range(a + 1, clique)]
    top = clique if max_degree is None else min(clique, max_degree)
    for y in range(clique, clique + stable):
        d = rng.randint(1, top)
        edges.extend((x, y) for x in rng.sample(range(clique), d))
    return Graph(clique + stable, edges)


def _random_cliques(rng: random.Random, sizes: Sequence[int], p: float, matching: bool) -> Graph:
    blocks, edges = [], []
    off = 0
    for s in sizes:
        blocks.append(range(off, off + s))
        edges.extend((a, b) for a in range(off, off + s) for b in range(a + 1, off + s))
        off += s
    if matching:
        if len(sizes) != 2:
            raise GraphError("a perfect cross matching needs exactly two cliques")
        edges.extend((blocks[0][t], blocks[1][t]) for t in range(min(sizes)))
    else:
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                edges.extend((x, y) for x in blocks[i] for y in blocks[j] if rng.random() < p)
    g = Graph(off, sorted(set(edges)))
    if not is_connected(g):
        extra = set(g.edges())
        for i in range(len(blocks) - 1):
            extra.add((rng.choice(blocks[i]), rng.choice(blocks[i + 1])))
        g = Graph(off, sorted(extra))
    return g


def generate(kind: str, seed: int, relabel_vertices: bool = True, **params) -> Graph:
    """A random member of the named class, deterministic for a given seed.

    kinds and their parameters:

    - ``complete`` / ``cycle`` / ``path``: n
    - ``gnp``: n, p (connectivity not forced)
    - ``split``: clique, stable, max_degree (optional)
    - ``cograph`` / ``p4_sparse`` / ``p4_tidy``: n (connected)
    - ``thin_spider`` / ``thick_spider``: k, r (Graph or None)
    - ``almost_spider``: case, k, r, which
    - ``zero_two``: sizes=(a, b), cross="matching" or p
    - ``zero_l``: sizes, p
    - ``inflation``: base (Graph), sizes (optional)
    """
    try:
        return _generate(kind, seed, relabel_vertices, **params)
    except KeyError as exc:
        raise GraphError(f"{kind} needs parameter {exc.args[0]}") from None


def _generate(kind: str, seed: int, relabel_vertices: bool, **params) -> Graph:
    rng = random.Random(seed)
    if kind == "complete":
        g = complete_graph(params["n"])
    elif kind == "cycle":
        g = cycle_graph(params["n"])
    elif kind == "path":
        g = path_graph(params["n"])
    elif kind == "gnp":
        n, p = params["n"], params.get("p", 0.5)
        g = Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])
    elif kind == "split":
        g = _random_split(rng, params["clique"], params["stable"], params.get("max_degree"))
    elif kind == "cograph":
        g = _random_cograph(rng, params["n"], connected=True)
    elif kind == "p4_sparse":
        g = _random_p4_sparse(rng, params["n"], connected=True)
    elif kind == "p4_tidy":
        g = _random_p4_tidy(rng, params["n"], connected=True)
    elif kind in ("thin_spider", "thick_spider"):
        g = spider(params["k"], thin=(kind == "thin_spider"), r=params.get("r"))
    elif kind == "almost_spider":
        g = almost_spider(params["case"], params["k"], r=params.get("r"), which=params.get("which", 0))
    elif kind == "zero_two":
        sizes = params.get("sizes", (3, 3))
        cross = params.get("cross", 0.5)
        if len(sizes) != 2:
            raise GraphError("zero_two needs exactly two clique sizes")
        if cross == "matching":
            g = _random_cliques(rng, sizes, 0.0, matching=True)
        else:
            g = _random_cliques(rng, sizes, float(cross), matching=False)
    elif kind == "zero_l":
        g = _random_cliques(rng, params["sizes"], float(params.get("p", 0.3)), matching=False)
    elif kind == "inflation":
        sizes = params.get("sizes")
        g, _ = inflate(InflationSpec(params["base"], tuple(sizes) if sizes else None))
    else:
        raise GraphError(f"unknown graph class {kind!r}")
    if relabel_vertices:
        perm = list(range(g.n))
        rng.shuffle(perm)
        g = relabel(g, perm)
    return g
