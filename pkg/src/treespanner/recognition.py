"""Class recognition and the structural partitions the stretch formulas use.

Recognisers favour definitional clarity over optimal asymptotics; every one
of them is checked against a brute-force definition in the test suite.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph import Graph, GraphError, complement_components, connected_components, is_connected

EXACT_SEARCH_LIMIT = 40


class SearchLimitExceeded(GraphError):
    pass


def _sorted(s) -> list[int]:
    return sorted(s)


# ---------------------------------------------------------------------------
# split graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitPartition:
    clique: frozenset
    stable: frozenset

    def to_dict(self) -> dict:
        return {"clique": _sorted(self.clique), "stable": _sorted(self.stable)}


def is_split_partition(g: Graph, p: SplitPartition) -> bool:
    x, y = p.clique, p.stable
    if x & y or len(x) + len(y) != g.n or (x | y) != frozenset(range(g.n)):
        return False
    nb = g.nbrsets
    return all(len(nb[v] & x) == len(x) - 1 for v in x) and all(not (nb[v] & y) for v in y)


def recognize_split(g: Graph) -> SplitPartition | None:
    """Split partition with the largest clique, or None.

    Degree-sequence test: with degrees d1 >= d2 >= ..., let w be the largest
    i with d_i >= i - 1; the graph is split iff
    sum(d_1..d_w) = w(w-1) + sum(d_{w+1}..d_n), and then the w vertices of
    largest degree form a maximum clique. Any other maximum split partition
    swaps one clique vertex x of degree w-1 for a stable vertex adjacent to
    the rest of the clique; the lexicographically smallest is returned.
    """
    n = g.n
    deg = g.degrees()
    order = sorted(range(n), key=lambda v: (-deg[v], v))
    w = 0
    for i, v in enumerate(order, start=1):
        if deg[v] >= i - 1:
            w = i
    head = sum(deg[v] for v in order[:w])
    tail = sum(deg[v] for v in order[w:])
    if head != w * (w - 1) + tail:
        return None
    clique = set(order[:w])
    best = sorted(clique)
    # candidate swaps: stable y of degree w-1 misses exactly one clique vertex x
    for y in order[w:]:
        if deg[y] != w - 1:
            continue
        missing = [x for x in clique if x not in g.nbrsets[y]]
        if len(missing) != 1:
            continue
        x = missing[0]
        if deg[x] != w - 1:
            continue
        cand = sorted((clique - {x}) | {y})
        if cand < best:
            best = cand
    xs = frozenset(best)
    return SplitPartition(xs, frozenset(range(n)) - xs)


# ---------------------------------------------------------------------------
# cographs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cotree:
    op: str  # "leaf", "union" or "join"
    children: tuple = ()
    vertex: int | None = None

    def leaves(self) -> list[int]:
        if self.op == "leaf":
            return [self.vertex]
        return sorted(v for c in self.children for v in c.leaves())

    def to_dict(self) -> dict:
        if self.op == "leaf":
            return {"op": "leaf", "vertex": self.vertex}
        return {"op": self.op, "children": [c.to_dict() for c in self.children]}


@dataclass(frozen=True)
class CographRecognition:
    cotree: Cotree | None
    witness: tuple | None  # an induced P4 (a, b, c, d) when not a cograph

    def __bool__(self) -> bool:
        return self.cotree is not None


def find_induced_p4(g: Graph, vertices=None) -> tuple | None:
    """First induced path a-b-c-d, scanning middle edges (b, c) in order."""
    nb = g.nbrsets
    allowed = frozenset(range(g.n)) if vertices is None else frozenset(vertices)
    for b in sorted(allowed):
        for c in g.adj[b]:
            if c not in allowed:
                continue
            for a in g.adj[b]:
                if a == c or a not in allowed or a in nb[c]:
                    continue
                for d in g.adj[c]:
                    if d == b or d not in allowed or d in nb[b] or d in nb[a] or d == a:
                        continue
                    return (a, b, c, d)
    return None


def _induced_parts(g: Graph, vs: list[int], co: bool) -> list[list[int]]:
    h = g.induced(vs)
    comps = complement_components(h) if co else connected_components(h)
    return [[h.labels[i] for i in c] for c in comps]


def recognize_cograph(g: Graph) -> CographRecognition:
    """Cotree by alternately splitting into components and co-components."""

    def build(vs: list[int]) -> Cotree | None:
        if len(vs) == 1:
            return Cotree("leaf", vertex=vs[0])
        for co, op in ((False, "union"), (True, "join")):
            parts = _induced_parts(g, vs, co)
            if len(parts) > 1:
                kids = []
                for p in parts:
                    t = build(p)
                    if t is None:
                        return None
                    kids.append(t)
                return Cotree(op, tuple(kids))
        return None

    tree = build(list(range(g.n)))
    if tree is not None:
        return CographRecognition(tree, None)
    return CographRecognition(None, find_induced_p4(g))


# ---------------------------------------------------------------------------
# spiders and almost-spiders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpiderPartition:
    S: frozenset
    K: frozenset
    R: frozenset
    kind: str  # "thin" or "thick"
    f: dict = field(hash=False, compare=True)

    def to_dict(self) -> dict:
        return {
            "S": _sorted(self.S), "K": _sorted(self.K), "R": _sorted(self.R),
            "kind": self.kind, "f": {str(s): k for s, k in sorted(self.f.items())},
        }


def is_spider_partition(g: Graph, p: SpiderPartition) -> bool:
    """The defining conditions, checked literally."""
    S, K, R = p.S, p.K, p.R
    if S & K or S & R or K & R or (S | K | R) != frozenset(range(g.n)):
        return False
    if len(S) != len(K) or len(K) < 2 or set(p.f) != set(S) or set(p.f.values()) != set(K):
        return False
    nb = g.nbrsets
    if any(len(nb[v] & K) != len(K) - 1 for v in K) or any(nb[s] & S for s in S):
        return False
    if any(not K <= nb[r] or nb[r] & S for r in R):
        return False
    if p.kind == "thin":
        return all(nb[s] == {p.f[s]} for s in S)
    if p.kind == "thick":
        return all(nb[s] == K - {p.f[s]} for s in S)
    return False


def spider_partition(g: Graph) -> SpiderPartition | None:
    """The (S, K, R) triple of a spider, or None.

    In a spider with |K| >= 2 the clique K is exactly the set of vertices of
    maximum degree, which pins everything else down. |K| = 2 spiders are
    reported thin (thin and thick coincide there).
    """
    n = g.n
    if n < 4 or not is_connected(g):
        return None
    deg = g.degrees()
    top = max(deg)
    K = frozenset(v for v in range(n) if deg[v] == top)
    k = len(K)
    if k < 2 or 2 * k > n:
        return None
    nb = g.nbrsets
    if any(len(nb[v] & K) != k - 1 for v in K):
        return None
    R, S = [], []
    for v in range(n):
        if v in K:
            continue
        (R if len(nb[v] & K) == k else S).append(v)
    if len(S) != k:
        return None
    S_set = frozenset(S)
    for s in S:
        if not nb[s] <= K:  # independent, and no R neighbours
            return None
    f = {}
    thin = all(len(nb[s]) == 1 for s in S)
    if thin:
        for s in S:
            f[s] = next(iter(nb[s]))
    elif all(len(nb[s]) == k - 1 for s in S):
        for s in S:
            f[s] = next(iter(K - nb[s]))
    else:
        return None
    if len(set(f.values())) != k:
        return None
    return SpiderPartition(S_set, K, frozenset(R), "thin" if thin else "thick", f)


@dataclass(frozen=True)
class AlmostSpiderPartition:
    base: SpiderPartition  # spider partition of g minus ``added``, in g's labels
    twin_kind: str  # "false_twin" or "true_twin"
    twin_of: int
    added: int
    label: str  # e.g. "S-false-thin"

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(), "twin_kind": self.twin_kind,
            "twin_of": self.twin_of, "added": self.added, "label": self.label,
        }


def _relabel_spider(p: SpiderPartition, labels) -> SpiderPartition:
    m = lambda s: frozenset(labels[v] for v in s)  # noqa: E731
    return SpiderPartition(m(p.S), m(p.K), m(p.R), p.kind, {labels[s]: labels[k] for s, k in p.f.items()})


def almost_spider_partition(g: Graph) -> AlmostSpiderPartition | None:
    """Spider plus one twin of an S or K vertex; the added vertex with the
    smallest index wins."""
    n = g.n
    if n < 5 or not is_connected(g):
        return None
    open_nb: dict[tuple, list[int]] = {}
    closed_nb: dict[tuple, list[int]] = {}
    for v in range(n):
        open_nb.setdefault(g.adj[v], []).append(v)
        closed_nb.setdefault(tuple(sorted(g.adj[v] + (v,))), []).append(v)
    partners: dict[int, list[tuple[int, str]]] = {}
    for groups, kind in ((open_nb, "false_twin"), (closed_nb, "true_twin")):
        for members in groups.values():
            for a in members:
                for b in members:
                    if a != b:
                        partners.setdefault(a, []).append((b, kind))
    for added in sorted(partners):
        h = g.induced(v for v in range(n) if v != added)
        p = spider_partition(h)
        if p is None:
            continue
        base = _relabel_spider(p, h.labels)
        for v, kind in sorted(partners[added]):
            if v in base.S or v in base.K:
                part = "S" if v in base.S else "K"
                label = f"{part}-{'false' if kind == 'false_twin' else 'true'}-{base.kind}"
                return AlmostSpiderPartition(base, kind, v, added, label)
    return None


# ---------------------------------------------------------------------------
# P4-sparse and P4-tidy via their recursive decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    member: bool
    trace: tuple  # (depth, case, sorted vertices) per decomposition node

    def __bool__(self) -> bool:
        return self.member


_P5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
_C5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
_CO_P5 = Graph(5, [(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4)])


def _base_name(h: Graph) -> str | None:
    if h.n != 5:
        return None
    from .transforms import is_isomorphic  # local: transforms imports this module

    for name, b in (("P5", _P5), ("C5", _C5), ("co-P5", _CO_P5)):
        if is_isomorphic(h, b):
            return name
    return None


def _decompose(g: Graph, tidy: bool) -> Decomposition:
    trace = []
    todo = [(0, list(range(g.n)))]
    while todo:
        depth, vs = todo.pop()
        if len(vs) == 1:
            trace.append((depth, "K1", tuple(vs)))
            continue
        parts = _induced_parts(g, vs, co=False)
        if len(parts) > 1:
            trace.append((depth, "union", tuple(vs)))
            todo.extend((depth + 1, p) for p in reversed(parts))
            continue
        parts = _induced_parts(g, vs, co=True)
        if len(parts) > 1:
            trace.append((depth, "join", tuple(vs)))
            todo.extend((depth + 1, p) for p in reversed(parts))
            continue
        h = g.induced(vs)
        p = spider_partition(h)
        if p is not None:
            trace.append((depth, f"spider-{p.kind}", tuple(vs)))
            if p.R:
                todo.append((depth + 1, sorted(h.labels[v] for v in p.R)))
            continue
        if tidy:
            a = almost_spider_partition(h)
            if a is not None:
                trace.append((depth, f"almost-spider-{a.label}", tuple(vs)))
                if a.base.R:
                    todo.append((depth + 1, sorted(h.labels[v] for v in a.base.R)))
                continue
            name = _base_name(h)
            if name is not None:
                trace.append((depth, name, tuple(vs)))
                continue
        trace.append((depth, "fail", tuple(vs)))
        return Decomposition(False, tuple(trace))
    return Decomposition(True, tuple(trace))


def recognize_p4_sparse(g: Graph) -> Decomposition:
    """Every node is a union, a join, or a spider whose R part recurses."""
    return _decompose(g, tidy=False)


def recognize_p4_tidy(g: Graph) -> Decomposition:
    """As for P4-sparse, plus almost-spiders and the base graphs P5, C5, co-P5."""
    return _decompose(g, tidy=True)


# ---------------------------------------------------------------------------
# (0,2)-partitions, clique covers, inflation witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroTwoPartition:
    K1: frozenset
    K2: frozenset

    def to_dict(self) -> dict:
        return {"K1": _sorted(self.K1), "K2": _sorted(self.K2)}


def is_zero_two_partition(g: Graph, p: ZeroTwoPartition) -> bool:
    if p.K1 & p.K2 or (p.K1 | p.K2) != frozenset(range(g.n)):
        return False
    nb = g.nbrsets
    return all(len(nb[v] & c) == len(c) - 1 for c in (p.K1, p.K2) for v in c)


def _complement_sides(g: Graph) -> list[tuple[list[int], list[int]]] | None:
    """2-colour each complement component (side 0 holds its smallest vertex);
    None when a colour class is not a clique of g."""
    nb = g.nbrsets
    colour = [-1] * g.n
    unvisited = set(range(g.n))
    sides = []
    while unvisited:
        s = min(unvisited)
        unvisited.discard(s)
        colour[s] = 0
        comp = ([s], [])
        q = deque([s])
        while q:
            u = q.popleft()
            fresh = unvisited - nb[u]
            for w in fresh:
                colour[w] = 1 - colour[u]
                comp[colour[w]].append(w)
                q.append(w)
            unvisited -= fresh
        sides.append((sorted(comp[0]), sorted(comp[1])))
    k1 = frozenset(v for v in range(g.n) if colour[v] == 0)
    k2 = frozenset(range(g.n)) - k1
    for cls in (k1, k2):
        size = len(cls) - 1
        if any(len(nb[v] & cls) != size for v in cls):
            return None
    return sides


def zero_two_partition(g: Graph) -> ZeroTwoPartition | None:
    """Two cliques covering V, found by 2-colouring the complement.

    Canonical choice: every complement component puts the side holding its
    smallest vertex into K1 (so vertex 0 is in K1).
    """
    sides = _complement_sides(g)
    if sides is None:
        return None
    k1 = frozenset(v for a, _ in sides for v in a)
    return ZeroTwoPartition(k1, frozenset(range(g.n)) - k1)


def zero_two_partitions(g: Graph, limit: int = 16) -> list[ZeroTwoPartition]:
    """All (0,2)-partitions as unordered pairs, K1 always holding vertex 0."""
    sides = _complement_sides(g)
    if sides is None:
        return []
    if len(sides) - 1 > limit:
        raise SearchLimitExceeded(f"{len(sides)} complement components")
    out = []
    first = sides[0][0]
    rest = sides[1:]
    for mask in range(1 << len(rest)):
        k1 = set(first)
        for i, (a, b) in enumerate(rest):
            k1.update(b if mask >> i & 1 else a)
        out.append(ZeroTwoPartition(frozenset(k1), frozenset(range(g.n)) - frozenset(k1)))
    return out


@dataclass(frozen=True)
class CliqueCover:
    cliques: tuple  # tuple of sorted vertex tuples

    def __len__(self) -> int:
        return len(self.cliques)

    def index(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.cliques) for v in c}

    def to_dict(self) -> dict:
        return {"cliques": [list(c) for c in self.cliques]}


def is_clique_cover(g: Graph, c: CliqueCover) -> bool:
    seen: set[int] = set()
    for q in c.cliques:
        if not q or seen & set(q):
            return False
        seen.update(q)
        qs = frozenset(q)
        if any(len(g.nbrsets[v] & qs) != len(qs) - 1 for v in q):
            return False
    return seen == set(range(g.n))


def _cover_from_assignment(assign: list[int]) -> CliqueCover:
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(assign):
        groups.setdefault(c, []).append(v)
    return CliqueCover(tuple(sorted(tuple(sorted(q)) for q in groups.values())))


def clique_cover(g: Graph, l: int, limit: int = EXACT_SEARCH_LIMIT) -> CliqueCover | None:
    """A partition into at most ``l`` cliques (exact colouring of the complement)."""
    if l < 1:
        raise ValueError("need at least one clique")
    n = g.n
    if n > limit:
        raise SearchLimitExceeded(f"exact clique cover limited to n <= {limit}")
    masks = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    # most constrained first: low degree in g = high degree in the complement
    order = sorted(range(n), key=lambda v: (len(g.adj[v]), v))
    classes: list[int] = []
    assign = [-1] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for c, members in enumerate(classes):
            if members & ~masks[v] == 0:
                classes[c] |= 1 << v
                assign[v] = c
                if rec(i + 1):
                    return True
                classes[c] &= ~(1 << v)
        if len(classes) < l:
            classes.append(1 << v)
            assign[v] = len(classes) - 1
            if rec(i + 1):
                return True
            classes.pop()
        assign[v] = -1
        return False

    if not rec(0):
        return None
    return _cover_from_assignment(assign)


def min_clique_cover(g: Graph, limit: int = EXACT_SEARCH_LIMIT) -> CliqueCover:
    for l in range(1, g.n + 1):
        c = clique_cover(g, l, limit)
        if c is not None:
            return c
    raise AssertionError("unreachable: singletons always cover")


def quotient(h: Graph, cover: CliqueCover) -> tuple[Graph, dict]:
    """Contract every clique to one vertex; also returns, per base edge, the
    list of h-edges crossing that pair of cliques."""
    where = cover.index()
    crossing: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for u, v in h.edges():
        a, b = where[u], where[v]
        if a != b:
            key = (a, b) if a < b else (b, a)
            crossing.setdefault(key, []).append((u, v))
    return Graph(len(cover.cliques), sorted(crossing)), crossing


@dataclass(frozen=True)
class InflationWitness:
    cover: CliqueCover
    base: Graph
    cross_edges: dict = field(hash=False)  # base edge -> the one h-edge realising it

    def to_dict(self) -> dict:
        return {
            "cover": self.cover.to_dict(),
            "base_edges": [list(e) for e in self.base.edges()],
            "cross_edges": [[list(k), list(v)] for k, v in sorted(self.cross_edges.items())],
        }


def is_inflation_witness(h: Graph, w: InflationWitness) -> bool:
    if not is_clique_cover(h, w.cover):
        return False
    base, crossing = quotient(h, w.cover)
    if base != w.base:
        return False
    if any(len(es) != 1 for es in crossing.values()):
        return False
    ends = [x for es in crossing.values() for e in es for x in e]
    if len(ends) != len(set(ends)):
        return False  # cross edges must form a matching
    return all(w.cross_edges.get(k) == es[0] for k, es in crossing.items())


def inflation_witness(g: Graph, limit: int = EXACT_SEARCH_LIMIT) -> InflationWitness | None:
    """A clique cover exhibiting ``g`` as a generalised inflation, or None.

    Cross edges must form a matching with at most one edge per pair of
    cliques (which forces clique sizes >= base degrees). Exact search over
    clique partitions, fewest cliques first.
    """
    n = g.n
    if n > limit:
        raise SearchLimitExceeded(f"inflation search limited to n <= {limit}")
    if not is_connected(g):
        return None
    adj = g.adj
    masks = [sum(1 << w for w in adj[v]) for v in range(n)]

    def attempt(l: int) -> list[int] | None:
        assign = [-1] * n
        members: list[int] = []
        outside = [0] * n  # assigned neighbours in other cliques
        pair_used: set[tuple[int, int]] = set()

        def rec(v: int) -> bool:
            if v == n:
                return True
            options = [c for c, mm in enumerate(members) if mm & ~masks[v] == 0]
            if len(members) < l:
                options.append(len(members))
            for c in options:
                # cross neighbours of v among vertices already placed
                cross = [w for w in adj[v] if w < v and assign[w] != c]
                if len(cross) > 1:
                    continue
                touched = None
                if cross:
                    w = cross[0]
                    key = (min(c, assign[w]), max(c, assign[w]))
                    if outside[w] >= 1 or key in pair_used:
                        continue
                    touched = (w, key)
                # v may not join a clique whose members already have v-free edges elsewhere? no: fine
                new = c == len(members)
                if new:
                    members.append(1 << v)
                else:
                    members[c] |= 1 << v
                assign[v] = c
                if touched:
                    outside[touched[0]] += 1
                    outside[v] += 1
                    pair_used.add(touched[1])
                if rec(v + 1):
                    return True
                if touched:
                    outside[touched[0]] -= 1
                    outside[v] -= 1
                    pair_used.discard(touched[1])
                assign[v] = -1
                if new:
                    members.pop()
                else:
                    members[c] &= ~(1 << v)
            return False

        return assign if rec(0) else None

    for l in range(1, n + 1):
        assign = attempt(l)
        if assign is not None:
            cover = _cover_from_assignment(assign)
            base, crossing = quotient(g, cover)
            cross = {k: es[0] for k, es in crossing.items()}
            return InflationWitness(cover, base, cross)
    return None
