"""Exact brute-force ground truth for tree stretch.

Everything here is exponential in the worst case and meant for small
graphs: it certifies the class-specific fast paths in ``spanners``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .graph import DisconnectedGraphError, Edge, Graph, GraphError, is_connected

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


class InvalidTreeError(GraphError):
    pass


@dataclass(frozen=True)
class SpanningTree:
    n: int
    edges: tuple  # sorted (u, v) pairs with u < v
    graph: Graph | None = field(default=None, compare=False, repr=False)

    @classmethod
    def of(cls, g: Graph, edges) -> "SpanningTree":
        es = tuple(sorted((u, v) if u < v else (v, u) for u, v in edges))
        return cls(g.n, es, g)


@dataclass(frozen=True)
class StretchCertificate:
    tree: SpanningTree
    stretch: int
    witness: Edge | None
    method: str = ""

    def to_dict(self) -> dict:
        return {
            "stretch": self.stretch,
            "tree": [list(e) for e in self.tree.edges],
            "witness": list(self.witness) if self.witness else None,
            "method": self.method,
        }


def _tree_structure(n: int, edges) -> tuple[list[int], list[int]]:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parent = [-1] * n
    depth = [-1] * n
    depth[0] = 0
    q = deque([0])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                q.append(w)
    return parent, depth


def tree_stretch_factor(g: Graph, tree: SpanningTree, method: str = "") -> StretchCertificate:
    """Maximum tree distance between the endpoints of an edge of ``g``.

    The witness is the lexicographically smallest non-tree edge attaining the
    maximum (absent when the tree is ``g`` itself).
    """
    n = g.n
    if tree.n != n:
        raise InvalidTreeError(f"tree on {tree.n} vertices, graph has {n}")
    if len(tree.edges) != n - 1:
        raise InvalidTreeError(f"a spanning tree needs {n - 1} edges, got {len(tree.edges)}")
    tset = set(tree.edges)
    if len(tset) != len(tree.edges):
        raise InvalidTreeError("repeated tree edge")
    for u, v in tree.edges:
        if not (0 <= u < n and 0 <= v < n) or not g.has_edge(u, v):
            raise InvalidTreeError(f"tree edge ({u}, {v}) is not an edge of the graph")
    parent, depth = _tree_structure(n, tree.edges)
    if min(depth) < 0:
        raise InvalidTreeError("tree edges do not span the graph (cycle or disconnected)")

    best, witness = 1, None
    for u in range(n):
        for v in g.adj[u]:
            if v <= u or (u, v) in tset:
                continue
            # climbing costs O(distance), linear for low-stretch trees
            a, b, d = u, v, 0
            while depth[a] > depth[b]:
                a = parent[a]
                d += 1
            while depth[b] > depth[a]:
                b = parent[b]
                d += 1
            while a != b:
                a = parent[a]
                b = parent[b]
                d += 2
            if d > best:
                best, witness = d, (u, v)
    return StretchCertificate(tree, best, witness, method)


def spanning_tree_count(g: Graph) -> int:
    """Matrix-tree theorem, exact integer determinant (Bareiss elimination)."""
    n = g.n
    if n == 1:
        return 1
    size = n - 1
    mat = [[0] * size for _ in range(size)]
    for i in range(size):
        v = i + 1
        mat[i][i] = len(g.adj[v])
        for w in g.adj[v]:
            if w >= 1:
                mat[i][w - 1] = -1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if mat[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if mat[r][k] != 0), None)
            if swap is None:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        pivot = mat[k][k]
        row_k = mat[k]
        for i in range(k + 1, size):
            row_i = mat[i]
            f = row_i[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * mat[size - 1][size - 1]


def _check_budget(g: Graph, budget: int | None) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("spanning trees need a connected graph")
    if budget is not None:
        count = spanning_tree_count(g)
        if count > budget:
            raise BudgetExceeded(f"{count} spanning trees exceed the budget of {budget}")


def enumerate_spanning_trees(g: Graph, budget: int | None = DEFAULT_BUDGET) -> Iterator[SpanningTree]:
    """Every spanning tree exactly once, in lexicographic order of edge sets.

    Include/exclude branching over the sorted edge list; an edge is excluded
    only if the remaining edges still connect the graph.
    """
    _check_budget(g, budget)
    n = g.n
    edges = g.edges()
    m = len(edges)
    chosen: list[Edge] = []

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def connected_without(i: int) -> bool:
        # chosen edges plus edges[i+1:] connect all vertices?
        parent = list(range(n))
        parts = n
        for u, v in chosen:
            ru, rv = find(parent, u), find(parent, v)
            parent[ru] = rv
            parts -= 1
        for u, v in edges[i + 1:]:
            ru, rv = find(parent, u), find(parent, v)
            if ru != rv:
                parent[ru] = rv
                parts -= 1
                if parts == 1:
                    return True
        return parts == 1

    def rec(i: int, parent: list[int]):
        if len(chosen) == n - 1:
            yield SpanningTree(n, tuple(chosen), g)
            return
        if m - i < n - 1 - len(chosen):
            return
        u, v = edges[i]
        ru, rv = find(parent, u), find(parent, v)
        if ru != rv:
            p2 = parent[:]
            p2[ru] = rv
            chosen.append((u, v))
            yield from rec(i + 1, p2)
            chosen.pop()
        if connected_without(i):
            yield from rec(i + 1, parent)

    yield from rec(0, list(range(n)))


def _search(g: Graph, t: int, order: list[Edge] | None = None, forced: int = 0,
            banned: tuple = ()) -> list[Edge] | None:
    """First spanning tree with stretch <= t in the branch order, or None.

    Branch and bound over ``order`` (default: sorted edges, which yields the
    lexicographically smallest such tree), include before exclude. The first
    ``forced`` edges of ``order`` must be included and ``banned`` edges are
    excluded up front.
    Constraints are checked exactly when two forest components merge (every
    graph edge between them becomes a non-tree edge with a known tree
    distance); exclusions are pruned when the edges still available can no
    longer connect the graph or bring an excluded edge within distance t.
    """
    n = g.n
    if n == 1:
        return []
    edges = g.edges() if order is None else list(order)
    m = len(edges)
    gadj = g.adj
    comp = list(range(n))
    members = [[v] for v in range(n)]
    fadj: list[list[int]] = [[] for _ in range(n)]
    avail = [set(a) for a in gadj]
    chosen: list[Edge] = []
    excluded: list[Edge] = []

    def forest_dist(src: int) -> dict[int, int]:
        dist = {src: 0}
        q = deque([src])
        while q:
            x = q.popleft()
            for y in fadj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        return dist

    def merge_ok(u: int, v: int) -> bool:
        du = forest_dist(u)
        dv = forest_dist(v)
        cv = comp[v]
        for x, dx in du.items():
            for y in gadj[x]:
                if comp[y] == cv and not (x == u and y == v):
                    if dx + 1 + dv[y] > t:
                        return False
        return True

    def entry_ok(c: int) -> bool:
        # every other component reaches component c through one entry
        # vertex e, so its neighbours X in c need max d(e, x) <= t - 1
        # for some e; in a tree that radius is ceil(diam(X) / 2)
        groups: dict[int, set[int]] = {}
        for x in members[c]:
            for y in gadj[x]:
                cy = comp[y]
                if cy != c:
                    groups.setdefault(cy, set()).add(x)
        limit = 2 * (t - 1)
        for xs in groups.values():
            if len(xs) < 2:
                continue
            d0 = forest_dist(next(iter(xs)))
            far = max(xs, key=d0.__getitem__)
            d1 = forest_dist(far)
            if max(d1[x] for x in xs) > limit:
                return False
        return True

    def within(x: int, y: int) -> bool:
        # distance from x to y is at most t using only edges that can still
        # be tree edges: forest edges and available edges between components
        seen = {x}
        frontier = [x]
        for _ in range(t):
            nxt = []
            for a in frontier:
                ca = comp[a]
                for b in avail[a]:
                    if comp[b] == ca and b not in fadj[a]:
                        continue
                    if b == y:
                        return True
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
            if not frontier:
                break
        return False

    def avail_connected() -> bool:
        seen = [False] * n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            a = stack.pop()
            for b in avail[a]:
                if not seen[b]:
                    seen[b] = True
                    count += 1
                    stack.append(b)
        return count == n

    def pending_ok() -> bool:
        return all(comp[x] == comp[y] or within(x, y) for x, y in excluded)

    def rec(i: int) -> bool:
        if len(chosen) == n - 1:
            return True
        if i == m:
            return False
        u, v = edges[i]
        cu, cv = comp[u], comp[v]
        if i < forced and cu == cv:
            return False
        if cu != cv:
            if merge_ok(u, v):
                if len(members[cu]) > len(members[cv]):
                    u, v, cu, cv = v, u, cv, cu
                moved = members[cu]
                for x in moved:
                    comp[x] = cv
                members[cv].extend(moved)
                members[cu] = []
                fadj[u].append(v)
                fadj[v].append(u)
                chosen.append(edges[i])
                if entry_ok(cv) and rec(i + 1):
                    return True
                chosen.pop()
                fadj[u].pop()
                fadj[v].pop()
                del members[cv][-len(moved):]
                members[cu] = moved
                for x in moved:
                    comp[x] = cu
            u, v = edges[i]
        if i < forced:
            return False
        # exclude
        avail[u].discard(v)
        avail[v].discard(u)
        excluded.append((u, v))
        ok = True
        if comp[u] != comp[v]:
            ok = avail_connected() and pending_ok()
        if ok and rec(i + 1):
            return True
        excluded.pop()
        avail[u].add(v)
        avail[v].add(u)
        return False

    for u, v in banned:
        avail[u].discard(v)
        avail[v].discard(u)
        excluded.append((u, v))
    if banned and not (avail_connected() and pending_ok()):
        return None
    if rec(0):
        return sorted(chosen)
    return None


def _heuristic_order(g: Graph, edges) -> list[Edge]:
    # hubs first: stars around high-degree vertices are found (or refuted) fast
    d = g.degrees()
    return sorted(edges, key=lambda e: (-max(d[e[0]], d[e[1]]), -min(d[e[0]], d[e[1]]), e))


def _lex_min_tree(g: Graph, t: int) -> list[Edge] | None:
    """Lexicographically smallest spanning tree with stretch <= t.

    Greedy over the sorted edges: an edge is kept iff some feasible tree
    extends the decisions so far with it. Each such question is a
    branch-and-bound search in hub-first order, which is far quicker than
    exploring the lexicographic order directly; a witness tree from the
    previous question answers most of them for free.
    """
    edges = g.edges()
    witness = _search(g, t, _heuristic_order(g, edges))
    if witness is None:
        return None
    kept: list[Edge] = []
    dropped: list[Edge] = []
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        if len(kept) == g.n - 1:
            break
        ru, rv = find(e[0]), find(e[1])
        if ru == rv:
            dropped.append(e)
            continue
        if e not in set(witness):
            rest = [f for f in edges if f not in kept and f != e and f not in dropped]
            trial = _search(g, t, kept + [e] + _heuristic_order(g, rest), len(kept) + 1, tuple(dropped))
            if trial is None:
                dropped.append(e)
                continue
            witness = trial
        kept.append(e)
        parent[ru] = rv
    return sorted(kept)


def is_t_admissible_bruteforce(g: Graph, t: int) -> StretchCertificate | None:
    """A certificate with stretch <= t (lexicographically smallest tree), or None."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if not is_connected(g):
        raise DisconnectedGraphError("t-admissibility needs a connected graph")
    found = _lex_min_tree(g, t)
    if found is None:
        return None
    return tree_stretch_factor(g, SpanningTree(g.n, tuple(found), g), method="bruteforce")


def exact_stretch_index(g: Graph, budget: int | None = DEFAULT_BUDGET) -> StretchCertificate:
    """Minimum stretch over all spanning trees, by iterative deepening on t.

    Among minimum-stretch trees the lexicographically smallest edge set is
    returned.
    """
    _check_budget(g, budget)
    t = 1 if g.m == g.n - 1 else 2
    while True:
        found = _lex_min_tree(g, t)
        if found is not None:
            return tree_stretch_factor(g, SpanningTree(g.n, tuple(found), g), method="oracle")
        t += 1


def stretch_by_enumeration(g: Graph, budget: int | None = DEFAULT_BUDGET) -> StretchCertificate:
    """Minimum over ``enumerate_spanning_trees``; the slow independent route."""
    best = None
    for tree in enumerate_spanning_trees(g, budget):
        cert = tree_stretch_factor(g, tree, method="enumeration")
        if best is None or cert.stretch < best.stretch:
            best = cert
    return best
