"""Independent brute-force oracles used by the tests.

Each function here follows a definition directly and shares no code with
the package beyond the Graph value type.
"""

from __future__ import annotations

from itertools import combinations

from treespanner.graph import Graph


def connected_on(g: Graph, vertices) -> bool:
    vs = set(vertices)
    if not vs:
        return True
    start = next(iter(vs))
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


def cut_vertices(g: Graph) -> set[int]:
    everything = set(range(g.n))
    return {v for v in range(g.n) if not connected_on(g, everything - {v})}


def is_clique(g: Graph, vs) -> bool:
    return all(g.has_edge(a, b) for a, b in combinations(vs, 2))


def is_stable(g: Graph, vs) -> bool:
    return not any(g.has_edge(a, b) for a, b in combinations(vs, 2))


def is_split(g: Graph) -> bool:
    for mask in range(1 << g.n):
        x = [v for v in range(g.n) if mask >> v & 1]
        y = [v for v in range(g.n) if not mask >> v & 1]
        if is_clique(g, x) and is_stable(g, y):
            return True
    return False


def is_zero_two(g: Graph) -> bool:
    for mask in range(1 << g.n):
        a = [v for v in range(g.n) if mask >> v & 1]
        b = [v for v in range(g.n) if not mask >> v & 1]
        if is_clique(g, a) and is_clique(g, b):
            return True
    return False


def is_induced_p4(g: Graph, quad) -> bool:
    """Four vertices induce a P4 iff three edges, degree sequence 1,1,2,2."""
    es = [(a, b) for a, b in combinations(quad, 2) if g.has_edge(a, b)]
    if len(es) != 3:
        return False
    deg = sorted(sum(v in e for e in es) for v in quad)
    return deg == [1, 1, 2, 2]


def induced_p4s(g: Graph, vertices=None) -> list[frozenset]:
    vs = range(g.n) if vertices is None else vertices
    return [frozenset(q) for q in combinations(vs, 4) if is_induced_p4(g, q)]


def is_cograph(g: Graph) -> bool:
    return not induced_p4s(g)


def is_p4_sparse(g: Graph) -> bool:
    return all(len(induced_p4s(g, five)) <= 1 for five in combinations(range(g.n), 5))


def is_p4_tidy(g: Graph) -> bool:
    """For every induced P4 at most one outside vertex (a partner) lies in
    another induced P4 together with three of its vertices."""
    p4s = set(induced_p4s(g))
    for q in p4s:
        partners = 0
        for v in range(g.n):
            if v in q:
                continue
            if any(frozenset(t) | {v} in p4s for t in combinations(q, 3)):
                partners += 1
        if partners > 1:
            return False
    return True


def separates(g: Graph, vertices, cut) -> bool:
    rest = set(vertices) - set(cut)
    return len(rest) > 0 and not connected_on(g, rest)


def triconnected_components(g: Graph) -> set[frozenset]:
    """Maximal vertex sets whose induced subgraph is connected and cannot be
    disconnected by removing two of its vertices."""
    good = []
    for r in range(1, g.n + 1):
        for vs in combinations(range(g.n), r):
            if not connected_on(g, vs):
                continue
            if any(separates(g, vs, c) for c in combinations(vs, 2)):
                continue
            good.append(frozenset(vs))
    return {s for s in good if not any(s < t for t in good)}
