"""Exhaustive small-graph corpus: every graph up to isomorphism.

Connected graphs on up to eight vertices ship as a graph6 file; anything
else is rebuilt by vertex extension with canonical-form deduplication.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .graph import Graph, graph6_decode, graph6_encode, is_connected
from .transforms import canonical_form

SHIPPED_MAX_N = 8
DATA_FILE = "connected_graphs.g6"

# OEIS A000088 and A001349
GRAPH_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346}
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """Every graph on n vertices up to isomorphism, in canonical order."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (Graph(1),)
    seen: dict[tuple, Graph] = {}
    for g in all_graphs(n - 1):
        base = g.edges()
        for mask in range(1 << (n - 1)):
            edges = base + [(v, n - 1) for v in range(n - 1) if mask >> v & 1]
            h = Graph(n, edges)
            key = canonical_form(h)
            if key not in seen:
                seen[key] = h
    return tuple(seen[k] for k in sorted(seen))


def build_connected(n: int) -> list[Graph]:
    return [g for g in all_graphs(n) if is_connected(g)]


@lru_cache(maxsize=None)
def _shipped() -> dict[int, tuple[Graph, ...]]:
    text = resources.files(__package__).joinpath("data", DATA_FILE).read_text()
    out: dict[int, list[Graph]] = {}
    for line in text.split():
        g = graph6_decode(line)
        out.setdefault(g.n, []).append(g)
    return {n: tuple(gs) for n, gs in out.items()}


def connected_graphs(n: int) -> tuple[Graph, ...]:
    """Connected graphs on n vertices up to isomorphism."""
    if n <= SHIPPED_MAX_N:
        return _shipped().get(n, ())
    return tuple(build_connected(n))


def connected_upto(n: int, start: int = 1):
    for k in range(start, n + 1):
        yield from connected_graphs(k)


def write_shipped(path, max_n: int = SHIPPED_MAX_N) -> None:
    with open(path, "w") as fh:
        for n in range(1, max_n + 1):
            for g in build_connected(n):
                fh.write(graph6_encode(g) + "\n")
