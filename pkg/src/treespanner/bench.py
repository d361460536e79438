"""Verification bench: fast paths against the oracle, and scaling fits."""

from __future__ import annotations

import gc
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .corpus import connected_upto
from .graph import Graph
from .oracle import exact_stretch_index, tree_stretch_factor
from .recognition import (
    recognize_cograph,
    recognize_p4_sparse,
    recognize_p4_tidy,
    recognize_split,
    spider_partition,
    zero_two_partition,
)
from .spanners import (
    build_spider_spanner,
    stretch_cograph,
    stretch_p4_sparse,
    stretch_p4_tidy,
    stretch_split,
    two_admissible_02,
)
from .transforms import InflationSpec, cycle_graph, inflate, spider

FAST_PATHS = {
    "split": (lambda g: recognize_split(g) is not None, stretch_split),
    "cograph": (lambda g: bool(recognize_cograph(g)), stretch_cograph),
    "p4_sparse": (lambda g: bool(recognize_p4_sparse(g)), stretch_p4_sparse),
    "p4_tidy": (lambda g: bool(recognize_p4_tidy(g)), stretch_p4_tidy),
    "zero_two": (lambda g: zero_two_partition(g) is not None, two_admissible_02),
}


@dataclass
class AgreementRow:
    cls: str
    n: int
    graphs: int = 0
    agree: int = 0
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "class": self.cls, "n": self.n, "graphs": self.graphs, "agree": self.agree,
            "agreement": (self.agree / self.graphs) if self.graphs else 1.0,
            "seconds": round(self.seconds, 4), "failures": self.failures[:5],
        }


def _check_one(args) -> tuple[int, bool, str]:
    cls, g6 = args
    from .graph import graph6_decode

    g = graph6_decode(g6)
    member, fast = FAST_PATHS[cls]
    if not member(g):
        return g.n, None, g6
    res = fast(g)
    want = exact_stretch_index(g).stretch
    cert_ok = res.certificate is not None and tree_stretch_factor(g, res.certificate.tree).stretch == res.sigma
    return g.n, res.sigma == want and cert_ok, g6


def exhaustive_agreement(cls: str, max_n: int, jobs: int = 1) -> list[AgreementRow]:
    """Fast path versus oracle on every connected class member with n <= max_n;
    a row agrees when the value matches and its certificate re-verifies."""
    from .graph import graph6_encode

    if cls not in FAST_PATHS:
        raise ValueError(f"unknown class {cls!r}")
    work = [(cls, graph6_encode(g)) for g in connected_upto(max_n, start=2)]
    rows: dict[int, AgreementRow] = {}
    start = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_check_one, work, chunksize=64))
    else:
        results = [_check_one(w) for w in work]
    for n, ok, g6 in results:
        if ok is None:
            continue
        row = rows.setdefault(n, AgreementRow(cls, n))
        row.graphs += 1
        row.agree += ok
        if not ok:
            row.failures.append(g6)
    elapsed = time.perf_counter() - start
    out = [rows[n] for n in sorted(rows)]
    for row in out:
        row.seconds = elapsed * row.graphs / max(1, sum(r.graphs for r in out))
    return out


def inflation_cycles(max_l: int = 8) -> list[dict]:
    """Inflations of C_l (that is, C_2l): the index should be 2l - 1."""
    rows = []
    for l in range(3, max_l + 1):
        h, _ = inflate(InflationSpec(cycle_graph(l)))
        start = time.perf_counter()
        s = exact_stretch_index(h).stretch
        rows.append({"l": l, "n": h.n, "sigma": s, "expected": 2 * l - 1,
                     "seconds": round(time.perf_counter() - start, 4)})
    return rows


# ---------------------------------------------------------------------------
# scaling families for the linear-time fast paths
# ---------------------------------------------------------------------------

def split_family(n: int, seed: int = 0) -> Graph:
    """Clique of 8 plus n - 8 stable vertices of degree at most 3."""
    import random

    rng = random.Random(seed)
    c = 8
    edges = [(a, b) for a in range(c) for b in range(a + 1, c)]
    for y in range(c, n):
        edges.extend((x, y) for x in rng.sample(range(c), rng.randint(1, 3)))
    return Graph(n, edges)


def thin_spider_family(n: int, seed: int = 0) -> Graph:
    """Thin spider with |K| = 4 and an edgeless R on the remaining vertices."""
    k = 4
    return spider(k, thin=True, r=Graph(n - 2 * k))


def zero_two_family(n: int, seed: int = 0) -> Graph:
    """Two cliques of n/2 joined by a perfect matching."""
    a = n // 2
    b = n - a
    edges = [(x, y) for x in range(a) for y in range(x + 1, a)]
    edges += [(a + x, a + y) for x in range(b) for y in range(x + 1, b)]
    edges += [(x, a + x) for x in range(min(a, b))]
    return Graph(n, edges)


FAMILIES = {
    "split": (split_family, lambda g: stretch_split(g, recognize_split(g))),
    "thin_spider": (thin_spider_family, lambda g: build_spider_spanner(g, spider_partition(g))),
    "zero_two": (zero_two_family, lambda g: two_admissible_02(g, zero_two_partition(g))),
}


def loglog_slope(xs, ys) -> float:
    lx = [math.log(x) for x in xs]
    ly = [math.log(max(y, 1e-9)) for y in ys]
    return statistics.linear_regression(lx, ly).slope


@dataclass
class ScalingResult:
    family: str
    sizes: list
    inputs: list  # n + m per size
    seconds: list
    slope_n: float
    slope_input: float

    def to_dict(self) -> dict:
        return {
            "family": self.family, "sizes": self.sizes, "n_plus_m": self.inputs,
            "seconds": [round(s, 4) for s in self.seconds],
            "slope_vs_n": round(self.slope_n, 3), "slope_vs_n_plus_m": round(self.slope_input, 3),
        }


def scaling(family: str, sizes, seed: int = 0, repeats: int = 3) -> ScalingResult:
    """Best-of-``repeats`` time for recognition plus the fast path, per size.
    Graph construction is not timed; the cyclic garbage collector is paused
    while timing, as ``timeit`` does."""
    build, run = FAMILIES[family]
    secs, inputs = [], []
    for n in sizes:
        g = build(n, seed)
        best = math.inf
        for _ in range(repeats):
            g = Graph.from_adjacency(g.adj)  # fresh caches each run
            gc.collect()
            gc.disable()
            try:
                start = time.perf_counter()
                run(g)
                best = min(best, time.perf_counter() - start)
            finally:
                gc.enable()
        secs.append(best)
        inputs.append(g.n + g.m)
    return ScalingResult(family, list(sizes), inputs, secs,
                         loglog_slope(sizes, secs), loglog_slope(inputs, secs))

