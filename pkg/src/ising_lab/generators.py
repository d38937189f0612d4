"""Graph families used by scans, the corpus writer and the test suites."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

import networkx as nx

from .graph import Graph


def empty(n: int) -> Graph:
    return Graph(n)


def path(n: int) -> Graph:
    """Path on n vertices (n - 1 edges)."""
    return Graph.from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a simple cycle needs at least 3 vertices")
    return Graph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_pairs(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_pairs(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(k: int) -> Graph:
    return complete_bipartite(1, k)


def bowtie() -> Graph:
    """Two triangles sharing vertex 2: {0,1,2} and {2,3,4}."""
    return Graph.from_pairs(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_pairs(10, outer + spokes + inner)


def prism(k: int) -> Graph:
    top = [(i, (i + 1) % k) for i in range(k)]
    bottom = [(k + i, k + (i + 1) % k) for i in range(k)]
    rungs = [(i, k + i) for i in range(k)]
    return Graph.from_pairs(2 * k, top + bottom + rungs)


def cube() -> Graph:
    return Graph.from_pairs(8, [(a, a ^ (1 << s)) for a in range(8) for s in range(3) if a < a ^ (1 << s)])


def wheel(k: int) -> Graph:
    """Hub 0 joined to a k-cycle on 1..k."""
    rim = [(1 + i, 1 + (i + 1) % k) for i in range(k)]
    return Graph.from_pairs(k + 1, [(0, 1 + i) for i in range(k)] + rim)


def theta(a: int, b: int, c: int) -> Graph:
    """Two poles joined by three internally disjoint paths with a, b, c edges."""
    lengths = (a, b, c)
    if min(lengths) < 1 or sorted(lengths)[1] < 2:
        raise ValueError("theta graph needs path lengths >= 1 with at most one of length 1")
    pairs = []
    n = 2
    for length in lengths:
        prev = 0
        for _ in range(length - 1):
            pairs.append((prev, n))
            prev = n
            n += 1
        pairs.append((prev, 1))
    return Graph.from_pairs(n, pairs)


def random_regular(d: int, n: int, seed: int, max_tries: int = 10_000) -> Graph:
    """Uniform d-regular simple graph from the pairing model with rejection."""
    if d < 0 or n <= 0 or d >= n:
        raise ValueError(f"need 0 <= d < n, got d={d}, n={n}")
    if (d * n) % 2:
        raise ValueError(f"d*n must be even, got d={d}, n={n}")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(points)
        pairs = []
        seen = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            key = (min(u, v), max(u, v))
            if u == v or key in seen:
                ok = False
                break
            seen.add(key)
            pairs.append(key)
        if ok:
            return Graph.from_pairs(n, sorted(pairs))
    raise RuntimeError(f"pairing model rejected {max_tries} times for d={d}, n={n}")


def random_multigraph(rng: random.Random, max_vertices: int = 6, max_edges: int = 10) -> Graph:
    """Random multigraph with loops and parallel edges allowed."""
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    return Graph.from_pairs(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(m)])


def random_simple(rng: random.Random, max_vertices: int = 9, p: float | None = None) -> Graph:
    n = rng.randint(1, max_vertices)
    p = rng.random() if p is None else p
    return Graph.from_pairs(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


# -- isomorph-free connected graphs -----------------------------------------------


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edge_pairs())
    return h


class _IsoPool:
    def __init__(self):
        self._buckets: dict[tuple, list[nx.Graph]] = {}

    def add(self, g: Graph) -> bool:
        h = _to_nx(g)
        degs = tuple(sorted(d for _, d in h.degree()))
        key = (g.n, g.m, degs, nx.weisfeiler_lehman_graph_hash(h, iterations=3))
        bucket = self._buckets.setdefault(key, [])
        for other in bucket:
            if nx.is_isomorphic(h, other):
                return False
        bucket.append(h)
        return True


def connected_graphs(
    max_vertices: int | None = None,
    max_edges: int | None = None,
    max_degree: int | None = None,
) -> list[Graph]:
    """All connected simple graphs up to isomorphism within the given bounds.

    Grown one edge at a time from K1 (a new pendant vertex or an edge between
    existing vertices); every connected graph has an edge whose removal, with
    its leaf if pendant, keeps it connected, so the growth reaches all of them.
    Ordered by (edges, vertices, discovery).  At least one bound on vertices
    or edges is required.
    """
    if max_vertices is None and max_edges is None:
        raise ValueError("need a vertex or edge bound")
    if max_edges is None:
        max_edges = max_vertices * (max_vertices - 1) // 2
    if max_vertices is None:
        max_vertices = max_edges + 1
    if max_degree is None:
        max_degree = max_vertices

    pool = _IsoPool()
    start = Graph(1)
    pool.add(start)
    out = [start]
    level = [start]
    for _ in range(max_edges):
        nxt = []
        for g in level:
            deg = [g.degree(v) for v in range(g.n)]
            adj = {(min(u, v), max(u, v)) for u, v, _ in g.edges}
            cands = []
            for u in range(g.n):
                for v in range(u + 1, g.n):
                    if (u, v) not in adj and deg[u] < max_degree and deg[v] < max_degree:
                        cands.append(Graph.from_pairs(g.n, g.edge_pairs() + [(u, v)]))
            if g.n < max_vertices:
                for u in range(g.n):
                    if deg[u] < max_degree:
                        cands.append(Graph.from_pairs(g.n + 1, g.edge_pairs() + [(u, g.n)]))
            for h in cands:
                if pool.add(h):
                    nxt.append(h)
        nxt.sort(key=lambda h: h.n)
        out.extend(nxt)
        level = nxt
        if not level:
            break
    return out


# -- named family descriptors --------------------------------------------------------


@dataclass
class FamilySpec:
    name: str
    params: dict = field(default_factory=dict)

    def describe(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.name}({inner})"


FAMILIES = ("all-connected", "cycles", "random-regular", "theta", "complete")


def family_graphs(spec: FamilySpec) -> Iterator[tuple[str, Graph, int | None]]:
    """Yield (descriptor, graph, seed) for a family specification."""
    p = spec.params
    name = spec.name
    if name == "cycles":
        for n in range(p.get("n_min", 3), p["n_max"] + 1):
            yield f"cycle:{n}", cycle(n), None
    elif name == "complete":
        top = p.get("n_max", p.get("delta", 3) + 1)
        if "delta" in p and top > p["delta"] + 1:
            raise ValueError("complete graphs K_n with n > delta+1 exceed the degree bound")
        for n in range(p.get("n_min", 1), top + 1):
            yield f"complete:{n}", complete(n), None
    elif name == "all-connected":
        graphs = connected_graphs(max_vertices=p["n_max"], max_degree=p.get("delta"))
        for i, g in enumerate(graphs):
            yield f"connected:{g.n}:{i}", g, None
    elif name == "random-regular":
        d, count, seed = p["d"], p.get("count", 1), p.get("seed", 0)
        sizes = p.get("sizes") or [p["n"]]
        for n in sizes:
            if (d * n) % 2:
                raise ValueError(f"d*n must be even for random regular graphs (d={d}, n={n})")
        for i in range(count):
            n = sizes[i % len(sizes)]
            s = seed * 1_000_003 + i
            yield f"random-regular:{d}:{n}:{s}", random_regular(d, n, s), s
    elif name == "theta":
        lo, hi = p.get("min_len", 1), p["max_len"]
        for a in range(lo, hi + 1):
            for b in range(max(a, 2), hi + 1):
                for c in range(b, hi + 1):
                    yield f"theta:{a}:{b}:{c}", theta(a, b, c), None
    else:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def named_graphs() -> dict[str, Graph]:
    """Hand-picked small graphs exercised throughout the test suites."""
    return {
        "K1": Graph(1),
        "K2": complete(2),
        "P3": path(3),
        "P5": path(5),
        "K1,4": star(4),
        "C3": cycle(3),
        "C4": cycle(4),
        "C5": cycle(5),
        "C6": cycle(6),
        "C8": cycle(8),
        "K4": complete(4),
        "K5": complete(5),
        "bowtie": bowtie(),
        "K3,3": complete_bipartite(3, 3),
        "prism3": prism(3),
        "cube": cube(),
        "wheel5": wheel(5),
        "theta(2,2,3)": theta(2, 2, 3),
        "theta(1,3,3)": theta(1, 3, 3),
        "petersen": petersen(),
        "2C3": Graph.from_pairs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]),
    }
