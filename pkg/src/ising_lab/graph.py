"""Undirected multigraphs with stable edge ids.

Edge subsets are plain Python ints used as bit masks over edge ids: bit ``e``
is set when edge ``e`` belongs to the subset.  Because ids are never reused
after deletion, a mask built on a graph stays meaningful on every graph
derived from it by :func:`delete_edge`.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import GraphParseError, InvalidMoveError, VertexRangeError

INFINITY = math.inf


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        for u, v, eid in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexRangeError(f"edge {eid} = ({u}, {v}) out of range for n = {self.n}")
            if eid < 0 or eid in seen:
                raise ValueError(f"duplicate or negative edge id {eid}")
            seen.add(eid)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple((int(u), int(v), i) for i, (u, v) in enumerate(pairs)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def endpoints(self) -> dict[int, tuple[int, int]]:
        return {eid: (u, v) for u, v, eid in self.edges}

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(eid for _, _, eid in self.edges)

    @cached_property
    def all_edges_mask(self) -> int:
        mask = 0
        for eid in self.edge_ids:
            mask |= 1 << eid
        return mask

    @cached_property
    def is_simple(self) -> bool:
        pairs = set()
        for u, v, _ in self.edges:
            if u == v:
                return False
            key = (u, v) if u < v else (v, u)
            if key in pairs:
                return False
            pairs.add(key)
        return True

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the (neighbour, edge id) pairs; a loop is listed once."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, eid in self.edges:
            adj[u].append((v, eid))
            if u != v:
                adj[v].append((u, eid))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def incidence_masks(self) -> tuple[int, ...]:
        inc = [0] * self.n
        for u, v, eid in self.edges:
            inc[u] |= 1 << eid
            inc[v] |= 1 << eid
        return tuple(inc)

    @cached_property
    def edge_vertex_masks(self) -> dict[int, int]:
        return {eid: (1 << u) | (1 << v) for u, v, eid in self.edges}

    def degree(self, v: int) -> int:
        return sum(2 if a == v else 1 for a, _ in self.adjacency[v])

    def vertices_of(self, mask: int) -> int:
        """Vertex mask V(A) of the edge subset ``mask``."""
        evm = self.edge_vertex_masks
        out = 0
        for eid in iter_bits(mask):
            out |= evm[eid]
        return out

    def edges_within(self, vmask: int) -> int:
        """E(U): edges with both endpoints in the vertex mask."""
        out = 0
        for u, v, eid in self.edges:
            if (vmask >> u) & 1 and (vmask >> v) & 1:
                out |= 1 << eid
        return out

    def subgraph(self, mask: int) -> "Graph":
        """The graph spanned by an edge subset, vertices relabelled 0..k-1 in order."""
        verts = list(iter_bits(self.vertices_of(mask)))
        index = {v: i for i, v in enumerate(verts)}
        edges = []
        for u, v, eid in self.edges:
            if (mask >> eid) & 1:
                edges.append((index[u], index[v], len(edges)))
        return Graph(len(verts), tuple(edges))

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v, _ in self.edges]


# -- construction and parsing -------------------------------------------------


def load_graph(source: str) -> Graph:
    """Parse the edge-list format or a graph6 string."""
    lines = source.splitlines()
    first = next((ln.strip() for ln in lines if ln.strip() and not ln.strip().startswith("#")), None)
    if first is None:
        raise GraphParseError("empty input", line=1)
    if first.startswith(">>graph6<<"):
        return parse_graph6(first[len(">>graph6<<"):])
    if first.lstrip("-").isdigit():
        return parse_edge_list(source)
    return parse_graph6(first)


def parse_edge_list(source: str) -> Graph:
    n = None
    pairs = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise GraphParseError(f"expected vertex count, got {line!r}", line=lineno)
            try:
                n = int(parts[0])
            except ValueError:
                raise GraphParseError(f"vertex count is not an integer: {line!r}", line=lineno) from None
            if n < 0:
                raise GraphParseError("negative vertex count", line=lineno)
            continue
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {line!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer endpoint in {line!r}", line=lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"vertex index out of range 0..{n - 1} in {line!r}", line=lineno)
        pairs.append((u, v))
    if n is None:
        raise GraphParseError("missing vertex count", line=1)
    return Graph.from_pairs(n, pairs)


def parse_graph6(text: str) -> Graph:
    data = text.strip().encode("ascii")
    if not data:
        raise GraphParseError("empty graph6 string", line=1)
    if any(c < 63 or c > 126 for c in data):
        raise GraphParseError("graph6 bytes must lie in 63..126", line=1)
    vals = [c - 63 for c in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    elif len(vals) >= 8:
        n = 0
        for b in vals[2:8]:
            n = (n << 6) | b
        pos = 8
    else:
        raise GraphParseError("truncated graph6 size header", line=1)
    nbits = n * (n - 1) // 2
    body = vals[pos:]
    if len(body) != (nbits + 5) // 6:
        raise GraphParseError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}", line=1)
    bits = []
    for b in body:
        bits.extend((b >> s) & 1 for s in range(5, -1, -1))
    pairs = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                pairs.append((i, j))
            k += 1
    return Graph.from_pairs(n, pairs)


def to_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v, _ in g.edges]
    return "\n".join(lines) + "\n"


# -- structural queries --------------------------------------------------------


def max_degree(g: Graph) -> int:
    deg = [0] * g.n
    for u, v, _ in g.edges:
        deg[u] += 1
        deg[v] += 1
    return max(deg, default=0)


def components(g: Graph, mask: int | None = None) -> list[int]:
    """Vertex masks of the connected components of (V, mask); isolated vertices included."""
    if mask is None:
        mask = g.all_edges_mask
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for eid in iter_bits(mask):
        u, v = g.endpoints[eid]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, int] = {}
    for x in range(g.n):
        r = find(x)
        groups[r] = groups.get(r, 0) | (1 << x)
    return sorted(groups.values(), key=lambda vm: (vm & -vm))


def num_components(g: Graph, mask: int | None = None) -> int:
    return len(components(g, mask))


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or num_components(g) == 1


def girth(g: Graph) -> float | int:
    """Length of a shortest cycle (loop = 1, parallel pair = 2); ``math.inf`` for forests."""
    best = INFINITY
    pairs = set()
    for u, v, _ in g.edges:
        if u == v:
            return 1
        key = (min(u, v), max(u, v))
        if key in pairs:
            best = 2
        pairs.add(key)
    if best == 2:
        return 2
    adj = g.adjacency
    for s in range(g.n):
        dist = {s: 0}
        via = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y, eid in adj[x]:
                if eid == via[x]:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    via[y] = eid
                    queue.append(y)
                else:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


# -- biconnected decomposition -------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[int, ...]  # edge masks, ordered by smallest contained edge id
    block_vertices: tuple[int, ...]  # vertex masks, parallel to blocks
    cut_vertices: frozenset[int]
    tree_edges: tuple[tuple[int, int], ...]  # (block index, cut vertex)

    def leaf_blocks(self) -> list[int]:
        deg = [0] * len(self.blocks)
        for bi, _ in self.tree_edges:
            deg[bi] += 1
        return [i for i, d in enumerate(deg) if d == 1]

    def blocks_containing(self, v: int) -> list[int]:
        return [i for i, vm in enumerate(self.block_vertices) if (vm >> v) & 1]


def block_masks(g: Graph, mask: int | None = None) -> list[int]:
    """Edge masks of the blocks of the subgraph (V(mask), mask).

    One DFS lowpoint pass with an edge stack.  Bridges come out as single-edge
    blocks, every loop is a block on its own, and a parallel class belongs to
    the block of its endpoints.
    """
    if mask is None:
        mask = g.all_edges_mask
    adj = g.adjacency
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[int] = []
    t = 0
    for root in iter_bits(g.vertices_of(mask)):
        if root in disc:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(adj[root]))]
        estack: list[int] = []
        while stack:
            u, pe, it = stack[-1]
            advanced = False
            for w, e in it:
                if not (mask >> e) & 1 or e == pe:
                    continue
                if w == u:
                    blocks.append(1 << e)
                    continue
                if w not in disc:
                    disc[w] = low[w] = t
                    t += 1
                    estack.append(e)
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[u]:
                    if disc[w] < low[u]:
                        low[u] = disc[w]
                    estack.append(e)
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[u] < low[p]:
                    low[p] = low[u]
                if low[u] >= disc[p]:
                    b = 0
                    while True:
                        e = estack.pop()
                        b |= 1 << e
                        if e == pe:
                            break
                    blocks.append(b)
    blocks.sort(key=lambda b: b & -b)
    return blocks


def block_decomposition(g: Graph, mask: int | None = None) -> BlockDecomposition:
    blocks = block_masks(g, mask)
    bverts = [g.vertices_of(b) for b in blocks]
    count: dict[int, int] = {}
    for vm in bverts:
        for x in iter_bits(vm):
            count[x] = count.get(x, 0) + 1
    cuts = frozenset(x for x, c in count.items() if c >= 2)
    tree = tuple((i, x) for i, vm in enumerate(bverts) for x in sorted(cuts) if (vm >> x) & 1)
    return BlockDecomposition(tuple(blocks), tuple(bverts), cuts, tree)


# -- deletion and contraction --------------------------------------------------


def _require_edge(g: Graph, e: int) -> tuple[int, int]:
    try:
        return g.endpoints[e]
    except KeyError:
        raise InvalidMoveError(f"edge id {e} is not a live edge") from None


def delete_edge(g: Graph, e: int) -> Graph:
    _require_edge(g, e)
    return Graph(g.n, tuple(t for t in g.edges if t[2] != e))


def contract_edge(g: Graph, e: int) -> Graph:
    """Merge the endpoints of ``e``, keeping loops and parallel edges that arise."""
    u, v = _require_edge(g, e)
    if u == v:
        raise InvalidMoveError(f"cannot contract loop {e}; delete it instead")
    keep, gone = min(u, v), max(u, v)

    def relabel(x):
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    edges = tuple((relabel(a), relabel(b), eid) for a, b, eid in g.edges if eid != e)
    return Graph(g.n - 1, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    offset = max(g.edge_ids, default=-1) + 1
    edges = g.edges + tuple((a + g.n, b + g.n, eid + offset) for a, b, eid in h.edges)
    return Graph(g.n + h.n, edges)


def glue_at_vertex(g: Graph, h: Graph, gv: int = 0, hv: int = 0) -> Graph:
    """Union of ``g`` and ``h`` identifying vertex ``gv`` of g with ``hv`` of h."""
    offset = max(g.edge_ids, default=-1) + 1
    index = {}
    nxt = g.n
    for x in range(h.n):
        if x == hv:
            index[x] = gv
        else:
            index[x] = nxt
            nxt += 1
    edges = g.edges + tuple((index[a], index[b], eid + offset) for a, b, eid in h.edges)
    return Graph(g.n + h.n - 1, edges)
