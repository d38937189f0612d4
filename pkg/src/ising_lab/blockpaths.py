"""Block paths, the decomposition identity, and closed-trail counts.

A block path from v to U is a connected subgraph H whose block-cutpoint graph
is a path B1 c1 B2 ... Bk with exactly one vertex u of U, lying in B1, v in Bk,
and neither u nor v a cut vertex of H.  Subgraphs are handled as edge masks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from . import kernels
from .errors import DomainError
from .graph import Graph, block_decomposition, components, girth, iter_bits, max_degree
from .partition import ConditionalContext, is_even, z_even_conditional
from .polynomial import IntegerPolynomial


@dataclass(frozen=True)
class BlockPath:
    edge_set: int
    block_sequence: tuple[int, ...]  # B1 (holds u) ... Bk (holds v)
    cut_sequence: tuple[int, ...]
    endpoints: tuple[int, int]  # (v, u)
    vertex_set: int

    @property
    def size(self) -> int:
        return self.edge_set.bit_count()

    @property
    def n_vertices(self) -> int:
        return self.vertex_set.bit_count()

    def edge_ids(self) -> list[int]:
        return list(iter_bits(self.edge_set))


def _vmask(vertices: Iterable[int]) -> int:
    out = 0
    for x in vertices:
        out |= 1 << x
    return out


def connected_subsets(g: Graph, v: int, forbid: int = 0, max_edges: int | None = None) -> Iterator[tuple[int, int]]:
    """Every connected edge subset whose vertex set contains v, as (edge mask, vertex mask).

    Binary include/exclude branching on the lowest boundary edge, so each
    subset is produced exactly once (the empty subset included).  An edge is
    never added if it would bring a second vertex of ``forbid`` into the
    subset; subsets are capped at ``max_edges`` edges.
    """
    inc = g.incidence_masks
    evm = g.edge_vertex_masks
    limit = g.m if max_edges is None else max_edges

    def grow(emask, vmask, boundary, excluded, size):
        cand = boundary & ~emask & ~excluded
        if not cand or size >= limit:
            yield emask, vmask
            return
        low = cand & -cand
        e = low.bit_length() - 1
        nv = vmask | evm[e]
        if (nv & forbid).bit_count() <= 1:
            new = nv & ~vmask
            nb = boundary
            if new:
                nb |= inc[new.bit_length() - 1]
            yield from grow(emask | low, nv, nb, excluded, size + 1)
        yield from grow(emask, vmask, boundary, excluded | low, size)

    start = 1 << v
    yield from grow(0, start, inc[v], 0, 0)


def path_structure(g: Graph, mask: int, v: int):
    """If the block-cutpoint graph of ``mask`` is a path with v a non-cut vertex
    of an end block, return (blocks ordered from the far end to v's block,
    cut vertices in order, allowed-u vertex mask); else None.
    """
    if not (g.vertices_of(mask) >> v) & 1:
        return None
    bd = block_decomposition(g, mask)
    k = len(bd.blocks)
    if v in bd.cut_vertices:
        return None
    if k == 1:
        allowed = bd.block_vertices[0] & ~(1 << v)
        return (bd.blocks[0],), (), allowed
    # connected, path shaped: every cut vertex in exactly 2 blocks, every block in <= 2 cut vertices
    block_cuts = [[] for _ in range(k)]
    for bi, c in bd.tree_edges:
        block_cuts[bi].append(c)
    if len(bd.tree_edges) != 2 * len(bd.cut_vertices) or len(bd.cut_vertices) != k - 1:
        return None
    if any(len(cs) > 2 or not cs for cs in block_cuts):
        return None
    end = [i for i in range(k) if (bd.block_vertices[i] >> v) & 1]
    if len(end) != 1 or len(block_cuts[end[0]]) != 1:
        return None
    order = [end[0]]
    cuts = []
    prev_cut = None
    while True:
        cur = order[-1]
        nxt_cut = [c for c in block_cuts[cur] if c != prev_cut]
        if not nxt_cut:
            break
        c = nxt_cut[0]
        nb = [i for i in range(k) if i != cur and (bd.block_vertices[i] >> c) & 1]
        if len(nb) != 1:
            return None
        cuts.append(c)
        order.append(nb[0])
        prev_cut = c
    if len(order) != k:
        return None  # disconnected
    far = order[-1]
    cut_mask = _vmask(bd.cut_vertices)
    allowed = bd.block_vertices[far] & ~cut_mask & ~(1 << v)
    order.reverse()
    cuts.reverse()
    return tuple(bd.blocks[i] for i in order), tuple(cuts), allowed


def _make_block_path(g: Graph, mask: int, v: int, umask: int):
    shape = path_structure(g, mask, v)
    if shape is None:
        return None
    blocks, cuts, allowed = shape
    vset = g.vertices_of(mask)
    hit = vset & umask
    if hit.bit_count() != 1 or not hit & allowed:
        return None
    u = hit.bit_length() - 1
    return BlockPath(mask, blocks, cuts, (v, u), vset)


def _check_args(g: Graph, v: int, U) -> int:
    U = set(U)
    if not U:
        raise DomainError("U must be nonempty")
    if v in U:
        raise DomainError("v must not belong to U")
    if not 0 <= v < g.n or any(not 0 <= u < g.n for u in U):
        raise DomainError("vertex out of range")
    return _vmask(U)


def _sort_key(bp: BlockPath):
    return (bp.size, bp.edge_ids())


def enumerate_block_paths(g: Graph, v: int, U) -> list[BlockPath]:
    """All members of BP(v, U, G), sorted by (edge count, edge ids)."""
    umask = _check_args(g, v, U)
    out = []
    for emask, vmask in connected_subsets(g, v, forbid=umask):
        if emask and (vmask & umask):
            bp = _make_block_path(g, emask, v, umask)
            if bp is not None:
                out.append(bp)
    out.sort(key=_sort_key)
    return out


def even_block_paths(g: Graph, v: int, U) -> list[BlockPath]:
    return [bp for bp in enumerate_block_paths(g, v, U) if is_even(g, bp.edge_set)]


def is_block_path(g: Graph, mask: int, v: int, U) -> bool:
    """Direct test of the four defining conditions (connected, one U-vertex u,
    u and v not cut vertices, 2-connected or exactly two leaf blocks holding u and v)."""
    umask = _vmask(U)
    if not mask:
        return False
    vset = g.vertices_of(mask)
    if not (vset >> v) & 1:
        return False
    hit = vset & umask
    if hit.bit_count() != 1:
        return False
    u = hit.bit_length() - 1
    bd = block_decomposition(g, mask)
    if len(bd.blocks) > 1 and len(bd.cut_vertices) == 0:
        return False
    # connectivity: a forest block-cutpoint graph is a tree iff #edges = #nodes - 1
    if len(bd.tree_edges) != len(bd.blocks) + len(bd.cut_vertices) - 1:
        return False
    if u in bd.cut_vertices or v in bd.cut_vertices:
        return False
    if len(bd.blocks) == 1:
        return True
    leaves = bd.leaf_blocks()
    if len(leaves) != 2:
        return False
    a, b = (bd.block_vertices[i] for i in leaves)
    return bool(((a >> u) & 1 and (b >> v) & 1) or ((b >> u) & 1 and (a >> v) & 1))


def block_paths_by_predicate(g: Graph, v: int, U) -> list[int]:
    """Brute force over all 2^|E| subsets; independent of the enumerator."""
    ids = g.edge_ids
    out = []
    for bits in range(1, 1 << len(ids)):
        mask = 0
        for i, eid in enumerate(ids):
            if (bits >> i) & 1:
                mask |= 1 << eid
        if is_block_path(g, mask, v, U):
            out.append(mask)
    out.sort(key=lambda m: (m.bit_count(), list(iter_bits(m))))
    return out


@dataclass(frozen=True)
class PathShape:
    edge_set: int
    vertex_set: int
    allowed_u: int
    blocks: tuple[int, ...]
    even: bool


@lru_cache(maxsize=64)
def path_shapes(g: Graph, v: int) -> tuple[PathShape, ...]:
    """Every subgraph that is a block path from v to some U, with its admissible endpoints.

    H is in BP(v, U, G) exactly when V(H) meets U in a single vertex lying in
    ``allowed_u``.  Lets batch callers answer many U for one v.
    """
    out = []
    for emask, vmask in connected_subsets(g, v):
        if not emask:
            continue
        shape = path_structure(g, emask, v)
        if shape is None:
            continue
        blocks, _, allowed = shape
        if allowed:
            out.append(PathShape(emask, vmask, allowed, blocks, is_even(g, emask)))
    return tuple(out)


def shapes_for(g: Graph, v: int, umask: int, even_only: bool = False) -> list[PathShape]:
    out = []
    for s in path_shapes(g, v):
        if even_only and not s.even:
            continue
        hit = s.vertex_set & umask
        if hit and not hit & (hit - 1) and hit & s.allowed_u:
            out.append(s)
    return out


# -- decomposition identity ----------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    lhs: IntegerPolynomial
    rhs: IntegerPolynomial
    equal: bool
    terms: int = 0


def _cond(g: Graph, vmask: int) -> IntegerPolynomial:
    return z_even_conditional(ConditionalContext(g, frozenset(iter_bits(vmask))))


def verify_decomposition(g: Graph, U, v: int) -> IdentityReport:
    """Z(G|U) = Z(G|U+v) + sum over even B in BP(v,U,G) of x^|B| Z(G|U + V(B))."""
    U = set(U)
    if v in U:
        raise DomainError("v must not belong to U")
    umask = _vmask(U)
    lhs = _cond(g, umask)
    rhs = _cond(g, umask | (1 << v))
    terms = 0
    if U:
        for s in shapes_for(g, v, umask, even_only=True):
            rhs = rhs + IntegerPolynomial.monomial(s.edge_set.bit_count()) * _cond(g, umask | s.vertex_set)
            terms += 1
    return IdentityReport(lhs, rhs, lhs == rhs, terms)


def decompose_even_set(g: Graph, F: int, U, v: int):
    """All (B, F') with F = B + F' edge-disjoint, B an even block path from v to U
    and F' in E(G | U + V(B)).  Exactly one exists when F is in E(G|U) but not in E(G|U+v)."""
    umask = _vmask(U)
    found = []
    for s in shapes_for(g, v, umask, even_only=True):
        if s.edge_set & ~F:
            continue
        rest = F & ~s.edge_set
        terminals = umask | s.vertex_set
        if all((vm & terminals).bit_count() <= 1 for vm in components(g, rest)):
            found.append((s.edge_set, rest))
    return found


# -- closed trails -------------------------------------------------------------------


@dataclass(frozen=True)
class WalkGF:
    vertex: int
    counts: tuple[int, ...]  # counts[k] = closed trails from v with k edges

    def __call__(self, t: float) -> float:
        return sum(c * t**k for k, c in enumerate(self.counts))


def _arcs(g: Graph):
    position = {eid: i for i, eid in enumerate(g.edge_ids)}
    arcs = [[] for _ in range(g.n)]
    for u, w, eid in g.edges:
        arcs[u].append((w, position[eid]))
        arcs[w].append((u, position[eid]))
    return arcs


def walk_gf(g: Graph, v: int, max_len: int | None = None, force_python: bool = False) -> WalkGF:
    """Closed walks from v that use each edge at most once, by length (both directions counted)."""
    if max_len is None:
        max_len = g.m
    if max_len > g.m:
        raise DomainError("max_len cannot exceed |E|")
    indptr, nbrs, eids = kernels.csr(g.n, _arcs(g))
    counts = kernels.closed_trail_counts(v, indptr, nbrs, eids, g.m, force_python=force_python)
    counts = list(counts[: max_len + 1])
    counts[0] = 0
    return WalkGF(v, tuple(counts))


@dataclass(frozen=True)
class WalkBoundReport:
    lhs: float
    rhs: float
    slack: float
    holds: bool


def walk_bound_check(g: Graph, v: int, c: float, delta: int, g0: int) -> WalkBoundReport:
    """Exact W_{G,v}(c/(Delta-1)) against Delta c^g0 / ((Delta-1)^2 (1-c))."""
    if not 0 <= c < 1:
        raise DomainError("c must lie in [0, 1)")
    if delta < 2 or delta < max_degree(g):
        raise DomainError("delta must be at least max(2, max degree)")
    if g0 > girth(g):
        raise DomainError("g0 exceeds the girth")
    lhs = walk_gf(g, v)(c / (delta - 1))
    rhs = delta * c**g0 / ((delta - 1) ** 2 * (1 - c))
    return WalkBoundReport(lhs, rhs, rhs - lhs, lhs <= rhs)


@dataclass(frozen=True)
class HistogramReport:
    block_paths: tuple[int, ...]
    half_walks: tuple[float, ...]
    holds: bool


def eulerian_double_count_check(g: Graph, v: int, U) -> HistogramReport:
    """Even block paths by size against half the closed-trail counts, coefficientwise."""
    umask = _check_args(g, v, U)
    hist = [0] * (g.m + 1)
    for s in shapes_for(g, v, umask, even_only=True):
        hist[s.edge_set.bit_count()] += 1
    walks = walk_gf(g, v).counts
    half = tuple(c / 2 for c in walks)
    return HistogramReport(tuple(hist), half, all(h <= w for h, w in zip(hist, half)))
