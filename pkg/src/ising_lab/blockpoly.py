"""Block polynomials of 1-multiplicative graph invariants.

A 1-multiplicative invariant w has w(K1) = 1 and multiplies over disjoint
unions and over unions sharing a single vertex, so w(H) is the product of w
over the blocks of H.  The block polynomial is Z_block(G; w) = sum over edge
subsets H of w(H).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable

import networkx as nx
import numpy as np

from .blockpaths import connected_subsets, enumerate_block_paths, path_shapes
from .config import (
    BLOCK_POLY_EDGE_CAP,
    CERTIFY_VERTEX_CAP,
    GK_EDGE_CAP,
    HOM_VERTEX_CAP,
    TUTTE_EDGE_CAP,
    check_cap,
)
from .errors import CertificateViolation, DomainError
from .generators import random_multigraph
from .graph import (
    Graph,
    block_masks,
    components,
    delete_edge,
    contract_edge,
    disjoint_union,
    glue_at_vertex,
    iter_bits,
    num_components,
)
from .partition import is_even

TOL = 1e-9
VT_TARGET_CAP = 8


def _is_exact(z) -> bool:
    return isinstance(z, Rational)


def close(a, b, tol: float = TOL) -> bool:
    """Exact equality for rationals, relative closeness otherwise."""
    if _is_exact(a) and _is_exact(b):
        return a == b
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(a)), abs(complex(b)))


# -- invariants --------------------------------------------------------------------


class Invariant:
    """A graph invariant; subclasses implement ``evaluate``."""

    kind = "custom"

    @property
    def exact(self) -> bool:
        return False

    def evaluate(self, g: Graph):
        raise NotImplementedError

    def __call__(self, g: Graph):
        return self.evaluate(g)

    def describe(self) -> str:
        return self.kind


@dataclass(frozen=True)
class EvenIndicator(Invariant):
    """x^|E(H)| when every degree of H is even, 0 otherwise."""

    x: complex | Fraction | int
    kind = "even-indicator"

    @property
    def exact(self) -> bool:
        return _is_exact(self.x)

    def evaluate(self, g: Graph):
        if not is_even(g, g.all_edges_mask):
            return 0
        return self.x**g.m

    def describe(self) -> str:
        return f"even:x={self.x}"


def _tutte_subsets(g: Graph, x, y):
    check_cap(g.m, TUTTE_EDGE_CAP, "|E| for Tutte subset sum")
    k_all = num_components(g)
    total = 0
    for mask in range(1 << g.m):
        k = num_components(g, _remask(g, mask))
        total += (x - 1) ** (k - k_all) * (y - 1) ** (mask.bit_count() + k - g.n)
    return total


def _remask(g: Graph, positional: int) -> int:
    ids = g.edge_ids
    out = 0
    for i in iter_bits(positional):
        out |= 1 << ids[i]
    return out


def _is_bridge(g: Graph, e: int) -> bool:
    rest = g.all_edges_mask & ~(1 << e)
    u, v = g.endpoints[e]
    for comp in components(g, rest):
        if (comp >> u) & 1:
            return not (comp >> v) & 1
    raise AssertionError("unreachable")


def _tutte_dc(g: Graph, x, y):
    if g.m == 0:
        return 1
    e = g.edge_ids[0]
    u, v = g.endpoints[e]
    if u == v:
        return y * _tutte_dc(delete_edge(g, e), x, y)
    if _is_bridge(g, e):
        return x * _tutte_dc(contract_edge(g, e), x, y)
    return _tutte_dc(delete_edge(g, e), x, y) + _tutte_dc(contract_edge(g, e), x, y)


def tutte_eval(g: Graph, x, y, method: str = "auto"):
    """T(G; x, y) = sum_F (x-1)^(k(F)-k(E)) (y-1)^(|F|+k(F)-|V|).

    ``method`` is "subsets" (the defining sum), "dc" (deletion-contraction),
    or "auto", which uses the subset sum up to 12 edges.
    """
    if method == "subsets" or (method == "auto" and g.m <= 12):
        return _tutte_subsets(g, x, y)
    if method in ("dc", "auto"):
        check_cap(g.m, TUTTE_EDGE_CAP, "|E| for Tutte deletion-contraction")
        return _tutte_dc(g, x, y)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class TutteEvaluation(Invariant):
    x: complex | Fraction | int
    y: complex | Fraction | int
    method: str = "auto"
    kind = "tutte-eval"

    @property
    def exact(self) -> bool:
        return _is_exact(self.x) and _is_exact(self.y)

    def evaluate(self, g: Graph):
        return tutte_eval(g, self.x, self.y, self.method)

    def describe(self) -> str:
        return f"tutte:x={self.x},y={self.y}"


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edge_pairs())
    return h


def is_vertex_transitive(g: Graph) -> bool:
    """Orbit of vertex 0 under all automorphisms is the whole vertex set."""
    if g.n <= 1:
        return True
    h = _to_nx(g)
    orbit = set()
    for iso in nx.algorithms.isomorphism.GraphMatcher(h, h).isomorphisms_iter():
        orbit.add(iso[0])
        if len(orbit) == g.n:
            return True
    return False


def hom_count(h: Graph, target: Graph) -> int:
    """Number of maps V(h) -> V(target) sending every edge of h to an edge."""
    check_cap(h.n, HOM_VERTEX_CAP, "|V(h)| for homomorphism counting")
    k = target.n
    adj = [set() for _ in range(k)]
    for a, b in target.edge_pairs():
        adj[a].add(b)
        adj[b].add(a)
    order = []
    seen = set()
    for root in range(h.n):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y, _ in h.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    pos = {x: i for i, x in enumerate(order)}
    # constraints checked when the later endpoint is placed
    back = [[] for _ in range(h.n)]
    for a, b in h.edge_pairs():
        i, j = pos[a], pos[b]
        back[max(i, j)].append(min(i, j))
    phi = [0] * h.n

    def place(i: int) -> int:
        if i == h.n:
            return 1
        total = 0
        for c in range(k):
            if all(phi[j] in adj[c] for j in back[i] if j != i) and (i not in back[i] or c in adj[c]):
                phi[i] = c
                total += place(i + 1)
        return total

    return place(0)


def hom_density(h: Graph, target: Graph) -> Fraction:
    """t(h, target) = hom(h, target) / |V(target)|^|V(h)|, exact."""
    if not target.is_simple:
        raise DomainError("homomorphism target must be a simple graph")
    if target.n == 0:
        raise DomainError("homomorphism target needs at least one vertex")
    return Fraction(hom_count(h, target), target.n**h.n)


@dataclass(frozen=True)
class HomDensity(Invariant):
    target: Graph
    kind = "hom-density"

    def __post_init__(self):
        if not self.target.is_simple:
            raise DomainError("homomorphism target must be a simple graph")
        check_cap(self.target.n, VT_TARGET_CAP, "|V(target)| for the transitivity check")
        if not is_vertex_transitive(self.target):
            raise DomainError("homomorphism target must be vertex-transitive")

    @property
    def exact(self) -> bool:
        return True

    def evaluate(self, g: Graph):
        return hom_density(g, self.target)

    def describe(self) -> str:
        return f"hom:target(n={self.target.n},m={self.target.m})"


@dataclass(frozen=True)
class FunctionInvariant(Invariant):
    fn: Callable[[Graph], complex]
    name: str = "custom"
    is_exact: bool = False
    kind = "custom"

    @property
    def exact(self) -> bool:
        return self.is_exact

    def evaluate(self, g: Graph):
        return self.fn(g)

    def describe(self) -> str:
        return self.name


# -- the 1-multiplicativity gate -----------------------------------------------------


@dataclass
class GateReport:
    invariant: str
    trials: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_one_multiplicative(
    w: Invariant,
    trials: int = 200,
    seed: int = 0,
    max_vertices: int = 4,
    max_edges: int = 5,
    tol: float = TOL,
) -> GateReport:
    """Randomised check of w(K1) = 1, w(H1 + H2) = w(H1)w(H2) and the one-vertex gluing rule."""
    rng = random.Random(seed)
    report = GateReport(w.describe(), trials)
    k1 = Graph(1)
    if not close(w(k1), 1, tol):
        report.failures.append(f"w(K1) = {w(k1)}")
    if not close(w(disjoint_union(k1, k1)), w(k1) * w(k1), tol):
        report.failures.append("w(K1 + K1) != w(K1)^2")
    for t in range(trials):
        h1 = random_multigraph(rng, max_vertices, max_edges)
        h2 = random_multigraph(rng, max_vertices, max_edges)
        prod = w(h1) * w(h2)
        union = w(disjoint_union(h1, h2))
        glued = w(glue_at_vertex(h1, h2, rng.randrange(h1.n), rng.randrange(h2.n)))
        if not close(union, prod, tol):
            report.failures.append(f"trial {t}: disjoint union {union} != {prod}")
        if not close(glued, prod, tol):
            report.failures.append(f"trial {t}: one-vertex gluing {glued} != {prod}")
    return report


def require_one_multiplicative(w: Invariant, **kwargs) -> None:
    report = check_one_multiplicative(w, **kwargs)
    if not report.passed:
        raise DomainError(f"{report.invariant} is not 1-multiplicative: {report.failures[0]}")


# -- block polynomial ------------------------------------------------------------------


class _BlockWeights:
    """Memoised w(B) for edge masks of one host graph."""

    def __init__(self, g: Graph, w: Invariant):
        self.g = g
        self.w = w
        self.cache: dict[int, object] = {}

    def __getitem__(self, mask: int):
        val = self.cache.get(mask)
        if val is None:
            val = self.w(self.g.subgraph(mask))
            self.cache[mask] = val
        return val

    def product(self, h: int):
        out = 1
        for b in block_masks(self.g, h):
            out = out * self[b]
            if out == 0:
                return 0
        return out


def _subsets_of(mask: int):
    """All submasks of ``mask``, the empty one first."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def _z_block_direct(g: Graph, weights: _BlockWeights, domain: int):
    total = 0
    for h in _subsets_of(domain):
        total += weights.product(h)
    return total


def z_block(g: Graph, w: Invariant, method: str = "blocks"):
    """Z_block(G; w) = sum over H of the product of w over the blocks of H.

    ``method="direct"`` sums over all 2^|E| subsets.  The default uses that
    every block of H sits inside one block of G, so the sum factorises over
    the blocks of G.
    """
    check_cap(g.m, BLOCK_POLY_EDGE_CAP, "|E| for block-polynomial enumeration")
    weights = _BlockWeights(g, w)
    if method == "direct":
        return _z_block_direct(g, weights, g.all_edges_mask)
    if method != "blocks":
        raise ValueError(f"unknown method {method!r}")
    total = 1
    for b in block_masks(g):
        total = total * _z_block_direct(g, weights, b)
    return total


def _nonloop_within(g: Graph, umask: int) -> int:
    out = 0
    for u, v, eid in g.edges:
        if u != v and (umask >> u) & 1 and (umask >> v) & 1:
            out |= 1 << eid
    return out


def z_block_conditional(g: Graph, U, w: Invariant, weights: _BlockWeights | None = None):
    """Sum of w(H) over edge subsets H whose nontrivial components each meet U at most once."""
    check_cap(g.m, BLOCK_POLY_EDGE_CAP, "|E| for block-polynomial enumeration")
    umask = 0
    for u in U:
        if not 0 <= u < g.n:
            raise DomainError(f"vertex {u} out of range")
        umask |= 1 << u
    weights = weights or _BlockWeights(g, w)
    # non-loop edges inside U are excluded by the component rule anyway; loops
    # at U vertices are kept so the decomposition identity holds on multigraphs
    domain = g.all_edges_mask & ~_nonloop_within(g, umask)
    total = 0
    for h in _subsets_of(domain):
        if all((c & umask).bit_count() <= 1 for c in components(g, h)):
            total += weights.product(h)
    return total


@dataclass
class BlockIdentityReport:
    lhs: object
    rhs: object
    equal: bool
    terms: int


def verify_block_decomposition_1mult(g: Graph, U, v: int, w: Invariant, tol: float = TOL) -> BlockIdentityReport:
    """Both sides of Z(G|U) = Z(G|U+v) + sum over block paths B of w(B) Z(G|U + V(B))."""
    U = frozenset(U)
    if v in U:
        raise DomainError("v must lie outside U")
    weights = _BlockWeights(g, w)
    lhs = z_block_conditional(g, U, w, weights)
    rhs = z_block_conditional(g, U | {v}, w, weights)
    terms = 0
    if U:
        for bp in enumerate_block_paths(g, v, U):
            wb = weights[bp.edge_set]
            if wb == 0:
                continue
            terms += 1
            rhs += wb * z_block_conditional(g, U | frozenset(iter_bits(bp.vertex_set)), w, weights)
    return BlockIdentityReport(lhs, rhs, close(lhs, rhs, tol), terms)


# -- certificates ----------------------------------------------------------------------


@dataclass
class BlockCertificate:
    a: float
    sums: list[float]
    pairs: list[tuple[int, int]]  # (U mask, v) for each entry of sums
    max_sum: float
    valid: bool
    z_value: complex | None = None

    def to_json(self) -> dict:
        z = self.z_value
        return {
            "a": self.a,
            "max_sum": self.max_sum,
            "valid": self.valid,
            "pairs": len(self.sums),
            "z_block": None if z is None else [complex(z).real, complex(z).imag],
        }


def _check_a(a: float) -> None:
    if not 0 < a < 1:
        raise DomainError("a must lie in (0, 1)")


def certify_zero_free(g: Graph, w: Invariant, a: float, evaluate: bool = True) -> BlockCertificate:
    """Check sum over B in BP(v,U,G) of |w(B)| (1-a)^-(|V(B)|-2) <= a for every U and v outside U.

    U ranges over all proper subsets of V; U = {} gives an empty sum.  When
    the certificate holds and |E| is within the enumeration cap, Z_block is
    evaluated and must be nonzero.
    """
    _check_a(a)
    check_cap(g.n, CERTIFY_VERTEX_CAP, "|V| for certificate enumeration")
    weights = _BlockWeights(g, w)
    grow = 1 / (1 - a)
    n = g.n
    full = (1 << n) - 1
    masks = np.arange(1 << n, dtype=np.int64)
    sums: list[float] = []
    pairs: list[tuple[int, int]] = []
    for v in range(n):
        acc = np.zeros(1 << n)
        for shape in path_shapes(g, v):
            wb = weights[shape.edge_set]
            if wb == 0:
                continue
            term = abs(complex(wb)) * grow ** (shape.vertex_set.bit_count() - 2)
            for u in iter_bits(shape.allowed_u):
                others = shape.vertex_set & ~(1 << u)
                hit = ((masks >> u) & 1).astype(bool) & ((masks & others) == 0)
                acc[hit] += term
        for U in range(full + 1):
            if (U >> v) & 1 or U == full:
                continue
            pairs.append((U, v))
            sums.append(float(acc[U]))
    max_sum = max(sums, default=0.0)
    cert = BlockCertificate(a, sums, pairs, max_sum, max_sum <= a)
    if cert.valid and evaluate and g.m <= BLOCK_POLY_EDGE_CAP:
        cert.z_value = z_block(g, w)
        if abs(complex(cert.z_value)) <= TOL:
            raise CertificateViolation(f"certificate holds but Z_block = {cert.z_value}")
    return cert


@dataclass
class GKReport:
    a: float
    per_vertex: list[float]
    max_sum: float
    valid: bool
    block_max_sum: float
    block_valid: bool

    @property
    def block_not_worse(self) -> bool:
        return self.block_max_sum <= self.max_sum

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "gk_max_sum": self.max_sum,
            "gk_valid": self.valid,
            "block_max_sum": self.block_max_sum,
            "block_valid": self.block_valid,
            "block_not_worse": self.block_not_worse,
        }


def gruber_kunz_check(g: Graph, w: Invariant, a: float) -> GKReport:
    """Connected-subgraph condition sum over B of |w(B)| (1-a)^-(|V(B)|-1) <= a, next to the block-path one.

    All terms are nonnegative and every connected subgraph of an induced
    subgraph is one of G, so the worst induced subgraph is G itself and one
    sum per vertex suffices.
    """
    _check_a(a)
    check_cap(g.m, GK_EDGE_CAP, "|E| for connected-subgraph enumeration")
    weights = _BlockWeights(g, w)
    grow = 1 / (1 - a)
    per_vertex = []
    for v in range(g.n):
        total = 0.0
        for emask, vmask in connected_subsets(g, v):
            if not emask:
                continue
            wb = weights[emask]
            if wb != 0:
                total += abs(complex(wb)) * grow ** (vmask.bit_count() - 1)
        per_vertex.append(total)
    gk_max = max(per_vertex, default=0.0)
    block = certify_zero_free(g, w, a, evaluate=False)
    return GKReport(a, per_vertex, gk_max, gk_max <= a, block.max_sum, block.valid)
