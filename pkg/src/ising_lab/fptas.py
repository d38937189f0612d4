"""Approximating Z_even by truncating the Taylor series of log Z_even.

If Z_even(G; .) has no zeros in |x| < R, then log Z_even is analytic there and
the tail after order m is at most |E| theta^(m+1) / ((m+1)(1-theta)) with
theta = |x|/R.  The low-order coefficients come from connected even
subgraphs: an even set is the vertex-disjoint union of its nontrivial
components, so e_k counts packings of catalog members with k edges in total.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .config import CATALOG_SIZE_CAP, CYCLE_SPACE_CAP, cap
from .errors import CapacityError, DomainError, OutOfRegionError
from .graph import Graph, girth, iter_bits, max_degree
from .partition import cycle_space_dimension, z_even_poly
from .polynomial import eval_complex
from .regions import b_to_x, max_radius_for_girth

# girths beyond this give radii within 1e-3 of 1/(Delta-1); the search is finite
GIRTH_CLAMP = 200
MAX_ORDER = 400


@dataclass(frozen=True)
class ClusterCatalog:
    """Connected even edge subsets with at most ``max_size`` edges.

    ``by_root[v]`` lists (edge mask, vertex mask) with v the smallest vertex.
    """

    max_size: int
    by_root: tuple[tuple[tuple[int, int], ...], ...]

    def members(self):
        for group in self.by_root:
            yield from group

    def by_size(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for emask, _ in self.members():
            out.setdefault(emask.bit_count(), []).append(emask)
        return out

    def __len__(self) -> int:
        return sum(len(group) for group in self.by_root)


def _rooted_clusters(g: Graph, root: int, m: int) -> list[tuple[int, int]]:
    inc = g.incidence_masks
    evm = g.edge_vertex_masks
    below = (1 << root) - 1
    out = []

    def grow(emask, vmask, odd, boundary, excluded, size, fresh):
        if fresh and not odd:
            out.append((emask, vmask))
        cand = boundary & ~emask & ~excluded
        if not cand or size >= m:
            return
        low = cand & -cand
        e = low.bit_length() - 1
        ends = evm[e]
        # keep every vertex >= root so each cluster is found from its minimum
        if not ends & below:
            u, v = g.endpoints[e]
            nodd = odd if u == v else odd ^ ends
            # each odd vertex still needs another edge; one edge fixes at most two
            if size + 1 + (nodd.bit_count() + 1) // 2 <= m:
                nv = vmask | ends
                nb = boundary
                for x in iter_bits(ends & ~vmask):
                    nb |= inc[x]
                grow(emask | low, nv, nodd, nb, excluded, size + 1, True)
        grow(emask, vmask, odd, boundary, excluded | low, size, False)

    grow(0, 1 << root, 0, inc[root], 0, 0, False)
    return out


def build_catalog(g: Graph, m: int) -> ClusterCatalog:
    """All connected even subgraphs with 1..m edges, grouped by smallest vertex."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    limit = cap(CATALOG_SIZE_CAP)
    if m > limit:
        raise CapacityError(f"catalog order {m} exceeds cap {limit}")
    groups = []
    for root in range(g.n):
        found = _rooted_clusters(g, root, m)
        found.sort(key=lambda t: (t[0].bit_count(), t[0]))
        groups.append(tuple(found))
    return ClusterCatalog(m, tuple(groups))


def even_coeffs_upto(g: Graph, m: int, catalog: ClusterCatalog | None = None) -> list[int]:
    """e_0..e_m, the number of even sets with k edges, by vertex-disjoint packing."""
    if catalog is None or catalog.max_size < min(m, g.m):
        catalog = build_catalog(g, min(m, g.m))
    by_root = catalog.by_root

    @lru_cache(maxsize=None)
    def packings(avail: int) -> tuple[int, ...]:
        out = [0] * (m + 1)
        if not avail:
            out[0] = 1
            return tuple(out)
        v = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << v)
        for k, c in enumerate(packings(rest)):
            out[k] += c
        for emask, vmask in by_root[v]:
            size = emask.bit_count()
            if size > m or vmask & ~avail:
                continue
            for k, c in enumerate(packings(avail & ~vmask)):
                if not c or k + size > m:
                    continue
                out[k + size] += c
        return tuple(out)

    result = list(packings((1 << g.n) - 1))
    packings.cache_clear()
    return result


def log_z_taylor(e, m: int) -> list[Fraction]:
    """c_1..c_m with exp(sum c_k x^k) = sum e_k x^k through order m (Newton's identities)."""
    if not e or e[0] != 1:
        raise DomainError("series must start with e_0 = 1")
    ee = [Fraction(v) for v in e] + [Fraction(0)] * max(0, m + 1 - len(e))
    c = [Fraction(0)] * (m + 1)
    for k in range(1, m + 1):
        acc = Fraction(k) * ee[k]
        for j in range(1, k):
            if c[j] and ee[k - j]:
                acc -= j * c[j] * ee[k - j]
        c[k] = acc / k
    return c[1:]


@dataclass(frozen=True)
class TruncationCertificate:
    m: int
    R: float
    x: complex
    theta: float
    error_bound: float

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "R": self.R,
            "x": [self.x.real, self.x.imag],
            "theta": self.theta,
            "error_bound": self.error_bound,
        }


def truncation_bound(n_edges: int, theta: float, m: int) -> float:
    if not 0 <= theta < 1:
        raise DomainError("theta must lie in [0, 1)")
    if theta == 0:
        return 0.0
    return n_edges * theta ** (m + 1) / ((m + 1) * (1 - theta))


def default_radius(g: Graph) -> float:
    """Largest girth-aware zero-free radius for max degree max(3, Delta(G))."""
    delta = max(3, max_degree(g))
    gg = girth(g)
    if gg == math.inf or gg > GIRTH_CLAMP:
        gg = GIRTH_CLAMP
    return max_radius_for_girth(delta, max(3, int(gg)))


def _choose_order(n_edges: int, theta: float, eps: float, limit: int) -> tuple[int, float]:
    """Smallest m whose tail bound keeps the relative error exp(bound) - 1 within eps."""
    target = math.log1p(eps)
    for m in range(limit + 1):
        bound = truncation_bound(n_edges, theta, m)
        if bound <= target:
            return m, bound
    raise CapacityError(
        f"truncation bound {bound:.3e} still above eps={eps} at order {limit}",
        achieved=bound,
    )


def approx_z_even(g: Graph, x: complex, eps: float, R: float | None = None):
    """(estimate, certificate) for Z_even(G; x), |x| < R, relative error within eps."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    x = complex(x)
    if R is None:
        R = default_radius(g)
    if not R > 0:
        raise DomainError("R must be positive")
    theta = abs(x) / R
    if theta >= 1:
        raise OutOfRegionError(f"|x| = {abs(x):.6g} is not inside the zero-free radius R = {R:.6g}")
    # coefficients beyond |E| vanish, so a complete catalog supports any order
    catalog_cap = cap(CATALOG_SIZE_CAP)
    limit = MAX_ORDER if g.m <= catalog_cap else catalog_cap
    m, bound = _choose_order(g.m, theta, eps, limit)
    e = even_coeffs_upto(g, min(m, g.m))
    c = log_z_taylor(e, m)
    # c_k can exceed the float range at high order; x^k keeps the products small
    xx = mpmath.mpc(x.real, x.imag)
    s = mpmath.mpc(0)
    for k, ck in enumerate(c, start=1):
        if ck:
            s += mpmath.mpf(ck.numerator) / ck.denominator * xx**k
    estimate = complex(mpmath.exp(s))
    return estimate, TruncationCertificate(m, R, x, theta, bound)


def approx_z_ising(g: Graph, b: complex, eps: float, R: float | None = None):
    """Z_Ising(G; b) = 2^|V| (1-x)^-|E| Z_even(G; x) at x = (b-1)/(b+1)."""
    x = b_to_x(b)
    est, cert = approx_z_even(g, x, eps, R)
    return (2**g.n) * (1 - x) ** (-g.m) * est, cert


def exact_z_even(g: Graph, x: complex) -> complex | None:
    """Z_even(G; x) from the full cycle space, or None when that is out of reach."""
    if cycle_space_dimension(g) > cap(CYCLE_SPACE_CAP):
        return None
    return eval_complex(z_even_poly(g), x)


def observed_error(estimate: complex, exact: complex) -> tuple[float, float]:
    """(|log(estimate/exact)|, |estimate/exact - 1|)."""
    ratio = estimate / exact
    return abs(cmath.log(ratio)), abs(ratio - 1)
