"""Exact Ising and even-set partition functions.

``z_ising_poly`` histograms the number of monochromatic edges over all
2-colourings; ``z_even_poly`` walks the cycle space (the even sets are exactly
its elements) in Gray-code order.  The two are tied together by the Van der
Waerden change of variables b = (1+x)/(1-x).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

import mpmath
import numpy as np

from . import kernels
from .config import CYCLE_SPACE_CAP, ISING_VERTEX_CAP, check_cap
from .errors import DomainError, InvalidMoveError
from .graph import Graph, components, contract_edge, delete_edge, iter_bits
from .polynomial import IntegerPolynomial, eval_complex

HIGH_PRECISION = 40


@dataclass(frozen=True)
class ConditionalContext:
    host: Graph
    terminals: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        bad = [u for u in self.terminals if not 0 <= u < self.host.n]
        if bad:
            raise ValueError(f"terminals {bad} are not vertices of the host graph")


# -- Ising side ------------------------------------------------------------------


def _ising_arcs(g: Graph):
    arcs = [[] for _ in range(g.n)]
    loops = 0
    for u, v, _ in g.edges:
        if u == v:
            loops += 1
            continue
        arcs[u].append((v, 0))
        arcs[v].append((u, 0))
    return arcs, loops


def z_ising_poly(g: Graph, cap: int | None = None, force_python: bool = False) -> IntegerPolynomial:
    """Z_Ising(G; b) = sum over colourings of b**(monochromatic edges)."""
    check_cap(g.n, cap or ISING_VERTEX_CAP, "|V| for 2-colouring enumeration",
              hint="use z_even_poly and the Van der Waerden transform instead")
    arcs, loops = _ising_arcs(g)
    indptr, nbrs, _ = kernels.csr(g.n, arcs)
    hist = kernels.ising_histogram(g.n, indptr, nbrs, g.m, loops, force_python=force_python)
    return IntegerPolynomial(hist)


def monochromatic_count(g: Graph, spins) -> int:
    return sum(1 for u, v, _ in g.edges if spins[u] == spins[v])


# -- even-set side -----------------------------------------------------------------


def cycle_basis(g: Graph) -> list[int]:
    """Fundamental cycles (edge masks) of a BFS spanning forest; loops are their own cycles."""
    parent_edge = [-1] * g.n
    seen = [False] * g.n
    tree = 0
    adj = g.adjacency
    depth = [0] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, eid in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    parent_edge[y] = eid
                    depth[y] = depth[x] + 1
                    tree |= 1 << eid
                    queue.append(y)
    basis = []
    for u, v, eid in g.edges:
        if (tree >> eid) & 1:
            continue
        mask = 1 << eid
        a, b = u, v
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            mask ^= 1 << parent_edge[a]
            a = parent[a]
        basis.append(mask)
    return basis


def cycle_space_dimension(g: Graph) -> int:
    return g.m - g.n + len(components(g))


def iter_even_sets(g: Graph, cap: int | None = None) -> Iterator[int]:
    """Every even edge subset exactly once (Gray-code walk over the cycle basis)."""
    basis = cycle_basis(g)
    check_cap(len(basis), cap or CYCLE_SPACE_CAP, "cycle-space dimension")
    state = 0
    yield state
    for i in range(1, 1 << len(basis)):
        state ^= basis[(i & -i).bit_length() - 1]
        yield state


def is_even(g: Graph, mask: int) -> bool:
    deg = [0] * g.n
    for eid in iter_bits(mask):
        u, v = g.endpoints[eid]
        deg[u] += 1
        deg[v] += 1
    return all(d % 2 == 0 for d in deg)


def _compress(g: Graph, masks: list[int]) -> list[int]:
    """Re-index masks onto positions 0..m-1 so the compiled kernel sees dense 64-bit words."""
    position = {eid: i for i, eid in enumerate(g.edge_ids)}
    out = []
    for mask in masks:
        c = 0
        for eid in iter_bits(mask):
            c |= 1 << position[eid]
        out.append(c)
    return out


def z_even_poly(g: Graph, cap: int | None = None, force_python: bool = False) -> IntegerPolynomial:
    """Z_even(G; x) = sum over even F of x**|F|."""
    basis = cycle_basis(g)
    check_cap(len(basis), cap or CYCLE_SPACE_CAP, "cycle-space dimension")
    hist = kernels.even_histogram(_compress(g, basis), g.m, force_python=force_python)
    return IntegerPolynomial(hist)


@lru_cache(maxsize=256)
def _even_set_table(g: Graph) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """(size, vertex masks of multi-vertex components) for each even set of g."""
    table = []
    for mask in iter_even_sets(g):
        # single-vertex components can never hold two terminals
        comps = tuple(vm for vm in components(g, mask) if vm & (vm - 1))
        table.append((mask.bit_count(), comps))
    return tuple(table)


def z_even_conditional(ctx: ConditionalContext) -> IntegerPolynomial:
    """Generating function of even sets whose components each meet the terminals at most once."""
    g = ctx.host
    umask = 0
    for u in ctx.terminals:
        umask |= 1 << u
    hist = [0] * (g.m + 1)
    for size, comps in _even_set_table(g):
        if all((vm & umask).bit_count() <= 1 for vm in comps):
            hist[size] += 1
    return IntegerPolynomial(hist)


def conditional_even_sets(g: Graph, terminals) -> list[int]:
    umask = 0
    for u in terminals:
        umask |= 1 << u
    out = []
    for mask in iter_even_sets(g):
        if all((vm & umask).bit_count() <= 1 for vm in components(g, mask)):
            out.append(mask)
    return out


# -- Van der Waerden ---------------------------------------------------------------


def vdw_transform_check(g: Graph, x: complex, precision: int = HIGH_PRECISION) -> tuple[complex, complex]:
    """Both sides of Z_even(G;x) = (1-x)^|E| 2^-|V| Z_Ising(G;(1+x)/(1-x)).

    Evaluated from the exact polynomials in ``precision`` decimal digits.
    """
    x = complex(x)
    if x == 1:
        raise DomainError("x = 1 is a pole of the transform")
    z_even = z_even_poly(g)
    z_ising = z_ising_poly(g)
    with mpmath.workdps(precision):
        xx = mpmath.mpc(x.real, x.imag)
        b = (1 + xx) / (1 - xx)
        lhs = mpmath.polyval(list(reversed(z_even.coeffs)) or [0], xx)
        rhs = (1 - xx) ** g.m * mpmath.mpf(2) ** (-g.n) * mpmath.polyval(list(reversed(z_ising.coeffs)) or [0], b)
        return complex(lhs), complex(rhs)


def ising_from_even(g: Graph, z_even: IntegerPolynomial | None = None) -> IntegerPolynomial:
    """Z_Ising as an exact polynomial from Z_even: 2^(|V|-|E|) sum_j e_j (b-1)^j (b+1)^(|E|-j)."""
    if z_even is None:
        z_even = z_even_poly(g)
    bm1 = IntegerPolynomial([-1, 1])
    bp1 = IntegerPolynomial([1, 1])
    total = IntegerPolynomial()
    for j, e in enumerate(z_even.coeffs):
        if e:
            total = total + e * (bm1**j) * (bp1 ** (g.m - j))
    shift = g.n - g.m
    if shift >= 0:
        return total * (1 << shift)
    scale = 1 << -shift
    if any(c % scale for c in total.coeffs):
        raise ArithmeticError("non-integral Ising coefficients; inconsistent input")
    return IntegerPolynomial([c // scale for c in total.coeffs])


@dataclass(frozen=True)
class DeletionContractionReport:
    edge: int
    whole: IntegerPolynomial
    contracted: IntegerPolynomial
    deleted: IntegerPolynomial
    holds: bool


def deletion_contraction_even(g: Graph, e: int) -> DeletionContractionReport:
    """Exact check of Z_even(G) = x Z_even(G/e) + (1-x) Z_even(G\\e)."""
    u, v = g.endpoints.get(e, (None, None))
    if u is None:
        raise InvalidMoveError(f"edge id {e} is not a live edge")
    if u == v:
        raise InvalidMoveError("deletion-contraction is defined for non-loop edges")
    whole = z_even_poly(g)
    con = z_even_poly(contract_edge(g, e))
    dele = z_even_poly(delete_edge(g, e))
    x = IntegerPolynomial([0, 1])
    rhs = x * con + IntegerPolynomial([1, -1]) * dele
    return DeletionContractionReport(e, whole, con, dele, rhs == whole)


# -- multivariate ------------------------------------------------------------------


def _weights(g: Graph, w: Mapping[int, complex]) -> list[complex]:
    out = []
    for eid in g.edge_ids:
        if eid not in w:
            raise KeyError(f"missing weight for edge {eid}")
        out.append(complex(w[eid]))
    return out


def z_ising_multivariate(g: Graph, w: Mapping[int, complex], cap: int | None = None) -> complex:
    """sum over colourings of the product of b_e over monochromatic edges e."""
    check_cap(g.n, cap or ISING_VERTEX_CAP, "|V| for 2-colouring enumeration")
    weights = _weights(g, w)
    states = np.arange(1 << g.n, dtype=np.int64)
    total = np.ones(1 << g.n, dtype=complex)
    for (u, v, _), be in zip(g.edges, weights):
        mono = ((states >> u) & 1) == ((states >> v) & 1)
        total *= np.where(mono, be, 1.0)
    return complex(total.sum())


def z_even_multivariate(g: Graph, w: Mapping[int, complex], cap: int | None = None) -> complex:
    weights = dict(zip(g.edge_ids, _weights(g, w)))
    total = 0j
    for mask in iter_even_sets(g, cap):
        term = 1 + 0j
        for eid in iter_bits(mask):
            term *= weights[eid]
        total += term
    return total


def z_even_eval(g: Graph, x: complex) -> complex:
    return eval_complex(z_even_poly(g), x)


def z_ising_eval(g: Graph, b: complex) -> complex:
    return eval_complex(z_ising_poly(g), b)
