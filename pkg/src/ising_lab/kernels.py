"""Hot-loop dispatch: the compiled ``_core`` extension when importable, else ``_pycore``.

Set ``ISING_LAB_PURE_PYTHON=1`` to force the fallback.  Compiled kernels work
on 64-bit masks, so graphs with more than 64 edges always take the Python path.
"""
import os

import numpy as np

from . import _pycore

try:
    if os.environ.get("ISING_LAB_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _core
except ImportError:
    _core = None

BACKEND = "cython" if _core is not None else "python"
WORD = 64


def _impl(n_edges, force_python=False):
    if force_python or _core is None or n_edges > WORD:
        return None
    return _core


def csr(n, arcs):
    """Compressed adjacency from per-vertex lists of (neighbour, position)."""
    indptr = [0]
    nbrs = []
    pos = []
    for v in range(n):
        for w, p in arcs[v]:
            nbrs.append(w)
            pos.append(p)
        indptr.append(len(nbrs))
    return indptr, nbrs, pos


def ising_histogram(n, indptr, nbrs, n_edges, n_loops, force_python=False):
    core = _impl(n_edges, force_python)
    if core is None or n > WORD:
        return _pycore.ising_histogram(n, indptr, nbrs, n_edges, n_loops)
    return core.ising_histogram(
        n, np.asarray(indptr, dtype=np.intc), np.asarray(nbrs, dtype=np.intc), n_edges, n_loops
    )


def even_histogram(cycles, n_edges, force_python=False):
    core = _impl(n_edges, force_python)
    if core is None or len(cycles) >= WORD:
        return _pycore.even_histogram(list(cycles), n_edges)
    return core.even_histogram(np.asarray(cycles, dtype=np.uint64), n_edges)


def closed_trail_counts(v, indptr, nbrs, eids, n_edges, force_python=False):
    core = _impl(n_edges, force_python)
    if core is None:
        return _pycore.closed_trail_counts(v, indptr, nbrs, eids, n_edges)
    return core.closed_trail_counts(
        v,
        np.asarray(indptr, dtype=np.intc),
        np.asarray(nbrs, dtype=np.intc),
        np.asarray(eids, dtype=np.intc),
        n_edges,
    )
