# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Same signatures and results as ``_pycore``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long)
    int __builtin_popcountll(unsigned long long)


def ising_histogram(int n, const int[:] indptr, const int[:] nbrs, int n_edges, int n_loops):
    """Counts of 2-colourings by number of monochromatic edges.

    Vertex n-1 is pinned to colour 0; the global flip doubles every count.
    """
    cdef cnp.ndarray[int64_t, ndim=1] hist = np.zeros(n_edges + 1, dtype=np.int64)
    if n == 0:
        hist[n_loops] = 1
        return hist.tolist()
    cdef unsigned char[:] spin = np.zeros(n, dtype=np.uint8)
    cdef int64_t m = n_edges
    cdef uint64_t i, total = (<uint64_t>1) << (n - 1)
    cdef int v, k, delta
    hist[m] += 1
    for i in range(1, total):
        v = __builtin_ctzll(i)
        delta = 0
        for k in range(indptr[v], indptr[v + 1]):
            if spin[v] == spin[nbrs[k]]:
                delta -= 1
            else:
                delta += 1
        spin[v] ^= 1
        m += delta
        hist[m] += 1
    hist *= 2
    return hist.tolist()


def even_histogram(const uint64_t[:] cycles, int n_edges):
    """Counts of cycle-space elements by size, Gray-code order over the basis."""
    cdef int dim = cycles.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] hist = np.zeros(n_edges + 1, dtype=np.int64)
    cdef uint64_t state = 0
    cdef uint64_t i, total = (<uint64_t>1) << dim
    hist[0] = 1
    for i in range(1, total):
        state ^= cycles[__builtin_ctzll(i)]
        hist[__builtin_popcountll(state)] += 1
    return hist.tolist()


cdef void _trails(int v, int start, int length, uint64_t used,
                  const int[:] indptr, const int[:] nbrs, const int[:] eids,
                  int64_t[:] counts) noexcept nogil:
    cdef int k, w, e
    for k in range(indptr[v], indptr[v + 1]):
        e = eids[k]
        if (used >> e) & 1:
            continue
        w = nbrs[k]
        if w == start:
            counts[length + 1] += 1
        _trails(w, start, length + 1, used | ((<uint64_t>1) << e), indptr, nbrs, eids, counts)


def closed_trail_counts(int v, const int[:] indptr, const int[:] nbrs, const int[:] eids, int n_edges):
    """Closed walks from v using each edge at most once, counted by length.

    Arc lists carry both orientations of every edge, so the two traversal
    directions of a closed walk are counted separately.
    """
    cdef cnp.ndarray[int64_t, ndim=1] counts = np.zeros(n_edges + 1, dtype=np.int64)
    cdef int64_t[:] cv = counts
    with nogil:
        _trails(v, v, 0, 0, indptr, nbrs, eids, cv)
    return counts.tolist()
