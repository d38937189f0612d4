"""Pure-Python versions of the compiled kernels in ``_core.pyx``."""


def ising_histogram(n, indptr, nbrs, n_edges, n_loops):
    hist = [0] * (n_edges + 1)
    if n == 0:
        hist[n_loops] = 1
        return hist
    spin = [0] * n
    m = n_edges
    hist[m] += 1
    for i in range(1, 1 << (n - 1)):
        v = (i & -i).bit_length() - 1
        sv = spin[v]
        delta = 0
        for k in range(indptr[v], indptr[v + 1]):
            delta += -1 if spin[nbrs[k]] == sv else 1
        spin[v] = sv ^ 1
        m += delta
        hist[m] += 1
    return [2 * c for c in hist]


def even_histogram(cycles, n_edges):
    hist = [0] * (n_edges + 1)
    hist[0] = 1
    state = 0
    for i in range(1, 1 << len(cycles)):
        state ^= cycles[(i & -i).bit_length() - 1]
        hist[state.bit_count()] += 1
    return hist


def closed_trail_counts(v, indptr, nbrs, eids, n_edges):
    counts = [0] * (n_edges + 1)

    def walk(x, length, used):
        for k in range(indptr[x], indptr[x + 1]):
            e = eids[k]
            if (used >> e) & 1:
                continue
            w = nbrs[k]
            if w == v:
                counts[length + 1] += 1
            walk(w, length + 1, used | (1 << e))

    walk(v, 0, 0)
    return counts
