"""Hot numeric kernels.

Every kernel has a pure-numpy implementation (``*_numpy``) and a loop
implementation compiled by numba (``*_numba``). The public names dispatch on
:data:`wlcert._accel.USE_NUMBA`. Both paths must return identical arrays;
the test-suite and ``benchmarks/bench_kernels.py`` compare them directly.
"""
import numpy as np

from wlcert._accel import USE_NUMBA, jit

# padding for vertex rows shorter than n; sorts after every real color
PAD = np.iinfo(np.int64).max


# --------------------------------------------------------------------------
# 1-WL: per-vertex signature rows  [own color, sorted neighbour colors, PAD..]
# --------------------------------------------------------------------------

def wl1_signatures_numpy(adj, colors):
    n = adj.shape[0]
    vals = np.where(adj != 0, colors[None, :], PAD)
    vals.sort(axis=1)
    out = np.empty((n, n + 1), dtype=np.int64)
    out[:, 0] = colors
    out[:, 1:] = vals
    return out


def _wl1_signatures_loop(adj, colors):
    n = adj.shape[0]
    out = np.empty((n, n + 1), dtype=np.int64)
    buf = np.empty(n, dtype=np.int64)
    for x in range(n):
        m = 0
        for z in range(n):
            if adj[x, z] != 0:
                buf[m] = colors[z]
                m += 1
        nb = np.sort(buf[:m])
        out[x, 0] = colors[x]
        for t in range(m):
            out[x, 1 + t] = nb[t]
        for t in range(m, n):
            out[x, 1 + t] = PAD
    return out


# --------------------------------------------------------------------------
# 2-WL: per-pair signature rows  [own color, sorted codes c(x,z)*s + c(z,y)]
# row index is x*n + y
# --------------------------------------------------------------------------

def wl2_signatures_numpy(colors, s):
    n = colors.shape[0]
    codes = colors[:, None, :] * s + colors.T[None, :, :]
    codes.sort(axis=2)
    out = np.empty((n * n, n + 1), dtype=np.int64)
    out[:, 0] = colors.reshape(-1)
    out[:, 1:] = codes.reshape(n * n, n)
    return out


def _wl2_signatures_loop(colors, s):
    n = colors.shape[0]
    out = np.empty((n * n, n + 1), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            r = x * n + y
            out[r, 0] = colors[x, y]
            # insertion sort straight into the output row; rows are short
            for z in range(n):
                code = colors[x, z] * s + colors[z, y]
                t = z
                while t > 0 and out[r, t] > code:
                    out[r, t + 1] = out[r, t]
                    t -= 1
                out[r, t + 1] = code
    return out


# --------------------------------------------------------------------------
# all-pairs BFS distances; -1 marks unreachable pairs
# --------------------------------------------------------------------------

def bfs_distances_numpy(adj):
    n = adj.shape[0]
    a = (adj != 0).astype(np.int64)
    dist = np.full((n, n), -1, dtype=np.int64)
    frontier = np.eye(n, dtype=bool)
    reached = frontier.copy()
    d = 0
    while frontier.any():
        dist[frontier] = d
        frontier = ((frontier.astype(np.int64) @ a) > 0) & ~reached
        reached |= frontier
        d += 1
    return dist


def _bfs_distances_loop(adj):
    n = adj.shape[0]
    dist = np.full((n, n), -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for src in range(n):
        dist[src, src] = 0
        head = 0
        tail = 1
        queue[0] = src
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[src, u]
            for v in range(n):
                if adj[u, v] != 0 and dist[src, v] < 0:
                    dist[src, v] = du + 1
                    queue[tail] = v
                    tail += 1
    return dist


# --------------------------------------------------------------------------
# layer intersections: out[x, y, i, j] = |{z : dist(x,z)=i, dist(z,y)=j}|
# pairs involving unreachable vertices are ignored (dist = -1)
# --------------------------------------------------------------------------

def layer_counts_numpy(dist, diameter):
    layers = np.stack([(dist == i).astype(np.int64) for i in range(diameter + 1)])
    return np.einsum("ixz,jzy->xyij", layers, layers)


def _layer_counts_loop(dist, diameter):
    n = dist.shape[0]
    out = np.zeros((n, n, diameter + 1, diameter + 1), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                i = dist[x, z]
                j = dist[z, y]
                if i >= 0 and j >= 0 and i <= diameter and j <= diameter:
                    out[x, y, i, j] += 1
    return out


wl1_signatures_numba = jit(_wl1_signatures_loop)
wl2_signatures_numba = jit(_wl2_signatures_loop)
bfs_distances_numba = jit(_bfs_distances_loop)
layer_counts_numba = jit(_layer_counts_loop)


def wl1_signatures(adj, colors):
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    colors = np.ascontiguousarray(colors, dtype=np.int64)
    if USE_NUMBA:
        return wl1_signatures_numba(adj, colors)
    return wl1_signatures_numpy(adj, colors)


def wl2_signatures(colors, s):
    colors = np.ascontiguousarray(colors, dtype=np.int64)
    if USE_NUMBA:
        return wl2_signatures_numba(colors, np.int64(s))
    return wl2_signatures_numpy(colors, s)


def bfs_distances(adj):
    adj = np.ascontiguousarray(adj, dtype=np.uint8)
    if USE_NUMBA:
        return bfs_distances_numba(adj)
    return bfs_distances_numpy(adj)


def layer_counts(dist, diameter):
    dist = np.ascontiguousarray(dist, dtype=np.int64)
    if USE_NUMBA:
        return layer_counts_numba(dist, np.int64(diameter))
    return layer_counts_numpy(dist, diameter)


def rank_rows(rows):
    """Canonical class ids for signature rows.

    Rows are ranked lexicographically, so the ids depend only on row
    contents. Returns ``(ids, unique_rows, counts)``.
    """
    uniq, inverse, counts = np.unique(rows, axis=0, return_inverse=True, return_counts=True)
    return inverse.reshape(-1).astype(np.int64), uniq, counts
