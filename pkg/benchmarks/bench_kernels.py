"""Compare the numba kernels with their pure-numpy fallbacks.

Kernel timings run both implementations in one process. The end-to-end
timings launch a fresh interpreter per backend, with WLCERT_NO_NUMBA set for
the fallback, so the dispatch path is exercised as users see it.

    python benchmarks/bench_kernels.py [--sizes 16 32 64] [--repeat 5]
"""
import argparse
import os
import random
import subprocess
import sys
import timeit
from itertools import combinations

import numpy as np

from wlcert import kernels
from wlcert._accel import HAS_NUMBA
from wlcert.coherent import wl2_refine
from wlcert.graph import make_graph
from wlcert.refine import color_refine

E2E = """
import time
from wlcert.graph import from_spec
from wlcert.coherent import wl2_refine
from wlcert._accel import backend
g = from_spec({spec!r})
wl2_refine(from_spec("path:3"))
t0 = time.perf_counter()
for _ in range({loops}):
    cc = wl2_refine(g)
print(backend(), cc.rank, (time.perf_counter() - t0) / {loops})
"""


def sample_graph(n, p, seed):
    rng = random.Random(seed)
    return make_graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def best(fn, repeat):
    fn()  # warm-up, includes compilation for the jitted path
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_rows(n, repeat):
    g = sample_graph(n, 0.3, n)
    adj = np.ascontiguousarray(g.adjacency, dtype=np.uint8)
    colors = np.zeros(n, dtype=np.int64)
    pair = np.asarray(wl2_refine(g).rel, dtype=np.int64)
    s = int(pair.max()) + 1
    dist = kernels.bfs_distances_numpy(adj)
    diam = int(dist.max())
    cases = [
        ("wl1_signatures", lambda: kernels.wl1_signatures_numpy(adj, colors),
         lambda: kernels.wl1_signatures_numba(adj, colors)),
        ("wl2_signatures", lambda: kernels.wl2_signatures_numpy(pair, s),
         lambda: kernels.wl2_signatures_numba(pair, np.int64(s))),
        ("bfs_distances", lambda: kernels.bfs_distances_numpy(adj),
         lambda: kernels.bfs_distances_numba(adj)),
        ("layer_counts", lambda: kernels.layer_counts_numpy(dist, diam),
         lambda: kernels.layer_counts_numba(dist, np.int64(diam))),
    ]
    for name, slow, fast in cases:
        assert np.array_equal(slow(), fast()), name
        t_np, t_nb = best(slow, repeat), best(fast, repeat)
        yield name, n, t_np, t_nb


def end_to_end(spec, loops):
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, WLCERT_NO_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", E2E.format(spec=spec, loops=loops)],
                             env=env, capture_output=True, text=True, check=True)
        name, rank, secs = res.stdout.split()
        out[name] = (int(rank), float(secs))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--loops", type=int, default=3)
    args = ap.parse_args()

    if not HAS_NUMBA:
        print("numba is not installed; both columns use the fallback")
    print(f"{'kernel':<16}{'n':>5}{'numpy [ms]':>13}{'numba [ms]':>13}{'speed-up':>10}")
    for n in args.sizes:
        for name, size, t_np, t_nb in kernel_rows(n, args.repeat):
            print(f"{name:<16}{size:>5}{t_np * 1e3:>13.3f}{t_nb * 1e3:>13.3f}{t_np / t_nb:>9.1f}x")

    print()
    print(f"{'wl2_refine':<28}{'rank':>6}{'numpy [ms]':>13}{'numba [ms]':>13}")
    for spec in ("shrikhande", "rook:5", "subdivision(complete:6)", "petersen"):
        res = end_to_end(spec, args.loops)
        rank = res["numba"][0]
        assert res["numpy"][0] == rank
        print(f"{spec:<28}{rank:>6}{res['numpy'][1] * 1e3:>13.2f}{res['numba'][1] * 1e3:>13.2f}")
    # colour refinement is cheap at these sizes; shown for completeness
    g = sample_graph(max(args.sizes), 0.3, 1)
    print(f"\ncolor_refine on n={g.n}: {best(lambda: color_refine(g), args.repeat) * 1e3:.3f} ms")


if __name__ == "__main__":
    main()
