"""Compiled versus pure-Python build kernels on random lattice sites.

    python3 benchmarks/bench_kernels.py [--sizes 1000,4000,16000] [--repeat 3]

Both backends must return identical structures and predicate counts; the
script checks that before printing timings.
"""

import argparse
import random
import time

from nncascade import _kernels_py as pure
from nncascade import kernels

B = 1 << 13


def sites(n, seed):
    rng = random.Random(seed)
    pts = set()
    while len(pts) < n:
        pts.add((rng.randint(-B, B), rng.randint(-B, B)))
    pts = sorted(pts)
    return [p[0] for p in pts], [p[1] for p in pts]


def best_of(repeat, fn, *args):
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def run(mod, xs, ys, repeat):
    t_del, (adj, c1) = best_of(repeat, mod.delaunay, xs, ys)
    t_cell, (table, c2) = best_of(repeat, mod.voronoi_cells, xs, ys, adj, 3 * B)
    # upper level: every eighth site, intersected with the cells of all sites
    up = list(range(0, len(xs), 8))
    uxs, uys = [xs[k] for k in up], [ys[k] for k in up]
    uadj, _ = mod.delaunay(uxs, uys)
    utable, _ = mod.voronoi_cells(uxs, uys, uadj, 3 * B)
    sampled = list(range(0, len(up), 4))
    start = [up[s] for s in sampled]
    t_ov, (ov, c3) = best_of(repeat, mod.cell_overlaps, utable, sampled, start, table, adj)
    result = (adj, c1, [list(col) for col in table], c2, ov, c3)
    return (t_del, t_cell, t_ov), result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="1000,4000,16000")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . first")
    print(f"{'n':>7} {'kernel':<14} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for n in map(int, args.sizes.split(",")):
        xs, ys = sites(n, n)
        tp, rp = run(pure, xs, ys, args.repeat)
        tc, rc = run(kernels.compiled, xs, ys, args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree at n={n}")
        for name, a, b in zip(("delaunay", "voronoi_cells", "cell_overlaps"), tp, tc):
            print(f"{n:>7} {name:<14} {a:>10.4f} {b:>11.4f} {a / b:>7.1f}x")


if __name__ == "__main__":
    main()
