"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--sizes 200 1000 4000] [--repeat 5]

Each row reports the best-of-``repeat`` wall time for both backends and checks
that they return the same answer.  The numba column excludes compilation (one
warm-up call first).  With CONVEYOR_DISABLE_NUMBA=1 both columns run Python.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from conveyor import _kernels as K
from conveyor.generators import mixed_radii
from conveyor.graphs import maximal_planar_graphs


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def first_hit_case(n: int, rng):
    ds = mixed_radii(n, rng) if n <= 400 else None
    if ds is None:  # rejection sampling gets slow; a jittered grid is disjoint by construction
        side = int(np.ceil(np.sqrt(n)))
        g = np.stack(np.meshgrid(np.arange(side), np.arange(side)), -1).reshape(-1, 2)[:n] * 5.0
        centers = g + rng.uniform(-0.5, 0.5, g.shape)
        radii = rng.uniform(0.5, 1.5, n)
    else:
        centers = np.array([d.center for d in ds])
        radii = np.array([d.radius for d in ds])
    m = 4 * n
    i, j = rng.integers(0, n, m), rng.integers(0, n, m)
    return centers[i], centers[j], centers, radii, 1e-9


def segment_case(m: int, rng):
    p1 = rng.uniform(0, 100, (m, 2))
    p2 = p1 + rng.normal(0, 5, (m, 2))
    return p1, p2, 1e-9


def relax_case(rng):
    t = maximal_planar_graphs(8)[-1]
    n = t.n
    faces = np.array(t.interior_faces, dtype=np.int64)
    degree = np.zeros(n, dtype=np.int64)
    for u, v in t.edges:
        degree[u] += 1
        degree[v] += 1
    free = np.ones(n, dtype=np.bool_)
    free[list(t.outer)] = False
    radii = np.ones(n)
    radii[free] = 0.5
    return radii, faces, degree, free, np.full(n, 2 * np.pi), 1e-13, 100_000, 1.0


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 1000, 4000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    rng = np.random.default_rng(a.seed)
    print(f"backend in use: {K.BACKEND}")
    print(f"{'kernel':<16}{'size':>8}{'numba s':>12}{'numpy s':>12}{'speedup':>9}  agree")
    rows = []
    for n in a.sizes:
        args = first_hit_case(n, rng)
        rows.append(("first_hit", n, K.first_hit_nb, K.first_hit_np, args))
        rows.append(("segment_pairs", n, K.segment_pairs_nb, K.segment_pairs_np, segment_case(min(n, 2000), rng)))
    rows.append(("relax_radii", 8, K.relax_radii_nb, K.relax_radii_np, relax_case(rng)))
    for name, n, nb, npf, args in rows:
        nb(*args)  # compile
        r_nb, r_np = nb(*args), npf(*args)
        if isinstance(r_nb, tuple):
            agree = np.allclose(r_nb[0], r_np[0], atol=1e-10)
        else:
            agree = np.array_equal(np.asarray(r_nb), np.asarray(r_np))
        t_nb = best_of(lambda: nb(*args), a.repeat)
        t_np = best_of(lambda: npf(*args), a.repeat)
        print(f"{name:<16}{n:>8}{t_nb:>12.5f}{t_np:>12.5f}{t_np / t_nb:>9.1f}  {agree}")


if __name__ == "__main__":
    main()
