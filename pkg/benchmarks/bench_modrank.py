"""Compare the numba and numpy F_p rank kernels.

Run ``python benchmarks/bench_modrank.py [--sizes 100 200 400] [--repeat 3]``.
Besides dense random matrices, it times a real Chevalley-Eilenberg block
(the middle degree of a random 12-dimensional algebra) reduced mod p.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from nilcoh._kernels import PRIMES, rank_mod_p_jit, rank_mod_p_numpy, reduce_entries
from nilcoh.catalog import random_nilpotent_complex
from nilcoh.differentials import chevalley_d


def best_of(fn, a, p, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(a, p)
        times.append(time.perf_counter() - t0)
    return result, min(times)


def ce_block(dim, seed, degree):
    g = random_nilpotent_complex(dim, seed).algebra
    m = chevalley_d(g).blocks[degree]
    return reduce_entries((m.rows, m.cols), m.nonzero_entries(), PRIMES[0])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if rank_mod_p_jit is None:
        raise SystemExit("numba is not installed")
    p = PRIMES[0]
    rng = np.random.default_rng(args.seed)
    rank_mod_p_jit(np.eye(2, dtype=np.int64), p)  # compile outside the timings

    cases = []
    for n in args.sizes:
        a = rng.integers(-5, 6, size=(n, n), dtype=np.int64)
        a[:, n // 2] = a[:, 0] + a[:, 1]  # force a rank defect
        cases.append(("dense %dx%d" % (n, n), a))
    block = ce_block(12, args.seed, 5)
    cases.append(("CE d5 of random dim 12 (%dx%d)" % block.shape, block))

    print("%-36s %6s %12s %12s %8s" % ("matrix", "rank", "numba [s]", "numpy [s]", "speedup"))
    for label, a in cases:
        r_jit, t_jit = best_of(rank_mod_p_jit, a, p, args.repeat)
        r_np, t_np = best_of(rank_mod_p_numpy, a, p, args.repeat)
        if r_jit != r_np:
            raise SystemExit("kernels disagree on %s: %d vs %d" % (label, r_jit, r_np))
        print("%-36s %6d %12.4f %12.4f %7.1fx" % (label, r_jit, t_jit, t_np, t_np / t_jit))


if __name__ == "__main__":
    main()
