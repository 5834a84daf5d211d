"""Time the numba kernels against their numpy counterparts.

    python benchmarks/bench_kernels.py --n 18 --repeat 5

Both variants are called directly, so the PICARDM0N_NO_JIT flag does not
matter here. Compilation happens in a warm-up call that is not timed.
"""
import argparse
import time

import numpy as np

from picardm0n import kernels
from picardm0n._jit import HAVE_NUMBA


def best_of(fn, repeat):
    fn()  # warm-up / compile
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n):
    reps = kernels.canonical_reps_np(n)
    src = np.random.default_rng(0).permutation(n).astype(np.int64)
    dense = np.random.default_rng(1).integers(-1, 2, size=(min(4 * n * n, 600), min(8 * n, 300))).astype(np.int64)
    inside, outside = 0b0101, 0b1010
    p = kernels.DEFAULT_PRIME
    start, length = 1, n // 2
    return [
        ("canonical_reps", lambda: kernels.canonical_reps_np(n), lambda: kernels.canonical_reps_nb(n)),
        ("popcount", lambda: kernels.popcount_np(reps), lambda: kernels.popcount_nb(reps)),
        ("cyclic_runs", lambda: kernels.cyclic_runs_np(reps, n), lambda: kernels.cyclic_runs_nb(reps, n)),
        ("canonical_side", lambda: kernels.canonical_side_np(reps, n), lambda: kernels.canonical_side_nb(reps, n)),
        ("permute_bits", lambda: kernels.permute_bits_np(reps, src), lambda: kernels.permute_bits_nb(reps, src)),
        ("segment_parity", lambda: kernels.segment_parity_np(reps, start, length, n),
         lambda: kernels.segment_parity_nb(reps, start, length, n)),
        ("constrained_subsets", lambda: kernels.constrained_subsets_np(n, inside, outside),
         lambda: kernels.constrained_subsets_nb(n, np.int64(inside), np.int64(outside))),
        (f"rank_mod_p {dense.shape[0]}x{dense.shape[1]}", lambda: kernels.rank_mod_p_np(dense, p),
         lambda: kernels.rank_mod_p_nb(dense, np.int64(p))),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=18)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba is not installed; the *_nb kernels run as plain Python")
    print(f"n={args.n}, {2 ** (args.n - 1) - 1 - args.n} divisor masks, best of {args.repeat}")
    print(f"{'kernel':<28}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, f_np, f_nb in cases(args.n):
        t_np = best_of(f_np, args.repeat)
        t_nb = best_of(f_nb, args.repeat)
        print(f"{name:<28}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
