"""Benchmark the compiled LP kernel against the pure-numpy fallback.

Times ``support_batch`` -- the hot path behind support functions, inclusion
checks, and net sweeps -- on random bounded H-polytopes at several
dimensions, and cross-checks that both backends return identical statuses
and matching objective values.

Usage:
    python benchmarks/bench_backends.py [--dims 3 10 40] [--rows 200] [--batch 200] [--seed 0]
"""

import argparse
import sys
import time

import numpy as np

from johngap import _simplex_py

try:
    from johngap import _simplex_c
except ImportError:
    _simplex_c = None


def random_problem(n, rows, batch, rng):
    """Bounded polytope (box plus random cuts) and a batch of directions."""
    extra = max(rows - 2 * n, 0)
    N = rng.standard_normal((extra, n))
    N /= np.linalg.norm(N, axis=1)[:, None]
    normals = np.vstack([np.eye(n), -np.eye(n), N])
    offsets = 0.5 + 1.5 * rng.random(normals.shape[0])
    D = rng.standard_normal((batch, n))
    D /= np.linalg.norm(D, axis=1)[:, None]
    return offsets, np.ascontiguousarray(normals.T), D


def time_backend(mod, offsets, normals_t, D, repeats):
    best = float("inf")
    vals = stats = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        vals, stats = mod.support_batch(offsets, normals_t, D)
        best = min(best, time.perf_counter() - t0)
    return best, vals, stats


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[3, 10, 40, 100])
    ap.add_argument("--rows", type=int, default=200)
    ap.add_argument("--batch", type=int, default=200)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _simplex_c is None:
        print("compiled kernel unavailable; timing the python fallback only")
    rng = np.random.default_rng(args.seed)
    header = f"{'dim':>5} {'rows':>6} {'batch':>6} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in args.dims:
        offsets, normals_t, D = random_problem(n, args.rows, args.batch, rng)
        t_py, v_py, s_py = time_backend(_simplex_py, offsets, normals_t, D, args.repeats)
        if _simplex_c is None:
            print(f"{n:>5} {len(offsets):>6} {args.batch:>6} {t_py:>11.4f}s {'-':>12} {'-':>9}")
            continue
        t_c, v_c, s_c = time_backend(_simplex_c, offsets, normals_t, D, args.repeats)
        if not np.array_equal(s_py, s_c) or np.abs(v_py - v_c).max() > 1e-7:
            print(f"dim {n}: backend results disagree", file=sys.stderr)
            return 1
        print(
            f"{n:>5} {len(offsets):>6} {args.batch:>6} "
            f"{t_py:>11.4f}s {t_c:>11.4f}s {t_py / t_c:>8.1f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
