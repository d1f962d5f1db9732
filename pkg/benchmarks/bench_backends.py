#!/usr/bin/env python3
"""Time the numba kernels against their pure-numpy twins.

Runs each hot kernel on the same synthetic inputs under both backends
and prints per-kernel timings plus the speedup. The numba column
includes a warm-up call so compilation is not measured.

    python benchmarks/bench_backends.py --edges 2000000
"""
import argparse
import time

import numpy as np

from edgesign._accel import numpy_kernels

try:
    from edgesign._accel import numba_kernels
except ImportError:
    numba_kernels = None


def best_of(fn, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=int, default=100_000)
    ap.add_argument("--edges", type=int, default=1_000_000)
    ap.add_argument("--epochs", type=int, default=3)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    n, m = args.nodes, args.edges
    src = rng.integers(0, n, m).astype(np.int64)
    dst = rng.integers(0, n, m).astype(np.int64)
    labels = np.where(rng.random(m) < 0.2, -1, 1).astype(np.int8)
    mask = rng.random(m) < 0.5
    scores = np.sort(rng.random(m) * 2)
    neg = rng.random(m) < 0.3
    x0, x1 = rng.random(m), rng.random(m)
    y = rng.choice([-1.0, 1.0], m)
    order = np.stack([rng.permutation(m) for _ in range(args.epochs)]).astype(np.int64)

    cases = [
        ("observed_counts", lambda k: k.observed_counts(src, dst, labels, mask, n)),
        ("component_labels", lambda k: k.component_labels(src, dst, n)),
        ("boundary_mistakes", lambda k: k.boundary_mistakes(scores, neg)),
        ("perceptron_train", lambda k: k.perceptron_train(x0, x1, y, order, 1.0)),
    ]

    print(f"nodes={n:,} edges={m:,} epochs={args.epochs} "
          f"(best of {args.repeats})")
    header = f"{'kernel':<20} {'numpy':>12} {'numba':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, call in cases:
        t_np, ref = best_of(lambda: call(numpy_kernels), args.repeats)
        if numba_kernels is None:
            print(f"{name:<20} {t_np * 1e3:>10.1f}ms {'n/a':>12} {'':>9}")
            continue
        call(numba_kernels)  # warm-up / compile
        t_nb, out = best_of(lambda: call(numba_kernels), args.repeats)
        if isinstance(ref, tuple):
            agree = all(np.array_equal(a, b) for a, b in zip(ref, out))
        else:
            agree = np.array_equal(ref, out)
        flag = "" if agree else "  MISMATCH!"
        print(f"{name:<20} {t_np * 1e3:>10.1f}ms {t_nb * 1e3:>10.1f}ms "
              f"{t_np / t_nb:>8.1f}x{flag}")


if __name__ == "__main__":
    main()
