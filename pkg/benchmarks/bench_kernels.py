"""Compare the compiled and pure-Python modular kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from overres import kernels
from overres import groupgen as gg
from overres import liealgebra as la
from overres import repmod as rm


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def cases(rng):
    p = 7
    a = rng.integers(0, p, (60, 60), dtype=np.int64)
    b = rng.integers(0, p, (60, 60), dtype=np.int64)
    stack = rng.integers(0, p, (400, 8, 8), dtype=np.int64)
    small = rng.integers(0, p, (8, 8), dtype=np.int64)
    wide = rng.integers(0, p, (40, 80), dtype=np.int64)
    return {
        "matmul 60x60": lambda k: k.matmul_mod(a, b, p),
        "batch 400x8x8": lambda k: k.batch_matmul_mod(stack, small, p),
        "rref 40x80": lambda k: k.rref_mod(wide, p),
    }


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    found = kernels.backends()
    print(f"selected backend: {kernels.BACKEND}; available: {', '.join(found)}")
    for name, fn in cases(np.random.default_rng(0)).items():
        row = [f"{name:16}"]
        for backend, mod in found.items():
            row.append(f"{backend} {best_of(lambda: fn(mod), args.repeat) * 1e3:8.2f} ms")
        print("  ".join(row))
    rep = rm.natural_rep(la.chevalley_algebra("A1", 7))
    secs = best_of(lambda: gg.pseudo_chevalley_group(rep), args.repeat)
    print(f"{'SL2(F_7) BFS':16}  {kernels.BACKEND} {secs * 1e3:8.2f} ms")


if __name__ == "__main__":
    main()
