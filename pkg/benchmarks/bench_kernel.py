#!/usr/bin/env python3
"""Benchmark: compiled search kernel vs the pure-Python fallback.

Times bulk word evaluation and the constant-depth fold on the shipped
corpus.  Run from the package root:

    python3 benchmarks/bench_kernel.py [--depth 16]
"""

from __future__ import annotations

import argparse
import time

from cantorkit import _kernel_py
from cantorkit.corpus import CORPUS, corpus_program
from cantorkit.vmcode import compile_def

try:
    from cantorkit import _kernel
except ImportError:
    _kernel = None


def time_backend(backend, code, depth, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        vals = backend.values_on_words(code, depth, (), 1_000_000)
        backend.least_constant_depth(vals, depth)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--depth", type=int, default=16)
    parser.add_argument("--names", nargs="*", default=None)
    args = parser.parse_args()

    program = corpus_program()
    names = args.names or [item.name for item in CORPUS[:8]]
    print(f"bulk evaluation of 2^{args.depth} padded words + modulus fold")
    print(f"{'functional':<12} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>9}")
    total_pure = total_fast = 0.0
    for name in names:
        code = compile_def(program[name])
        pure = time_backend(_kernel_py, code, args.depth)
        total_pure += pure
        if _kernel is None:
            print(f"{name:<12} {pure:>10.3f} {'n/a':>13} {'n/a':>9}")
            continue
        fast = time_backend(_kernel, code, args.depth)
        total_fast += fast
        print(f"{name:<12} {pure:>10.3f} {fast:>13.4f} {pure / fast:>8.1f}x")
    if _kernel is not None and total_fast:
        print(f"{'total':<12} {total_pure:>10.3f} {total_fast:>13.4f} "
              f"{total_pure / total_fast:>8.1f}x")
    else:
        print("compiled kernel unavailable; only the fallback was timed")


if __name__ == "__main__":
    main()
