"""Compare the compiled kernel backend against the numpy fallback.

Times the three hot operations (feedback table construction, scoring all
1296 guesses, playing all 1296 games) on both backends and prints the
speedup. Run from the repo root:

    python benchmarks/benchmark_backends.py [--repeats N]
"""

import argparse
import time

import numpy as np

from mmind import kernels
from mmind.rules import MM46, all_pegs, feedback_index_lookup, parse_display
from mmind.weights_io import STANDARD_OPENING, make_policy


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_backend(backend, repeats):
    pegs = all_pegs(MM46)
    lut = feedback_index_lookup(MM46)
    table = backend.build_table(pegs, MM46.c, lut)
    remaining = np.arange(MM46.code_count, dtype=np.int64)
    opening = parse_display(STANDARD_OPENING).index

    staged_kind, staged_w = make_policy("staged:staged-paper").kernel_args()
    fixed_kind, fixed_w = make_policy("fixed:fixed-paper").kernel_args()

    return {
        "build_table": best_of(lambda: backend.build_table(pegs, MM46.c, lut), repeats),
        "guess_scores (1296 remaining)": best_of(
            lambda: backend.guess_scores(table, remaining, fixed_kind, fixed_w[0]),
            repeats,
        ),
        "play_all fixed-paper": best_of(
            lambda: backend.play_all(table, fixed_kind, fixed_w, -1, 10),
            repeats,
        ),
        "play_all staged-paper": best_of(
            lambda: backend.play_all(table, staged_kind, staged_w, opening, 10),
            repeats,
        ),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per operation (best is kept)")
    args = parser.parse_args()

    results = {}
    for name in ("python", "c"):
        try:
            backend = kernels.get_backend(name)
        except ImportError:
            print(f"backend {name!r} unavailable, skipping")
            continue
        results[name] = bench_backend(backend, args.repeats)

    ops = list(next(iter(results.values())))
    width = max(len(op) for op in ops)
    header = f"{'operation':<{width}}" + "".join(f"{n:>12}" for n in results)
    if len(results) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for op in ops:
        row = f"{op:<{width}}"
        row += "".join(f"{results[n][op] * 1e3:>10.2f}ms" for n in results)
        if len(results) == 2:
            row += f"{results['python'][op] / results['c'][op]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
