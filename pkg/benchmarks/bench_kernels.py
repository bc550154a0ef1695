"""Time the compiled Bareiss kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py --sizes 8 16 32 --repeat 5
"""

import argparse
import random
import sys
import timeit

from gitplane.algebra import _kernels_py

try:
    from gitplane.algebra import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def random_rows(rng, n, bits, rank=None):
    hi = (1 << bits) - 1
    rows = [[rng.randint(-hi, hi) for _ in range(n)] for _ in range(n)]
    if rank is not None and rank < n:
        # rows past `rank` are combinations of the first ones
        for i in range(rank, n):
            cs = [rng.randint(-3, 3) for _ in range(rank)]
            rows[i] = [sum(c * rows[k][j] for k, c in enumerate(cs)) for j in range(n)]
    return rows


def best_of(fn, repeat):
    number = 1
    while True:
        t = timeit.timeit(fn, number=number)
        if t > 0.05 or number >= 1 << 16:
            break
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32])
    ap.add_argument("--bits", type=int, nargs="+", default=[4, 64],
                    help="entry bit sizes; large ones force the object path")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _kernels_c is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`",
              file=sys.stderr)
        return 1

    rng = random.Random(args.seed)
    print(f"{'op':<5} {'n':>4} {'bits':>5} {'python ms':>11} {'cython ms':>11} {'speedup':>8}")
    for bits in args.bits:
        for n in args.sizes:
            full = random_rows(rng, n, bits)
            deficient = random_rows(rng, n, bits, rank=max(1, n * 2 // 3))
            for op, rows in (("det", full), ("rank", deficient)):
                py, cy = getattr(_kernels_py, op), getattr(_kernels_c, op)
                assert py(rows) == cy(rows)
                tp = best_of(lambda: py(rows), args.repeat)
                tc = best_of(lambda: cy(rows), args.repeat)
                print(f"{op:<5} {n:>4} {bits:>5} {tp * 1e3:>11.3f} {tc * 1e3:>11.3f} "
                      f"{tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
