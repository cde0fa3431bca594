"""Compare the compiled Levenshtein kernel against the pure-Python fallback.

Usage: python3 benchmarks/bench_levenshtein.py [--sizes 50,200,1000] [--repeat 5]
"""

import argparse
import random
import statistics
import time

from postdraft import analytics
from postdraft.analytics._fallback import levenshtein_codepoints as py_kernel

try:
    from postdraft.analytics._speedups import levenshtein_codepoints as c_kernel
except ImportError:
    c_kernel = None


def make_pair(n: int, rng: random.Random) -> tuple[str, str]:
    alphabet = "abcdefghij "
    a = "".join(rng.choice(alphabet) for _ in range(n))
    # derive b from a with ~20% random edits so distances are non-trivial
    chars = list(a)
    for _ in range(n // 5):
        i = rng.randrange(len(chars))
        chars[i] = rng.choice(alphabet)
    return a, "".join(chars)


def timeit(fn, a, b, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(a, b)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="50,200,1000,4000")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = random.Random(1)

    print(f"active backend: {analytics.LEVENSHTEIN_BACKEND}")
    print(f"{'n':>6}  {'python (ms)':>12}  {'cython (ms)':>12}  {'speedup':>8}")
    for n in sizes:
        a, b = make_pair(n, rng)
        py_ms = timeit(py_kernel, a, b, args.repeat) * 1000
        if c_kernel is None:
            print(f"{n:>6}  {py_ms:>12.3f}  {'n/a':>12}  {'n/a':>8}")
            continue
        assert c_kernel(a, b) == py_kernel(a, b)
        c_ms = timeit(c_kernel, a, b, args.repeat) * 1000
        print(f"{n:>6}  {py_ms:>12.3f}  {c_ms:>12.3f}  {py_ms / c_ms:>7.1f}x")


if __name__ == "__main__":
    main()
