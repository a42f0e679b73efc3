"""Compares the compiled and pure-Python canonical-key kernels.

Run:  python3 benchmarks/bench_canonical.py
"""

import random
import time

from virtstring import _canonical_py
from virtstring.diagram import HEAD, TAIL

try:
    from virtstring import _canonical
except ImportError:
    _canonical = None


def random_inputs(count, n, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        slots = [(a, r) for a in range(n) for r in (TAIL, HEAD)]
        rng.shuffle(slots)
        out.append(
            (tuple(a for a, _ in slots), tuple(r for _, r in slots))
        )
    return out


def bench(kernel, inputs, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for arrows, roles in inputs:
            kernel.canonical_bytes(arrows, roles)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    print(f"{'n':>4} {'keys':>7} {'python':>10} {'cython':>10} {'speedup':>8}")
    for n in (4, 8, 12, 16):
        inputs = random_inputs(2000, n, seed=n)
        t_py = bench(_canonical_py, inputs)
        if _canonical is None:
            print(f"{n:>4} {len(inputs):>7} {t_py:>9.3f}s  (extension not built)")
            continue
        t_cy = bench(_canonical, inputs)
        for arrows, roles in inputs[:50]:
            assert _canonical.canonical_bytes(arrows, roles) == \
                _canonical_py.canonical_bytes(arrows, roles)
        print(f"{n:>4} {len(inputs):>7} {t_py:>9.3f}s {t_cy:>9.3f}s {t_py/t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
