"""Benchmark the compiled rain/snow kernels against their pure-Python
twins, verifying bit-identity along the way.

Usage: python benchmarks/bench_masks.py [--repeats N]
"""

import argparse
import time

import numpy as np

from occlubench import _speedups
from occlubench.masks import _python

CASES = [
    ("rain", 224, 224, 0.25),
    ("rain", 224, 224, 0.75),
    ("rain", 448, 448, 0.50),
    ("snow", 224, 224, 0.25),
    ("snow", 224, 224, 0.75),
    ("snow", 448, 448, 0.50),
]


def run_kernel(module, name, w, h, target, seed):
    if name == "rain":
        return module.rain_mask(w, h, target, seed, 5.0, 0.10, 0.25, 2)
    return module.snow_mask(w, h, target, seed, 1, 3)


def bench(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    native = _speedups._native
    if native is None:
        raise SystemExit("compiled kernels not built; nothing to compare")

    print(f"{'kernel':<6} {'canvas':<9} {'frac':>5} {'python':>10} {'native':>10} {'speedup':>8}")
    for name, w, h, frac in CASES:
        target = int(round(frac * w * h))
        seed = 12345
        t_native, m_native = bench(lambda: run_kernel(native, name, w, h, target, seed), args.repeats)
        t_python, m_python = bench(lambda: run_kernel(_python, name, w, h, target, seed), args.repeats)
        assert np.array_equal(m_native, m_python), "backend outputs diverged"
        print(
            f"{name:<6} {w}x{h:<5} {frac:>5.2f} {t_python * 1e3:>8.1f}ms "
            f"{t_native * 1e3:>8.1f}ms {t_python / t_native:>7.1f}x"
        )


if __name__ == "__main__":
    main()
