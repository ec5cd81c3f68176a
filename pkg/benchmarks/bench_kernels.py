"""Benchmark the numba and numpy kernel backends on matched workloads.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --size 384 --samples 20000000

Each kernel is timed on both backends (numba is warmed once so JIT
compilation never lands in a measurement) and the answers are compared;
a disagreement aborts the run, since identical results are the whole
point of having two backends.
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from nearfields.kernels import (
    HAS_NUMBA,
    assoc_witness,
    assoc_witness_sampled,
    hom_left_distrib_witness,
    left_distrib_witness,
    left_distrib_witness_sampled,
    right_distrib_witness,
)
from nearfields.finite import make_field, addition_from_exponent, native_addition


def _cyclic_tables(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Group and ring tables mod m, so the exhaustive scans run to the end."""
    i = np.arange(m, dtype=np.int64)
    add = (i[:, None] + i[None, :]) % m
    mul = (i[:, None] * i[None, :]) % m
    return add, mul


def _time(fn, repeats: int) -> float:
    xs = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        xs.append(time.perf_counter() - t0)
    return statistics.median(xs)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=256, help="table side for exhaustive scans")
    ap.add_argument("--samples", type=int, default=10**7, help="triples for sampled scans")
    ap.add_argument("--repeats", type=int, default=5, help="timed repeats, median reported")
    args = ap.parse_args()

    if not HAS_NUMBA:
        print("numba is not importable; only the numpy column will be meaningful")

    add, mul = _cyclic_tables(args.size)
    rng = np.random.default_rng(0)
    F9 = make_field(3, 2)
    box5 = addition_from_exponent(F9, 5).table
    ii, jj, kk = (rng.integers(0, 9, size=args.samples) for _ in range(3))
    maps = rng.integers(0, 9, size=(96, 9))
    nat9 = native_addition(F9).table

    cases = [
        (f"assoc exhaustive m={args.size}", lambda b: assoc_witness(add, b)),
        (f"left distrib exhaustive m={args.size}",
         lambda b: left_distrib_witness(mul, add, b)),
        (f"right distrib exhaustive m={args.size}",
         lambda b: right_distrib_witness(mul, add, b)),
        (f"assoc sampled n={args.samples:.0e}",
         lambda b: assoc_witness_sampled(box5, ii, jj, kk, b)),
        (f"left distrib sampled n={args.samples:.0e}",
         lambda b: left_distrib_witness_sampled(F9.mul, box5, ii, jj, kk, b)),
        ("hom distrib 96 maps on 9 points",
         lambda b: hom_left_distrib_witness(maps, nat9, box5, b)),
    ]

    backends = ["numba", "numpy"] if HAS_NUMBA else ["numpy"]
    for b in backends:  # warm JIT and page caches outside the timings
        for _, fn in cases:
            fn(b)

    width = max(len(name) for name, _ in cases)
    print(f"{'case':<{width}}  " + "".join(f"{b:>12}" for b in backends) + "   speedup")
    for name, fn in cases:
        results = {b: fn(b) for b in backends}
        if len(set(map(str, results.values()))) != 1:
            raise SystemExit(f"backends disagree on {name}: {results}")
        times = {b: _time(lambda: fn(b), args.repeats) for b in backends}
        ratio = times["numpy"] / times[backends[0]] if len(backends) == 2 else 1.0
        row = "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
        print(f"{name:<{width}}  {row}   {ratio:>6.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
