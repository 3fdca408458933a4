#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Two views:
  * kernel micro-benchmarks, calling both implementations in-process
  * end-to-end census wall time, one subprocess per backend so the
    BCKCODES_BACKEND selection is exercised exactly as users hit it

Usage:
  python benchmarks/bench_backends.py [--census-n 7] [--repeat 200]
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from bckcodes import _kernels as K
from bckcodes.codegen import _bits_from_indices, _matrices_from_bits


def census_tables(n: int, limit: int) -> list[np.ndarray]:
    """Unique order tables of the census family at size n."""
    free = (n - 1) * (n - 2) // 2
    count = min(1 << free, limit)
    bits = _bits_from_indices(np.arange(count, dtype=np.uint64), free)
    mats = _matrices_from_bits(n, bits)
    leq = (mats[:, None, :, :] <= mats[:, :, None, :]).all(axis=3)
    idx = np.arange(n, dtype=np.int64)
    uniq = np.unique(leq.reshape(count, n * n), axis=0)
    return [np.where(u.reshape(n, n), np.int64(0), idx[:, None]) for u in uniq]


def time_call(fn, *args, repeat: int) -> float:
    fn(*args)  # warmup (JIT compile on the numba path)
    start = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - start) / repeat


def bench_kernels(repeat: int) -> None:
    backends = [b for b in ("numpy", "numba") if b in K.IMPLEMENTATIONS]
    rng = np.random.default_rng(0)
    n = 12
    table = np.where(
        np.tril(np.ones((n, n), dtype=bool)) | (rng.random((n, n)) < 0.3),
        0,
        np.arange(n, dtype=np.int64)[:, None],
    )
    table[0, :] = 0
    workloads = [
        ("bck_axiom_scan (n=12)", "bck_axiom_scan", (table, 0)),
        ("hilbert_axiom_scan (n=12)", "hilbert_axiom_scan", (table.T.copy(), 0)),
        ("bck_property_scan (n=12)", "bck_property_scan", (table, 0)),
    ]
    perms, invs = K.theta_fixing_perms(7)
    tables7 = census_tables(7, limit=512)
    print(f"{'kernel':<34} " + " ".join(f"{b:>12}" for b in backends) + "   speedup")
    for title, name, args in workloads:
        times = [time_call(K.IMPLEMENTATIONS[b][name], *args, repeat=repeat) for b in backends]
        _print_row(title, backends, times)

    def canon_all(impl):
        for t in tables7:
            impl(t, perms, invs)

    times = []
    for b in backends:
        impl = K.IMPLEMENTATIONS[b]["canonical_table"]
        canon_all(impl)
        start = time.perf_counter()
        canon_all(impl)
        times.append(time.perf_counter() - start)
    _print_row(f"canonical_table x{len(tables7)} (n=7)", backends, times)


def _print_row(title: str, backends, times) -> None:
    cells = " ".join(f"{t * 1e3:>10.3f}ms" for t in times)
    speedup = times[0] / times[-1] if len(times) > 1 and times[-1] > 0 else 1.0
    print(f"{title:<34} {cells}   {speedup:6.1f}x")


def bench_census(n: int) -> None:
    backends = [b for b in ("numpy", "numba") if b in K.IMPLEMENTATIONS]
    print(f"\ncensus --n {n} end to end (subprocess per backend):")
    outputs = {}
    for backend in backends:
        env = dict(os.environ, BCKCODES_BACKEND=backend)
        start = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "bckcodes.cli", "census", "--n", str(n)],
            capture_output=True,
            text=True,
            env=env,
        )
        elapsed = time.perf_counter() - start
        if proc.returncode != 0:
            raise RuntimeError(f"census failed under {backend}: {proc.stderr}")
        outputs[backend] = proc.stdout
        summary = proc.stdout.strip().splitlines()[-1]
        print(f"  {backend:>6}: {elapsed:6.2f}s   {summary}")
    if len(set(outputs.values())) != 1:
        raise RuntimeError("backends disagree on census output")
    print("  outputs byte-identical across backends")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--census-n", type=int, default=7)
    parser.add_argument("--repeat", type=int, default=200)
    args = parser.parse_args()
    print(f"active backend: {K.BACKEND} (set BCKCODES_BACKEND=numpy|numba to override)\n")
    bench_kernels(args.repeat)
    bench_census(args.census_n)


if __name__ == "__main__":
    main()
