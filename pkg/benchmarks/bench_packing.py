#!/usr/bin/env python3
"""Benchmark the first-fit scan backends against each other.

Runs the same seeded workloads through the pure-numpy fallback and the
compiled extension (when built) and prints per-workload timings plus the
overall speedup.  Usage:

    python benchmarks/bench_packing.py [--repeats N] [--seed S]
"""

import argparse
import statistics
import time

import numpy as np

from dwtm import AssociationScore, CanvasConfig, WeightTable, packing, plan_layout


def scan_workloads(seed):
    """Raw kernel calls: (name, occupancy grid, box height, box length)."""
    rng = np.random.default_rng(seed)
    cases = []
    for side, density, tag in [
        (64, 0.2, "64px sparse"),
        (128, 0.4, "128px medium"),
        (256, 0.6, "256px dense"),
        (512, 0.5, "512px dense"),
        (512, 0.97, "512px nearly full"),
    ]:
        occ = (rng.random((side, side)) < density).astype(np.uint8)
        h = int(rng.integers(4, side // 4))
        cases.append((tag, occ, h, h * 2))
    return cases


def plan_workloads(seed):
    """Whole-pipeline packing: weight tables of growing size."""
    rng = np.random.default_rng(seed)
    cases = []
    for k, side in [(8, 128), (30, 256), (60, 512)]:
        magnitudes = rng.dirichlet(np.ones(k))
        weights = WeightTable.from_scores(
            tuple(
                AssociationScore(f"f{i}", "pearson", float(m), float(m))
                for i, m in enumerate(magnitudes)
            )
        )
        chars = {f"f{i}": int(c) for i, c in enumerate(rng.integers(1, 13, size=k))}
        cases.append((f"plan {k} features @ {side}px", weights, chars, CanvasConfig(side, side)))
    return cases


def best_of(fn, repeats):
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return min(samples), statistics.median(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7, help="timing repeats per case")
    parser.add_argument("--seed", type=int, default=20240811, help="workload seed")
    args = parser.parse_args()

    names = sorted(packing.backends())
    if len(names) < 2:
        print(f"only {names} available; build the extension to compare backends")

    print(f"backends: {', '.join(names)}   repeats: {args.repeats}")
    header = f"{'workload':<28}" + "".join(f"{n + ' (ms)':>16}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    totals = {n: 0.0 for n in names}
    rows = []
    for tag, occ, h, length in scan_workloads(args.seed):
        times = {}
        results = {}
        for name in names:
            fn = packing._BACKENDS[name]
            results[name] = fn(occ, h, length)
            times[name], _ = best_of(lambda: fn(occ, h, length), args.repeats)
            totals[name] += times[name]
        assert len(set(results.values())) == 1, f"backends disagree on {tag}: {results}"
        rows.append((tag, times))

    before = packing.active_backend()
    try:
        for tag, weights, chars, canvas in plan_workloads(args.seed):
            times = {}
            results = {}
            for name in names:
                packing.use_backend(name)
                results[name] = plan_layout(weights, chars, canvas)
                times[name], _ = best_of(lambda: plan_layout(weights, chars, canvas), args.repeats)
                totals[name] += times[name]
            assert len(set(results.values())) == 1, f"layouts differ on {tag}"
            rows.append((tag, times))
    finally:
        packing.use_backend(before)

    for tag, times in rows:
        line = f"{tag:<28}" + "".join(f"{times[n] * 1e3:>16.3f}" for n in names)
        if "cython" in times and "python" in times:
            line += f"{times['python'] / times['cython']:>9.1f}x"
        print(line)

    print("-" * len(header))
    line = f"{'total':<28}" + "".join(f"{totals[n] * 1e3:>16.3f}" for n in names)
    if "cython" in totals and "python" in totals:
        line += f"{totals['python'] / totals['cython']:>9.1f}x"
    print(line)


if __name__ == "__main__":
    main()
