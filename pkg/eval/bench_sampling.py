"""Runtime benchmarks for the table and invariance experiments.

This module times the seeded 100,000-sample table run and the 100-scale
invariance experiment, reporting percentiles against their runtime targets.
"""

import json
import time
from collections.abc import Callable
from datetime import datetime
from pathlib import Path
from typing import Any

import numpy as np

from benford.analyze import empirical_digit_distribution, fit_report, scale_invariance_report
from benford.density import mod1_project, uniform
from benford.digits import distribution_from_mod1
from benford.presets import sine1
from benford.sample import sample_y

BenchmarkResult = dict[str, Any]

TABLE_TARGET_S = 10.0
INVARIANCE_TARGET_S = 5.0
SCALES = [10 ** (k / 100) for k in range(100)]


def table_experiment(count: int, workers: int) -> None:
    """Sample, count first digits and fit against the density's law."""
    g = sine1()
    theoretical = distribution_from_mod1(mod1_project(g), 1)
    samples = sample_y(g, count, seed=42, workers=workers)
    fit_report(empirical_digit_distribution(samples, 1), theoretical)


def invariance_experiment() -> None:
    """Scale experiment for the uniform and sine densities."""
    for g in (uniform(), sine1()):
        scale_invariance_report(g, SCALES, 1)


def benchmark(name: str, run: Callable[[], None], iterations: int, target_s: float) -> BenchmarkResult:
    """Time repeated runs of one experiment.

    Args:
        name: Label for the experiment.
        run: Experiment to time.
        iterations: Number of timed runs.
        target_s: Runtime target in seconds.

    Returns:
        Percentile statistics in seconds.
    """
    print(f"Benchmarking: {name}")
    times = []
    for i in range(iterations):
        start = time.perf_counter()
        run()
        elapsed = time.perf_counter() - start
        times.append(elapsed)
        print(f"  [{i + 1}/{iterations}] {elapsed:.3f}s")

    p95 = float(np.percentile(times, 95))
    return {
        "experiment": name,
        "num_iterations": iterations,
        "seconds": {
            "p50": float(np.percentile(times, 50)),
            "p95": p95,
            "min": float(min(times)),
            "max": float(max(times)),
            "mean": float(np.mean(times)),
        },
        "target_s": target_s,
        "within_target": p95 < target_s,
    }


def run_benchmark(iterations: int = 5, count: int = 100_000, workers: int = 1) -> None:
    """Run both benchmarks and save results.

    Args:
        iterations: Timed runs per experiment.
        count: Samples in the table experiment.
        workers: Sampling worker threads.
    """
    print("=== Digit-Law Runtime Benchmark ===\n")
    results = [
        benchmark(
            f"table ({count} samples, {workers} workers)",
            lambda: table_experiment(count, workers),
            iterations,
            TABLE_TARGET_S,
        ),
        benchmark("invariance (100 scales)", invariance_experiment, iterations, INVARIANCE_TARGET_S),
    ]

    results_dir = Path(__file__).parent / "results"
    results_dir.mkdir(exist_ok=True)
    results_path = results_dir / "benchmark_results.json"

    with open(results_path, "w", encoding="utf-8") as f:
        json.dump(
            {
                "benchmarked_at": datetime.now().isoformat(),
                "num_iterations": iterations,
                "results": results,
            },
            f,
            indent=2,
        )

    print("\n=== Summary Table ===")
    print(f"{'Experiment':<40} {'p50':<10} {'p95':<10} {'Target':<10} {'OK':<4}")
    print("-" * 76)
    for result in results:
        seconds = result["seconds"]
        ok = "✓" if result["within_target"] else "✗"
        print(
            f"{result['experiment']:<40} "
            f"{seconds['p50']:<10.3f} "
            f"{seconds['p95']:<10.3f} "
            f"{result['target_s']:<10.1f} "
            f"{ok:<4}"
        )
    print(f"\nResults saved to: {results_path}")


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Benchmark digit-law experiments")
    parser.add_argument(
        "--iterations", type=int, default=5, help="Timed runs per experiment (default: 5)"
    )
    parser.add_argument(
        "--count", type=int, default=100_000, help="Samples in the table run (default: 100000)"
    )
    parser.add_argument("--workers", type=int, default=1, help="Sampling threads (default: 1)")

    args = parser.parse_args()

    run_benchmark(args.iterations, args.count, args.workers)
