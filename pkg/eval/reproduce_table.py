"""First-digit table reproduction across seeds.

This module samples Y = 10**X for a preset density under several seeds,
compares first-digit frequencies with the density's own digit law and the
exact Benford law, and saves the results as JSON.
"""

import json
from datetime import datetime
from pathlib import Path
from typing import Any

import numpy as np

from benford.analyze import empirical_digit_distribution, fit_report
from benford.density import mod1_project
from benford.digits import benford_distribution, distribution_from_mod1
from benford.presets import get_preset
from benford.report import ReportFormatter
from benford.sample import sample_y

SeedResult = dict[str, Any]

TOLERANCE = 0.005
MIN_P_VALUE = 0.001


def reproduce_seed(preset: str, seed: int, count: int) -> SeedResult:
    """Run one seeded table experiment.

    Args:
        preset: Density preset name.
        seed: Generator seed.
        count: Number of samples.

    Returns:
        Frequencies, fit statistics and pass/fail against the acceptance band.
    """
    g = get_preset(preset)
    theoretical = distribution_from_mod1(mod1_project(g), 1)
    empirical = empirical_digit_distribution(sample_y(g, count, seed, source=preset), 1)
    report = fit_report(empirical, theoretical)
    benford_dev = max(
        abs(e - b)
        for e, b in zip(empirical.probabilities, benford_distribution(1).probabilities, strict=True)
    )
    return {
        "seed": seed,
        "frequencies": list(empirical.probabilities),
        "chi_square": report.chi_square,
        "p_value": report.p_value,
        "max_abs_dev": report.max_abs_dev,
        "max_benford_dev": benford_dev,
        "passed": report.max_abs_dev <= TOLERANCE and report.p_value > MIN_P_VALUE,
    }


def run_reproduction(preset: str = "sine1", seeds: int = 10, count: int = 100_000) -> None:
    """Reproduce the table for consecutive seeds and save results.

    Args:
        preset: Density preset name.
        seeds: Number of seeds, starting at 42.
        count: Samples per seed.
    """
    print("=== First-Digit Table Reproduction ===\n")
    print(f"Preset: {preset}, samples per seed: {count}, seeds: {seeds}\n")

    g = get_preset(preset)
    theoretical = distribution_from_mod1(mod1_project(g), 1)
    formatter = ReportFormatter()

    results = []
    for seed in range(42, 42 + seeds):
        result = reproduce_seed(preset, seed, count)
        results.append(result)
        mark = "✓" if result["passed"] else "✗"
        print(
            f"  {mark} seed {seed}: max dev {result['max_abs_dev']:.4f}, "
            f"chi-square {result['chi_square']:.2f}, p {result['p_value']:.3f}"
        )

    frequencies = np.array([r["frequencies"] for r in results])
    p_values = np.array([r["p_value"] for r in results])
    first = results[0]
    empirical = empirical_digit_distribution(
        sample_y(g, count, first["seed"], source=preset), 1
    )

    print("\n=== Table (first seed) ===")
    print(formatter.table(theoretical, empirical))
    print(f"Passed: {sum(r['passed'] for r in results)}/{len(results)}")
    print(f"p-value p5/p50: {np.percentile(p_values, 5):.3f} / {np.percentile(p_values, 50):.3f}")

    results_dir = Path(__file__).parent / "results"
    results_dir.mkdir(exist_ok=True)
    results_path = results_dir / "table_results.json"

    with open(results_path, "w", encoding="utf-8") as f:
        json.dump(
            {
                "reproduced_at": datetime.now().isoformat(),
                "preset": preset,
                "count": count,
                "theoretical": list(theoretical.probabilities),
                "mean_frequencies": frequencies.mean(axis=0).tolist(),
                "std_frequencies": frequencies.std(axis=0).tolist(),
                "results": results,
            },
            f,
            indent=2,
        )

    print(f"\nResults saved to: {results_path}")


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="Reproduce the first-digit table")
    parser.add_argument("--preset", default="sine1", help="Density preset (default: sine1)")
    parser.add_argument("--seeds", type=int, default=10, help="Number of seeds (default: 10)")
    parser.add_argument(
        "--count", type=int, default=100_000, help="Samples per seed (default: 100000)"
    )

    args = parser.parse_args()

    run_reproduction(args.preset, args.seeds, args.count)
