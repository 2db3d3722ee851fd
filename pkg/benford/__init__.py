"""Significant-digit distributions via the mod 1 map.

This package provides exact Benford block probabilities, piecewise densities
of X = log10(Y) with their projection onto [0, 1), construction of n-digit
Benford densities, seeded sampling, and goodness-of-fit and invariance
experiments.
"""

from benford.analyze import (
    base_digit_distribution,
    empirical_digit_distribution,
    fit_report,
    ingest_dataset,
    scale_invariance_report,
    translation_invariance_report,
)
from benford.construct import benford_partition, construct_n_digit, verify_n_digit
from benford.density import (
    density_of_Y_from_g,
    evaluate,
    integrate,
    mod1_project,
    rebase_log_density,
    translate_mod1,
)
from benford.digits import (
    benford_block_prob,
    digit_prob_from_mod1,
    extract_digits,
    full_digit_distribution,
)
from benford.sample import sample_x, sample_y

__all__ = [
    "base_digit_distribution",
    "benford_block_prob",
    "benford_partition",
    "construct_n_digit",
    "density_of_Y_from_g",
    "digit_prob_from_mod1",
    "empirical_digit_distribution",
    "evaluate",
    "extract_digits",
    "fit_report",
    "full_digit_distribution",
    "ingest_dataset",
    "integrate",
    "mod1_project",
    "rebase_log_density",
    "sample_x",
    "sample_y",
    "scale_invariance_report",
    "translate_mod1",
    "translation_invariance_report",
    "verify_n_digit",
]
