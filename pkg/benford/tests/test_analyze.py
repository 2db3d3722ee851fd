"""Tests for analyze module."""

import math

import numpy as np
import pytest

from benford.analyze import (
    DatasetError,
    FitError,
    base_digit_distribution,
    empirical_digit_distribution,
    fit_report,
    histogram,
    ingest_dataset,
    scale_invariance_report,
    total_variation,
    translation_invariance_report,
)
from benford.density import mod1_project, uniform
from benford.digits import BlockLimitError, benford_distribution, enumerate_blocks, full_digit_distribution
from benford.schemas import DigitBlock, DigitDistribution, SampleSet

SAMPLED_ROW = [0.3006, 0.1775, 0.1258, 0.0957, 0.0783, 0.0671, 0.0572, 0.0516, 0.0463]
SCALE_GRID = [10 ** (k / 100) for k in range(100)]


def frequencies(counts, n=1, base=10):
    """Empirical distribution from raw block counts."""
    total = sum(counts)
    return DigitDistribution(
        n=n,
        base=base,
        blocks=enumerate_blocks(n, base),
        probabilities=tuple(c / total for c in counts),
        total_count=total,
    )


class TestEmpiricalDigitDistribution:
    """Tests for empirical block frequencies."""

    def test_direct_count(self):
        """Test counting first digits of a short list."""
        dist = empirical_digit_distribution([1.2, 2.3, 1.9, 9.9], 1)
        mapping = {block.label: p for block, p in dist.as_mapping().items() if p > 0}
        assert mapping == {"1": 0.5, "2": 0.25, "9": 0.25}
        assert dist.total_count == 4

    def test_two_digits(self):
        """Test the leading two-digit block of e."""
        dist = empirical_digit_distribution([2.718], 2)
        assert dist.probability(DigitBlock(digits=(2, 7))) == 1.0

    def test_accepts_sample_set(self):
        """Test accepts sample set."""
        samples = SampleSet(values=(0.031, 310.0, 4.2), count=3, source="test")
        dist = empirical_digit_distribution(samples, 1)
        assert dist.probability(DigitBlock(digits=(3,))) == pytest.approx(2 / 3)

    def test_frequencies_sum_to_one(self):
        """Test frequencies sum to one."""
        values = np.power(10.0, np.random.default_rng(0).uniform(-3, 3, 1234))
        dist = empirical_digit_distribution(values.tolist(), 2)
        assert math.fsum(dist.probabilities) == pytest.approx(1.0, abs=1e-12)

    def test_nonpositive_value_names_row(self):
        """Test nonpositive value names row."""
        with pytest.raises(DatasetError, match="Row 3"):
            empirical_digit_distribution([1.0, 2.0, 0.0], 1)

    def test_empty(self):
        """Test that an empty sample is rejected."""
        with pytest.raises(DatasetError):
            empirical_digit_distribution([], 1)

    def test_base_two(self):
        """Test two-digit binary blocks."""
        dist = empirical_digit_distribution([5.0, 6.0, 7.0, 4.0], 2, base=2)
        assert [b.label for b in dist.blocks] == ["10", "11"]
        assert dist.probabilities == (0.5, 0.5)

    def test_block_length_limit(self):
        """Test that over-long blocks are refused."""
        with pytest.raises(BlockLimitError):
            empirical_digit_distribution([1.5, 2.5], 7)

    def test_block_count_limit(self):
        """Test that huge base-b enumerations are refused."""
        with pytest.raises(BlockLimitError, match="exceed"):
            empirical_digit_distribution([1.5, 2.5], 2, base=1000)


class TestFitReport:
    """Tests for the chi-square goodness-of-fit report."""

    def test_perfect_fit(self):
        """Test perfect fit."""
        law = benford_distribution(1)
        empirical = law.model_copy(update={"total_count": 1000})
        report = fit_report(empirical, law)
        assert report.chi_square == 0.0
        assert report.p_value == 1.0
        assert report.mad == 0.0
        assert report.degrees_of_freedom == 8

    def test_independent_sample_row(self):
        """Test fit of an independently sampled first-digit row."""
        counts = [round(100_000 * p) for p in SAMPLED_ROW]
        report = fit_report(frequencies(counts), benford_distribution(1))
        assert 5.0 < report.chi_square < 8.0
        assert report.p_value > 0.05
        assert report.max_abs_dev < 0.002

    def test_single_cell_contribution(self):
        """Test single cell contribution."""
        even = DigitDistribution(
            n=2, base=2, blocks=enumerate_blocks(2, 2), probabilities=(0.5, 0.5)
        )
        report = fit_report(frequencies([120, 80], n=2, base=2), even)
        # Each cell contributes (120 - 100)**2 / 100 = 4.
        assert report.chi_square == pytest.approx(8.0, abs=1e-12)
        assert report.p_value == pytest.approx(math.erfc(math.sqrt(4.0)), abs=1e-10)

    def test_perturbing_a_cell_increases_chi_square(self):
        """Test perturbing a cell increases chi square."""
        law = benford_distribution(1)
        counts = [round(10_000 * p) for p in law.probabilities]
        base = fit_report(frequencies(counts), law).chi_square
        counts[4] += 40
        counts[5] -= 40
        assert fit_report(frequencies(counts), law).chi_square > base

    def test_mismatched_block_lengths(self):
        """Test mismatched block lengths."""
        with pytest.raises(FitError):
            fit_report(frequencies([1] * 90, n=2), benford_distribution(1))

    def test_missing_sample_size(self):
        """Test missing sample size."""
        law = benford_distribution(1)
        with pytest.raises(FitError, match="sample size"):
            fit_report(law, law)

    def test_zero_expected_count(self):
        """Test zero expected count."""
        degenerate = DigitDistribution(
            n=2, base=2, blocks=enumerate_blocks(2, 2), probabilities=(1.0, 0.0)
        )
        with pytest.raises(FitError, match="zero"):
            fit_report(frequencies([3, 1], n=2, base=2), degenerate)


class TestTotalVariation:
    """Tests for total variation distance."""

    def test_identity(self):
        """Test distance from a distribution to itself."""
        law = benford_distribution(2)
        assert total_variation(law, law) == 0.0

    def test_disjoint_support(self):
        """Test disjoint support."""
        a = DigitDistribution(n=2, base=2, blocks=enumerate_blocks(2, 2), probabilities=(1.0, 0.0))
        b = DigitDistribution(n=2, base=2, blocks=enumerate_blocks(2, 2), probabilities=(0.0, 1.0))
        assert total_variation(a, b) == 1.0


class TestInvariance:
    """Tests for scale and translation experiments."""

    def test_uniform_is_scale_invariant(self, uniform_g):
        """Test uniform is scale invariant."""
        report = scale_invariance_report(uniform_g, SCALE_GRID, 1)
        assert report.kind == "scale"
        assert report.max_deviation <= 1e-12

    def test_sine_is_not_scale_invariant(self, sine1_g):
        """Test sine is not scale invariant."""
        report = scale_invariance_report(sine1_g, SCALE_GRID, 1)
        assert report.max_deviation > 0.01

    def test_identity_and_decade_scales(self, sine1_g):
        """Test identity and decade scales."""
        report = scale_invariance_report(sine1_g, [1.0, 10.0, 100.0], 1)
        np.testing.assert_allclose(report.deviations, 0.0, atol=1e-12)

    def test_scale_periodicity(self, sine1_g):
        """Test scale periodicity."""
        report = scale_invariance_report(sine1_g, [2.0, 20.0, 3.7, 0.37], 1)
        assert report.deviations[0] == pytest.approx(report.deviations[1], abs=1e-12)
        assert report.deviations[2] == pytest.approx(report.deviations[3], abs=1e-12)

    def test_shift_moves_a_digit_probability(self, sine1_dag, benford_first_digit):
        """Test shift moves a digit probability."""
        report = translation_invariance_report(sine1_dag, [0.3], 1)
        moved = report.distributions[0].probabilities
        assert max(abs(p - q) for p, q in zip(moved, benford_first_digit)) > 0.01

    def test_uniform_translation_grid(self, uniform_dag, benford_first_digit):
        """Test uniform translation grid."""
        report = translation_invariance_report(uniform_dag, [k / 100 for k in range(100)], 1)
        for dist in report.distributions:
            np.testing.assert_allclose(dist.probabilities, benford_first_digit, atol=1e-12)

    def test_shifts_reported_mod_one(self, sine1_dag):
        """Test shifts reported mod one."""
        report = translation_invariance_report(sine1_dag, [1.25, -0.5], 1)
        assert report.shifts == (0.25, 0.5)
        assert report.kind == "translation"

    def test_nonpositive_scale(self, sine1_g):
        """Test nonpositive scale."""
        with pytest.raises(ValueError):
            scale_invariance_report(sine1_g, [1.0, 0.0], 1)


class TestBaseDigitDistribution:
    """Tests for digit laws in other bases."""

    def test_base_ten(self, sine1_g):
        """Test that base ten matches the mod-1 law."""
        dist = base_digit_distribution(sine1_g, 10, 2)
        assert dist == full_digit_distribution(mod1_project(sine1_g), 2)

    def test_base_hundred(self):
        """Test the base-100 law of uniform g on [0, 2)."""
        dist = base_digit_distribution(uniform(0.0, 2.0), 100, 1)
        assert len(dist.blocks) == 99
        expected = [math.log(1 + 1 / d) / math.log(100) for d in range(1, 100)]
        np.testing.assert_allclose(dist.probabilities, expected, atol=1e-12)

    def test_base_two(self, sine1_g):
        """Test that every binary number starts with 1."""
        dist = base_digit_distribution(sine1_g, 2, 1)
        assert dist.probabilities == (pytest.approx(1.0, abs=1e-12),)

    def test_block_limit(self, uniform_g):
        """Test the block-count limit for large bases."""
        with pytest.raises(BlockLimitError):
            base_digit_distribution(uniform_g, 100, 3)


class TestIngestDataset:
    """Tests for reading external datasets."""

    def test_csv_column(self, tmp_path):
        """Test csv column."""
        path = tmp_path / "data.csv"
        path.write_text("v\n1.2\n2.3\n")
        samples = ingest_dataset(path, "v")
        assert samples.values == (1.2, 2.3)
        assert samples.seed is None
        assert samples.exclusion_count == 0

    def test_nonpositive_rows_excluded(self, tmp_path):
        """Test nonpositive rows excluded."""
        path = tmp_path / "data.csv"
        path.write_text("id,amount\na,10\nb,0\nc,-5\nd,3.5e2\n")
        samples = ingest_dataset(path, "amount")
        assert samples.values == (10.0, 350.0)
        assert samples.exclusion_count == 2
        assert [r.row for r in samples.rejected] == [3, 4]
        assert {r.reason for r in samples.rejected} == {"nonpositive"}

    def test_non_numeric_rows_excluded(self, tmp_path):
        """Test non numeric rows excluded."""
        path = tmp_path / "data.csv"
        path.write_text("amount\n12\nn/a\n\n7\n")
        samples = ingest_dataset(path)
        assert samples.values == (12.0, 7.0)
        assert [(r.row, r.reason) for r in samples.rejected] == [(3, "non_numeric")]

    def test_comma_decimal_rejected(self, tmp_path):
        """Test comma decimal rejected."""
        path = tmp_path / "data.txt"
        path.write_text("2.5\n1,5\n")
        samples = ingest_dataset(path)
        assert samples.values == (2.5,)
        assert samples.rejected[0].raw == "1,5"

    def test_plain_text(self, tmp_path):
        """Test whitespace-separated values with comments."""
        path = tmp_path / "data.txt"
        path.write_text("1.5 2.5\n  3e-4\n# note\n42\n")
        assert ingest_dataset(path).values == (1.5, 2.5, 3e-4, 42.0)

    def test_plain_text_several_numbers_per_line(self, tmp_path):
        """Test plain text with several numbers on every line."""
        path = tmp_path / "data.txt"
        path.write_text("1.5 2.5\n3.5 4.5\n")
        samples = ingest_dataset(path)
        assert samples.values == (1.5, 2.5, 3.5, 4.5)
        assert samples.rejected == ()

    def test_word_first_line_is_header(self, tmp_path):
        """Test that a non-numeric first line is a header."""
        path = tmp_path / "data.txt"
        path.write_text("amount\n3.5\n")
        assert ingest_dataset(path).values == (3.5,)

    def test_strict_names_row(self, tmp_path):
        """Test strict names row."""
        path = tmp_path / "data.txt"
        path.write_text("1.5\n2.5\n0\n")
        with pytest.raises(DatasetError, match="row 3"):
            ingest_dataset(path, strict=True)

    def test_missing_column(self, tmp_path):
        """Test missing column."""
        path = tmp_path / "data.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(DatasetError, match="no column 'c'"):
            ingest_dataset(path, "c")

    def test_no_usable_values(self, tmp_path):
        """Test no usable values."""
        path = tmp_path / "data.txt"
        path.write_text("0\n-1\n")
        with pytest.raises(DatasetError, match="no parseable"):
            ingest_dataset(path)

    def test_unreadable_file(self, tmp_path):
        """Test unreadable file."""
        with pytest.raises(DatasetError, match="Cannot read"):
            ingest_dataset(tmp_path / "missing.csv")


class TestHistogram:
    """Tests for equal-width bin counts."""

    def test_counts_and_tails(self):
        """Test counts and tails."""
        hist = histogram([1.0, 1.05, 9.99, 10.0, 0.5], bins=9, lo=1.0, hi=10.0)
        assert hist.counts[0] == 2
        assert hist.counts[8] == 1
        assert sum(hist.counts) == 3
        assert hist.underflow == 1
        assert hist.overflow == 1

    def test_default_bins(self, sine1_g):
        """Test default bins."""
        from benford.sample import sample_y

        hist = histogram(sample_y(sine1_g, 2000, seed=1))
        assert len(hist.counts) == 100
        assert len(hist.edges) == 101
        assert sum(hist.counts) == 2000
        assert hist.underflow == hist.overflow == 0

    def test_invalid_range(self):
        """Test invalid range."""
        with pytest.raises(ValueError):
            histogram([1.0], bins=10, lo=2.0, hi=1.0)
