"""Tests for digits module."""

import math
from decimal import Decimal

import numpy as np
import pytest
from pydantic import ValidationError

from benford.config import get_settings
from benford.digits import (
    BlockLimitError,
    DigitDomainError,
    benford_block_prob,
    benford_distribution,
    block_values,
    digit_prob_from_mod1,
    distribution_from_mod1,
    enumerate_blocks,
    extract_digits,
    full_digit_distribution,
    mantissa_log,
)
from benford.schemas import DigitBlock

TABLE_THEORETICAL = [0.3010, 0.1761, 0.1249, 0.0969, 0.0792, 0.0669, 0.0580, 0.0512, 0.0458]


def decimal_digits(y: float, n: int) -> tuple[int, ...]:
    """First n significant digits from the exact decimal expansion of a float."""
    digits = Decimal(y).as_tuple().digits
    return tuple(digits[:n]) + (0,) * max(0, n - len(digits))


class TestDigitBlock:
    """Tests for the DigitBlock model."""

    def test_leading_zero_rejected(self):
        """Test leading zero rejected."""
        with pytest.raises(ValidationError):
            DigitBlock(digits=(0, 1))

    def test_digit_out_of_range(self):
        """Test digit out of range."""
        with pytest.raises(ValidationError):
            DigitBlock(digits=(1, 10))

    def test_value_and_label(self):
        """Test value and label."""
        block = DigitBlock(digits=(8, 4, 7))
        assert block.value == 847
        assert block.length == 3
        assert str(block) == "847"

    def test_from_value(self):
        """Test from value."""
        assert DigitBlock.from_value(847, 3).digits == (8, 4, 7)
        assert DigitBlock.from_value(5, 3, base=2).digits == (1, 0, 1)

    def test_blocks_are_hashable(self):
        """Test blocks are hashable."""
        assert {DigitBlock(digits=(1,)): 1}[DigitBlock(digits=(1,))] == 1


class TestBenfordBlockProb:
    """Tests for exact Benford block probabilities."""

    def test_block_847(self):
        """Test the probability of the block 847."""
        p = benford_block_prob(DigitBlock(digits=(8, 4, 7)))
        assert p == pytest.approx(math.log10(848 / 847), abs=1e-12)
        assert round(p, 6) == 0.000512

    def test_first_digit_one(self):
        """Test first digit one."""
        assert benford_block_prob(DigitBlock(digits=(1,))) == pytest.approx(0.30103, abs=1e-5)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_sums_to_one(self, n):
        """Test sums to one."""
        total = math.fsum(benford_distribution(n).probabilities)
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_distribution_limits(self):
        """Test distribution limits."""
        with pytest.raises(BlockLimitError):
            benford_distribution(7)
        with pytest.raises(BlockLimitError, match="exceed"):
            benford_distribution(2, base=1000)

    def test_theoretical_row(self):
        """Test theoretical row."""
        dist = benford_distribution(1)
        assert [round(p, 4) for p in dist.probabilities] == TABLE_THEORETICAL

    def test_lexicographic_order(self):
        """Test lexicographic order."""
        blocks = enumerate_blocks(2)
        assert len(blocks) == 90
        assert blocks[0].digits == (1, 0)
        assert blocks[-1].digits == (9, 9)


class TestExtractDigits:
    """Tests for significant-digit extraction."""

    def test_e(self):
        """Test the leading digits of e."""
        assert extract_digits(2.718, 1).digits == (2,)
        assert extract_digits(2.718, 2).digits == (2, 7)

    def test_power_of_ten(self):
        """Test power of ten."""
        assert extract_digits(1.0, 3).digits == (1, 0, 0)
        assert extract_digits(1000.0, 4).digits == (1, 0, 0, 0)

    def test_just_below_power_of_ten(self):
        """Test just below power of ten."""
        assert extract_digits(0.00999999999999, 2).digits == (9, 9)
        assert extract_digits(999.9999999999999, 4).digits == (9, 9, 9, 9)

    def test_extreme_magnitudes(self):
        """Test extreme magnitudes."""
        assert extract_digits(5e-324, 1).digits == decimal_digits(5e-324, 1)
        assert extract_digits(1.7976931348623157e308, 3).digits == (1, 7, 9)

    def test_other_base(self):
        """Test other base."""
        assert extract_digits(5.0, 3, base=2).digits == (1, 0, 1)
        assert extract_digits(0.75, 2, base=2).digits == (1, 1)

    @pytest.mark.parametrize("y", [0.0, -2.5, math.nan, math.inf])
    def test_domain_error(self, y):
        """Test domain error."""
        with pytest.raises(DigitDomainError):
            extract_digits(y, 1)

    @pytest.mark.slow
    def test_agrees_with_decimal_expansion(self):
        """Test agrees with decimal expansion."""
        rng = np.random.default_rng(20240601)
        values = np.power(10.0, rng.uniform(-9.0, 9.0, 100_000))
        mismatches = [
            float(y)
            for y in values
            if extract_digits(float(y), 3).digits != decimal_digits(float(y), 3)
        ]
        assert mismatches == []

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_block_values_agree_with_decimal_expansion(self, n):
        """Test block values agree with decimal expansion."""
        rng = np.random.default_rng(n)
        values = np.power(10.0, rng.uniform(-12.0, 12.0, 20_000))
        values[:4] = [1.0, 10.0, 0.1, 999.9999999999999]
        expected = [int("".join(map(str, decimal_digits(float(y), n)))) for y in values]
        assert block_values(values, n).tolist() == expected

    def test_block_values_reject_nonpositive(self):
        """Test block values reject nonpositive."""
        with pytest.raises(DigitDomainError, match="Entry 1"):
            block_values([1.0, 0.0], 1)


class TestMantissaLog:
    """Tests for shared block boundaries."""

    def test_exact_ends(self):
        """Test mantissa logs at the ends of the block range."""
        assert mantissa_log(10, 2) == 0.0
        assert mantissa_log(100, 2) == 1.0
        assert mantissa_log(4, 1, base=4) == 1.0

    def test_interior(self):
        """Test an interior mantissa log."""
        assert mantissa_log(11, 2) == pytest.approx(math.log10(1.1), abs=1e-15)


class TestDigitProbFromMod1:
    """Tests for digit probabilities of a mod-1 density."""

    def test_uniform_matches_benford(self, uniform_dag):
        """Test uniform matches benford."""
        for n in (1, 2, 3):
            for block in enumerate_blocks(n):
                assert digit_prob_from_mod1(uniform_dag, block) == pytest.approx(
                    benford_block_prob(block), abs=1e-12
                )

    def test_sine_first_digits(self, sine1_dag):
        """Test sine first digits."""
        for d in range(1, 10):
            p = digit_prob_from_mod1(sine1_dag, DigitBlock(digits=(d,)))
            assert p == pytest.approx(math.log10(1 + 1 / d), abs=1e-12)

    def test_sine_block_10(self, sine1_dag):
        """Test the block 10 under the sine construction."""
        u = math.log10(1.1) / math.log10(2)
        expected = math.log10(2) * (1 - math.cos(math.pi * u)) / 2
        p = digit_prob_from_mod1(sine1_dag, DigitBlock(digits=(1, 0)))
        assert p == pytest.approx(expected, abs=1e-12)
        assert abs(p - math.log10(1.1)) > 0.01


class TestFullDigitDistribution:
    """Tests for whole block distributions."""

    def test_uniform_first_digit_row(self, uniform_dag):
        """Test uniform first digit row."""
        dist = full_digit_distribution(uniform_dag, 1)
        assert [round(p, 4) for p in dist.probabilities] == TABLE_THEORETICAL

    def test_uniform_two_digits(self, uniform_dag):
        """Test uniform two digits."""
        dist = full_digit_distribution(uniform_dag, 2)
        expected = benford_distribution(2)
        np.testing.assert_allclose(dist.probabilities, expected.probabilities, atol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_sums_to_one(self, sine1_dag, n):
        """Test sums to one."""
        dist = full_digit_distribution(sine1_dag, n)
        assert len(dist.blocks) == 9 * 10 ** (n - 1)
        assert math.fsum(dist.probabilities) == pytest.approx(1.0, abs=1e-9)

    def test_marginal_consistency(self, sine1_dag):
        """Test marginal consistency."""
        first = full_digit_distribution(sine1_dag, 1).probabilities
        second = full_digit_distribution(sine1_dag, 2).probabilities
        marginal = [math.fsum(second[10 * i : 10 * i + 10]) for i in range(9)]
        np.testing.assert_allclose(marginal, first, atol=1e-12)

    def test_sine_is_not_two_digit_benford(self, sine1_dag):
        """Test sine is not two digit benford."""
        dist = full_digit_distribution(sine1_dag, 2)
        expected = benford_distribution(2)
        tv = 0.5 * sum(abs(a - b) for a, b in zip(dist.probabilities, expected.probabilities))
        assert tv > 0

    def test_block_length_limit(self, uniform_dag):
        """Test block length limit."""
        with pytest.raises(BlockLimitError):
            full_digit_distribution(uniform_dag, 5)
        with pytest.raises(BlockLimitError):
            full_digit_distribution(uniform_dag, 0)

    def test_block_count_limit(self, uniform_dag):
        """Test block count limit."""
        with pytest.raises(BlockLimitError, match="exceed"):
            distribution_from_mod1(uniform_dag, 3, base=10, max_blocks=800)

    def test_configured_limit(self, uniform_dag, monkeypatch):
        """Test configured limit."""
        monkeypatch.setenv("BENFORD_MAX_BLOCK_LENGTH", "2")
        get_settings.cache_clear()
        with pytest.raises(BlockLimitError, match="1..2"):
            full_digit_distribution(uniform_dag, 3)
