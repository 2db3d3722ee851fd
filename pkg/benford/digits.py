"""Benford block probabilities and significant-digit extraction."""

import logging
import math
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from benford.config import get_settings
from benford.density import Density, cdf_many, integrate
from benford.schemas import DigitBlock, DigitDistribution, Mod1Density

logger = logging.getLogger(__name__)

# Candidates closer than this to a block boundary are settled exactly.
GUARD = 1e-9
# Outside this range powers of the base lose precision; use the exact path.
EXTREME_LOW = 1e-290
EXTREME_HIGH = 1e290


class DigitDomainError(Exception):
    """Raised when digits are requested for a non-positive or non-finite number."""

    pass


class BlockLimitError(Exception):
    """Raised when a block enumeration would exceed the configured limit."""

    pass


def check_block_length(n: int, limit: int | None = None) -> None:
    """Reject block lengths outside 1..limit.

    Raises:
        BlockLimitError: If n is out of range.
    """
    limit = limit if limit is not None else get_settings().max_block_length
    if not 1 <= n <= limit:
        raise BlockLimitError(f"Block length must be in 1..{limit}, got {n}")


def check_block_count(n: int, base: int = 10, max_blocks: int | None = None) -> None:
    """Reject enumerations of more than max_blocks base-b blocks of length n.

    Raises:
        BlockLimitError: If (b - 1) * b**(n-1) exceeds max_blocks.
    """
    max_blocks = max_blocks if max_blocks is not None else get_settings().max_blocks
    count = (base - 1) * base ** (n - 1)
    if count > max_blocks:
        raise BlockLimitError(
            f"{count} base-{base} blocks of length {n} exceed the limit of {max_blocks}"
        )


def mantissa_log(value: int, n: int, base: int = 10) -> float:
    """log_b of value / b**(n-1), the mantissa boundary of an n-digit block value.

    Adjacent blocks share one boundary value, so block probabilities telescope.
    """
    if value == base**n:
        return 1.0
    if value == base ** (n - 1):
        return 0.0
    if base == 10:
        return math.log10(value) - (n - 1)
    return math.log(value) / math.log(base) - (n - 1)


def benford_block_prob(block: DigitBlock) -> float:
    """Benford probability log_b(1 + 1/v) of a digit block with value v."""
    return math.log1p(1.0 / block.value) / math.log(block.base)


def benford_distribution(n: int, base: int = 10) -> DigitDistribution:
    """Exact Benford law over all blocks of length n.

    Raises:
        BlockLimitError: If n or the block count exceeds the configured limits.
    """
    check_block_length(n)
    check_block_count(n, base)
    blocks = enumerate_blocks(n, base)
    return DigitDistribution(
        n=n,
        base=base,
        blocks=blocks,
        probabilities=tuple(benford_block_prob(b) for b in blocks),
    )


@lru_cache(maxsize=32)
def enumerate_blocks(n: int, base: int = 10) -> tuple[DigitBlock, ...]:
    """Every length-n block in lexicographic order."""
    return tuple(DigitBlock.from_value(v, n, base) for v in range(base ** (n - 1), base**n))


def _block_value(y: float, n: int, base: int) -> tuple[int, int]:
    """Exact (value, exponent) with b**(n-1) <= value < b**n and y in [value, value+1)*b**(k-n+1)."""
    numerator, denominator = y.as_integer_ratio()
    k = math.floor(math.log10(y) if base == 10 else math.log(y, base))
    for _ in range(4):
        shift = k - n + 1
        if shift >= 0:
            value = numerator // (denominator * base**shift)
        else:
            value = (numerator * base ** (-shift)) // denominator
        if value >= base**n:
            k += 1
        elif value < base ** (n - 1):
            k -= 1
        else:
            return value, k
    raise DigitDomainError(f"Could not normalize {y!r}")


def extract_digits(y: float, n: int, base: int = 10) -> DigitBlock:
    """First n significant digits of a positive real.

    The mantissa is found from floor(log_b y) with a correction step, then the
    digits are read off the exact binary value of y, so a number sitting just
    below a digit boundary resolves to the lower block.

    Args:
        y: Positive finite number.
        n: Number of digits.
        base: Digit base.

    Returns:
        The digit block D_1(y) ... D_n(y).

    Raises:
        DigitDomainError: If y is not a positive finite number.
    """
    if not (isinstance(y, int | float) and math.isfinite(y) and y > 0):
        raise DigitDomainError(f"Significant digits need a positive finite number, got {y!r}")
    if n < 1:
        raise ValueError(f"Digit count must be at least 1, got {n}")
    value, _ = _block_value(float(y), n, base)
    return DigitBlock.from_value(value, n, base)


def block_values(ys: npt.ArrayLike, n: int, base: int = 10) -> npt.NDArray[np.int64]:
    """Vectorized n-digit block values of positive numbers.

    A floating-point candidate is computed for every entry; entries whose
    scaled mantissa lies within GUARD of an integer are recomputed exactly.

    Raises:
        DigitDomainError: If any entry is not positive and finite.
    """
    ys = np.asarray(ys, dtype=np.float64)
    bad = ~(np.isfinite(ys) & (ys > 0))
    if np.any(bad):
        first = int(np.argmax(bad))
        raise DigitDomainError(f"Entry {first} is not a positive finite number: {ys[first]!r}")
    if n > 15:
        return np.array([_block_value(float(y), n, base)[0] for y in ys], dtype=np.int64)
    log_b = np.log(ys) / math.log(base) if base != 10 else np.log10(ys)
    k = np.floor(log_b)
    scaled = ys / np.power(float(base), k - (n - 1))
    low, high = float(base ** (n - 1)), float(base**n)
    k = np.where(scaled < low, k - 1, np.where(scaled >= high, k + 1, k))
    scaled = ys / np.power(float(base), k - (n - 1))
    values = np.floor(scaled)
    near = (np.abs(scaled - np.rint(scaled)) < GUARD * scaled) | (values < low) | (values >= high)
    near |= (ys < EXTREME_LOW) | (ys > EXTREME_HIGH)
    values = values.astype(np.int64)
    for i in np.flatnonzero(near):
        values[i] = _block_value(float(ys[i]), n, base)[0]
    return values


def digit_prob_from_mod1(g_dag: Mod1Density, block: DigitBlock) -> float:
    """Probability of a digit block under a mod-1 log density.

    Integrates g_dag between the logs of the block's mantissa bounds.
    """
    n, v = block.length, block.value
    lo = mantissa_log(v, n, block.base)
    hi = mantissa_log(v + 1, n, block.base)
    return integrate(g_dag, lo, hi)


def distribution_from_mod1(
    g_dag: Density, n: int, base: int = 10, max_blocks: int | None = None
) -> DigitDistribution:
    """Block probabilities of every length-n base-b block.

    Raises:
        BlockLimitError: If the block count exceeds max_blocks.
    """
    check_block_count(n, base, max_blocks)
    values = range(base ** (n - 1), base**n + 1)
    boundaries = np.array([mantissa_log(v, n, base) for v in values])
    cumulative = cdf_many(g_dag, boundaries)
    probabilities = np.maximum(np.diff(cumulative), 0.0)
    return DigitDistribution(
        n=n,
        base=base,
        blocks=enumerate_blocks(n, base),
        probabilities=tuple(float(p) for p in probabilities),
    )


def full_digit_distribution(
    g_dag: Mod1Density, n: int, max_length: int | None = None
) -> DigitDistribution:
    """Digit distribution of every length-n block under g_dag.

    Args:
        g_dag: Mod-1 density.
        n: Block length.
        max_length: Longest allowed block; defaults to the configured limit.

    Returns:
        Distribution over 9 * 10**(n-1) blocks in lexicographic order.

    Raises:
        BlockLimitError: If n exceeds the limit.
    """
    check_block_length(n, max_length)
    distribution = distribution_from_mod1(g_dag, n, max_blocks=9 * 10 ** (n - 1))
    logger.debug(f"Computed {len(distribution.blocks)} block probabilities for n={n}")
    return distribution
