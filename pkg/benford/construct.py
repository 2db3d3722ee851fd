"""Construction of n-digit Benford mod-1 densities from unit bump densities.

On each cell [a_j, a_{j+1}) of the digit-boundary partition the mod-1 density
is a bump h_j rescaled onto the cell with mass a_{j+1} - a_j. Any such density
integrates like the uniform density over unions of cells, which makes it
Benford in the first n digits without any guarantee beyond.
"""

import json
import logging
from pathlib import Path

from pydantic import TypeAdapter, ValidationError

from benford.digits import (
    benford_distribution,
    check_block_length,
    full_digit_distribution,
    mantissa_log,
)
from benford.schemas import (
    AnyShape,
    BumpFamily,
    ConstantShape,
    LinearShape,
    Mod1Density,
    Partition,
    Piece,
    PiecewiseDensity,
    PieceShape,
    SineBumpShape,
    VerificationReport,
)

logger = logging.getLogger(__name__)

N_DIGIT_TOLERANCE = 1e-9

NAMED_BUMPS: dict[str, AnyShape] = {
    "uniform": ConstantShape(level=1.0),
    "sine": SineBumpShape(),
    "linear-ramp": LinearShape(left=0.0, right=2.0),
}


class ConstructionError(Exception):
    """Raised when a bump family does not fit a partition."""

    pass


def named_bump(name: str) -> BumpFamily:
    """Single-shape bump family by name.

    Raises:
        ConstructionError: If the name is unknown.
    """
    try:
        return BumpFamily(shapes=(NAMED_BUMPS[name],))
    except KeyError as e:
        known = ", ".join(sorted(NAMED_BUMPS))
        raise ConstructionError(f"Unknown bump '{name}'. Choose one of: {known}") from e


def load_bump_family(path: str | Path) -> BumpFamily:
    """Read a bump family from JSON: one shape object or a list of shapes.

    Shapes are rescaled to unit mass.

    Raises:
        ConstructionError: If the file cannot be read or parsed.
    """
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        items = raw if isinstance(raw, list) else [raw]
        shapes = TypeAdapter(list[PieceShape]).validate_python(items)
    except (OSError, json.JSONDecodeError, ValidationError) as e:
        raise ConstructionError(f"Cannot read bump family from {path}: {e}") from e
    return BumpFamily.normalized(shapes)


def benford_partition(n: int, max_length: int | None = None) -> Partition:
    """Partition of [0, 1] at the logs of consecutive n-digit mantissa boundaries.

    Args:
        n: Number of digits.
        max_length: Largest allowed n; defaults to the configured limit.

    Returns:
        9 * 10**(n-1) cells; the cell of block value v has width log10(1 + 1/v).

    Raises:
        BlockLimitError: If n is out of range.
    """
    check_block_length(n, max_length)
    values = range(10 ** (n - 1), 10**n + 1)
    return Partition(points=tuple(mantissa_log(v, n) for v in values))


def construct_n_digit(partition: Partition, bumps: BumpFamily) -> Mod1Density:
    """Mod-1 density equal to h_j((x - a_j)/(a_{j+1} - a_j)) on each cell.

    Args:
        partition: Breakpoints a_0 = 0 < ... < a_m = 1.
        bumps: One unit bump per cell, or a single bump reused on every cell.

    Returns:
        Mod-1 density whose mass on each cell equals the cell width.

    Raises:
        ConstructionError: If the bump count is neither 1 nor the cell count.
    """
    cells = partition.intervals
    shapes = bumps.shapes
    if len(shapes) == 1:
        shapes = shapes * len(cells)
    elif len(shapes) != len(cells):
        raise ConstructionError(
            f"Got {len(shapes)} bumps for a partition of {len(cells)} cells"
        )
    pieces = tuple(
        Piece(lo=a, hi=b, shape=shape, weight=b - a)
        for (a, b), shape in zip(cells, shapes, strict=True)
    )
    logger.info(f"Constructed mod-1 density with {len(pieces)} pieces")
    return Mod1Density(inner=PiecewiseDensity(pieces=pieces))


def verify_n_digit(
    g_dag: Mod1Density, n: int, tolerance: float = N_DIGIT_TOLERANCE
) -> VerificationReport:
    """Compare every length-n block probability with the Benford law.

    Args:
        g_dag: Mod-1 density.
        n: Block length.
        tolerance: Largest error still counted as n-digit Benford.

    Returns:
        Report with the largest absolute error and the block where it occurs.
    """
    observed = full_digit_distribution(g_dag, n)
    expected = benford_distribution(n)
    errors = [abs(p - q) for p, q in zip(observed.probabilities, expected.probabilities, strict=True)]
    worst = max(range(len(errors)), key=errors.__getitem__)
    return VerificationReport(
        n=n,
        max_abs_error=errors[worst],
        is_n_digit=errors[worst] <= tolerance,
        tolerance=tolerance,
        worst_block=observed.blocks[worst],
    )
