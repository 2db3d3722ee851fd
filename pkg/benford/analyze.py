"""Empirical digit statistics, goodness of fit and invariance experiments."""

import csv
import logging
import math
import re
from collections.abc import Iterable, Iterator, Sequence
from itertools import chain
from pathlib import Path

import numpy as np

from benford.density import Density, mod1_project, rebase_log_density, translate_mod1
from benford.digits import (
    DigitDomainError,
    block_values,
    check_block_count,
    check_block_length,
    distribution_from_mod1,
    enumerate_blocks,
)
from benford.schemas import (
    DigitDistribution,
    FitReport,
    Histogram,
    InvarianceReport,
    Mod1Density,
    PiecewiseDensity,
    RejectedRow,
    SampleSet,
)
from benford.special import chi2_sf

logger = logging.getLogger(__name__)

# Dot decimal separator only, optional exponent.
NUMBER_PATTERN = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")


class DatasetError(Exception):
    """Raised when input data cannot be used, naming the offending row where possible."""

    pass


class FitError(Exception):
    """Raised when two distributions cannot be compared."""

    pass


def _values(samples: SampleSet | Sequence[float]) -> list[float]:
    return list(samples.values) if isinstance(samples, SampleSet) else list(samples)


def empirical_digit_distribution(
    samples: SampleSet | Sequence[float], n: int, base: int = 10
) -> DigitDistribution:
    """Relative frequencies of every length-n block among the samples.

    Args:
        samples: Positive values.
        n: Block length.
        base: Digit base.

    Returns:
        Frequencies with total_count set to the number of values.

    Raises:
        DatasetError: If there are no values or one is not positive and finite.
        BlockLimitError: If n or the block count exceeds the configured limits.
    """
    values = _values(samples)
    if not values:
        raise DatasetError("No values to analyze")
    check_block_length(n)
    check_block_count(n, base)
    for row, v in enumerate(values, start=1):
        if not (math.isfinite(v) and v > 0):
            raise DatasetError(f"Row {row}: value {v!r} is not a positive number")
    try:
        block_ids = block_values(values, n, base) - base ** (n - 1)
    except DigitDomainError as e:
        raise DatasetError(str(e)) from e
    blocks = enumerate_blocks(n, base)
    counts = np.bincount(block_ids, minlength=len(blocks))
    total = len(values)
    return DigitDistribution(
        n=n,
        base=base,
        blocks=blocks,
        probabilities=tuple(float(c) / total for c in counts),
        total_count=total,
    )


def total_variation(p: DigitDistribution, q: DigitDistribution) -> float:
    """Half the L1 distance between two distributions over the same blocks."""
    if p.blocks != q.blocks:
        raise FitError("Distributions are over different blocks")
    return 0.5 * math.fsum(abs(a - b) for a, b in zip(p.probabilities, q.probabilities, strict=True))


def fit_report(empirical: DigitDistribution, theoretical: DigitDistribution) -> FitReport:
    """Pearson chi-square test of empirical frequencies against a digit law.

    Args:
        empirical: Frequencies carrying total_count.
        theoretical: Strictly positive probabilities over the same blocks.

    Returns:
        Chi-square with (blocks - 1) degrees of freedom, its p-value, MAD and
        the largest per-block deviation.

    Raises:
        FitError: If the block sets differ, the sample size is missing, or an
            expected count is zero.
    """
    if empirical.blocks != theoretical.blocks:
        raise FitError(
            f"Cannot compare n={empirical.n} base-{empirical.base} frequencies "
            f"with n={theoretical.n} base-{theoretical.base} probabilities"
        )
    if not empirical.total_count:
        raise FitError("Empirical distribution carries no sample size")
    if len(empirical.blocks) < 2:
        raise FitError("Need at least two blocks for a chi-square test")
    count = empirical.total_count
    terms = []
    for block, observed_p, expected_p in zip(
        empirical.blocks, empirical.probabilities, theoretical.probabilities, strict=True
    ):
        expected = count * expected_p
        if expected <= 0.0:
            raise FitError(f"Expected count for block {block} is zero")
        terms.append((count * observed_p - expected) ** 2 / expected)
    chi_square = math.fsum(terms)
    df = len(terms) - 1
    deviations = [
        abs(a - b) for a, b in zip(empirical.probabilities, theoretical.probabilities, strict=True)
    ]
    return FitReport(
        n=empirical.n,
        empirical=empirical,
        theoretical=theoretical,
        chi_square=chi_square,
        degrees_of_freedom=df,
        p_value=chi2_sf(chi_square, df),
        mad=math.fsum(deviations) / len(deviations),
        max_abs_dev=max(deviations),
    )


def translation_invariance_report(
    g_dag: Mod1Density, shifts: Sequence[float], n: int = 1
) -> InvarianceReport:
    """Digit distributions of g_dag translated by each shift.

    Args:
        g_dag: Mod-1 density.
        shifts: Translations; only their value mod 1 matters.
        n: Block length.

    Returns:
        Report whose deviations are total variations from the untranslated
        distribution.
    """
    check_block_length(n)
    reference = distribution_from_mod1(g_dag, n)
    distributions = []
    deviations = []
    for t in shifts:
        distribution = distribution_from_mod1(translate_mod1(g_dag, t), n)
        distributions.append(distribution)
        deviations.append(total_variation(distribution, reference))
    logger.info(f"Translation experiment over {len(shifts)} shifts, n={n}")
    return InvarianceReport(
        kind="translation",
        n=n,
        parameters=tuple(shifts),
        shifts=tuple(t - math.floor(t) for t in shifts),
        distributions=tuple(distributions),
        deviations=tuple(deviations),
        max_deviation=max(deviations, default=0.0),
    )


def scale_invariance_report(g: Density, scales: Sequence[float], n: int = 1) -> InvarianceReport:
    """Digit distributions of c * Y for each scale c, where log10(Y) has density g.

    Multiplying Y by c translates X = log10(Y) by log10(c).

    Raises:
        ValueError: If a scale is not positive.
    """
    bad = [c for c in scales if not c > 0]
    if bad:
        raise ValueError(f"Scales must be positive, got {bad}")
    report = translation_invariance_report(
        mod1_project(g), [math.log10(c) for c in scales], n
    )
    return report.model_copy(update={"kind": "scale", "parameters": tuple(scales)})


def base_digit_distribution(
    g: PiecewiseDensity, base: int, n: int = 1, max_blocks: int | None = None
) -> DigitDistribution:
    """Length-n base-b block probabilities of Y, where log10(Y) has density g.

    Raises:
        InvalidBaseError: If base < 2.
        BlockLimitError: If (b - 1) * b**(n-1) exceeds max_blocks.
    """
    g_dag = mod1_project(rebase_log_density(g, base))
    return distribution_from_mod1(g_dag, n, base=base, max_blocks=max_blocks)


def _parse_value(raw: str, row: int) -> float | RejectedRow:
    text = raw.strip()
    if not NUMBER_PATTERN.match(text):
        return RejectedRow(row=row, raw=raw, reason="non_numeric")
    value = float(text)
    if not math.isfinite(value):
        return RejectedRow(row=row, raw=raw, reason="non_numeric")
    if value <= 0.0:
        return RejectedRow(row=row, raw=raw, reason="nonpositive")
    return value


def _content_lines(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    for row, line in enumerate(lines, start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield row, line.rstrip("\r\n")


def _all_numeric(cells: Iterable[str]) -> bool:
    return all(NUMBER_PATTERN.match(cell.strip()) for cell in cells if cell.strip())


def _looks_like_header(line: str) -> bool:
    # Data when either the CSV cells or the whitespace tokens are all numbers.
    cells = next(csv.reader([line]), [""])
    return not (_all_numeric(cells) or _all_numeric(line.split()))


def _csv_cells(
    rows: Iterable[tuple[int, str]], header: str, column: str | None, path: Path
) -> Iterator[tuple[int, str]]:
    names = [name.strip() for name in next(csv.reader([header]))]
    selected = column if column is not None else names[0]
    if selected not in names:
        raise DatasetError(f"{path}: no column '{selected}' in header {names}")
    index = names.index(selected)
    for row, line in rows:
        cells = next(csv.reader([line]), [])
        yield row, cells[index] if index < len(cells) else ""


def _plain_cells(rows: Iterable[tuple[int, str]]) -> Iterator[tuple[int, str]]:
    for row, line in rows:
        for token in line.split():
            yield row, token


def ingest_dataset(path: str | Path, column: str | None = None, strict: bool = False) -> SampleSet:
    """Read positive numbers from a CSV file or a whitespace-separated text file.

    A first content line that is not numeric is a CSV header; the named
    column (default: the first) is read. Otherwise every whitespace-separated
    token is a value. Lines starting with '#' are comments.

    Args:
        path: Input file.
        column: CSV column name.
        strict: Raise on the first unusable row instead of excluding it.

    Returns:
        Accepted values, with excluded rows listed in ``rejected``.

    Raises:
        DatasetError: If the file is unreadable, the column is missing, no
            value parses, or (strict) any row is unusable.
    """
    path = Path(path)
    accepted: list[float] = []
    rejected: list[RejectedRow] = []
    try:
        with path.open(encoding="utf-8", newline="") as f:
            rows = iter(_content_lines(f))
            first = next(rows, None)
            if first is None:
                raise DatasetError(f"{path}: no data")
            if column is not None or _looks_like_header(first[1]):
                cells = _csv_cells(rows, first[1], column, path)
            else:
                cells = _plain_cells(chain([first], rows))
            for row, raw in cells:
                parsed = _parse_value(raw, row)
                if isinstance(parsed, RejectedRow):
                    if strict:
                        raise DatasetError(
                            f"{path}: row {row}: {parsed.reason.replace('_', '-')} value {raw!r}"
                        )
                    rejected.append(parsed)
                else:
                    accepted.append(parsed)
    except (OSError, UnicodeDecodeError) as e:
        raise DatasetError(f"Cannot read {path}: {e}") from e

    if not accepted:
        raise DatasetError(f"{path}: no parseable positive values")
    if rejected:
        logger.warning(f"{path}: excluded {len(rejected)} rows, kept {len(accepted)}")
    logger.info(f"Ingested {len(accepted)} values from {path}")
    return SampleSet(
        values=tuple(accepted),
        seed=None,
        count=len(accepted),
        source=str(path),
        rejected=tuple(rejected),
    )


def histogram(
    samples: SampleSet | Sequence[float], bins: int = 100, lo: float = 1.0, hi: float = 10.0
) -> Histogram:
    """Equal-width bin counts over [lo, hi); values outside are tallied separately."""
    if bins < 1 or not lo < hi:
        raise ValueError(f"Need bins >= 1 and lo < hi, got {bins}, [{lo}, {hi})")
    values = np.asarray(_values(samples), dtype=np.float64)
    edges = np.linspace(lo, hi, bins + 1)
    inside = (values >= lo) & (values < hi)
    index = np.clip(np.searchsorted(edges, values[inside], side="right") - 1, 0, bins - 1)
    counts = np.bincount(index, minlength=bins)
    return Histogram(
        edges=tuple(edges.tolist()),
        counts=tuple(int(c) for c in counts),
        underflow=int(np.count_nonzero(values < lo)),
        overflow=int(np.count_nonzero(values >= hi)),
    )
