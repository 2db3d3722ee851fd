"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 data error, 3 acceptance threshold
not met.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import NoReturn

from pydantic import ValidationError

from benford.analyze import (
    DatasetError,
    FitError,
    base_digit_distribution,
    empirical_digit_distribution,
    fit_report,
    histogram,
    ingest_dataset,
    scale_invariance_report,
    translation_invariance_report,
)
from benford.config import get_settings
from benford.construct import (
    ConstructionError,
    benford_partition,
    construct_n_digit,
    load_bump_family,
    named_bump,
    verify_n_digit,
)
from benford.density import (
    DensityError,
    dump_density_spec,
    load_density_spec,
    mod1_project,
)
from benford.digits import (
    BlockLimitError,
    DigitDomainError,
    benford_distribution,
    distribution_from_mod1,
)
from benford.presets import UnknownPresetError, get_preset
from benford.report import ReportFormatter
from benford.sample import SamplingError, format_samples, sample_x, sample_y
from benford.schemas import CommandConfig, PiecewiseDensity, SampleSet

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_THRESHOLD = 3


class UsageError(Exception):
    """Raised for invalid command-line arguments."""

    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(item) for item in text.split(",") if item.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _add_density_source(parser: argparse.ArgumentParser, default_preset: str | None = None) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--preset", default=default_preset, help="Named density of X = log10(Y)")
    source.add_argument("--spec", dest="spec_path", help="Density-spec JSON file")


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", dest="output_format", choices=["json", "csv", "text"], default="text"
    )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for every subcommand."""
    parser = _Parser(prog="benford", description="Significant-digit laws via the mod 1 map")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    construct = sub.add_parser("construct", help="Build an n-digit Benford mod-1 density")
    construct.add_argument("--n", type=int, default=1)
    bumps = construct.add_mutually_exclusive_group()
    bumps.add_argument("--bump", default="sine", help="uniform, sine or linear-ramp")
    bumps.add_argument("--bump-file", dest="bump_path", help="JSON shape or list of shapes")
    construct.add_argument("--out", dest="output_path")
    _add_format(construct)

    verify = sub.add_parser("verify", help="Check the n-digit law for a density")
    verify.add_argument("spec", nargs="?", help="Density-spec JSON file")
    verify.add_argument("--preset")
    verify.add_argument("--n", type=int, default=1)
    _add_format(verify)

    table = sub.add_parser("table", help="Theoretical vs sampled first-digit table")
    _add_density_source(table, default_preset="sine1")
    table.add_argument("--n", type=int, default=1)
    table.add_argument("--count", type=int, default=100_000)
    table.add_argument("--seed", type=int)
    table.add_argument("--workers", type=int, default=1)
    table.add_argument("--tolerance", type=float, default=0.005)

    sample = sub.add_parser("sample", help="Draw seeded samples of Y = 10**X")
    _add_density_source(sample, default_preset="sine1")
    sample.add_argument("--count", type=int, default=100_000)
    sample.add_argument("--seed", type=int)
    sample.add_argument("--workers", type=int, default=1)
    sample.add_argument("--x", dest="sample_x", action="store_true", help="Emit X instead of Y")
    sample.add_argument("--out", dest="output_path")
    sample.add_argument("--format", dest="output_format", choices=["text", "csv"], default="text")

    analyze = sub.add_parser("analyze", help="Fit a dataset against the Benford law")
    analyze.add_argument("input_path", help="CSV or whitespace-separated numbers")
    analyze.add_argument("--column")
    analyze.add_argument("--n", type=int, default=1)
    analyze.add_argument("--base", type=int, default=10)
    analyze.add_argument("--skip-invalid", action="store_true", help="Exclude unusable rows")
    analyze.add_argument("--histogram", dest="histogram_path", help="Write bin counts as CSV")
    analyze.add_argument("--bins", type=int, default=100)
    analyze.add_argument("--min-p", dest="min_p_value", type=float)
    _add_format(analyze)

    invariance = sub.add_parser("invariance", help="Digit laws under scaling or translation")
    _add_density_source(invariance, default_preset="sine1")
    grid = invariance.add_mutually_exclusive_group(required=True)
    grid.add_argument("--scales", type=_float_list)
    grid.add_argument("--shifts", type=_float_list)
    invariance.add_argument("--n", type=int, default=1)
    _add_format(invariance)

    rebase = sub.add_parser("rebase", help="Digit law of Y in another base")
    _add_density_source(rebase, default_preset="uniform")
    rebase.add_argument("--base", type=int, required=True)
    rebase.add_argument("--n", type=int, default=1)
    _add_format(rebase)

    return parser


def parse_config(argv: Sequence[str] | None = None) -> tuple[CommandConfig, bool]:
    """Parse arguments into a validated run configuration.

    Raises:
        UsageError: If the arguments are invalid.
    """
    args = vars(build_parser().parse_args(argv))
    verbose = args.pop("verbose")
    if args.get("spec") is not None:
        args["spec_path"] = args.pop("spec")
    if "seed" in args and args["seed"] is None:
        args["seed"] = get_settings().default_seed
    values = {k: v for k, v in args.items() if v is not None and k in CommandConfig.model_fields}
    try:
        return CommandConfig.model_validate(values), verbose
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
        raise UsageError(problems) from e


def _density(config: CommandConfig) -> tuple[PiecewiseDensity, str]:
    if config.spec_path is not None:
        return load_density_spec(config.spec_path), config.spec_path
    if config.preset is None:
        raise UsageError("Give a density with --preset or a spec file")
    return get_preset(config.preset), config.preset


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {path}")


def cmd_construct(config: CommandConfig, formatter: ReportFormatter) -> int:
    """Write an n-digit construction as a density spec and report its verification."""
    bumps = load_bump_family(config.bump_path) if config.bump_path else named_bump(config.bump or "sine")
    g_dag = construct_n_digit(benford_partition(config.n), bumps)
    report = verify_n_digit(g_dag, config.n)
    summary = formatter.verification(report, config.output_format)
    if config.output_path:
        _emit(dump_density_spec(g_dag), config.output_path)
        sys.stdout.write(summary)
    else:
        sys.stdout.write(dump_density_spec(g_dag))
        sys.stderr.write(summary)
    return EXIT_OK if report.is_n_digit else EXIT_THRESHOLD


def cmd_verify(config: CommandConfig, formatter: ReportFormatter) -> int:
    """Check a density against the n-digit law; exit 3 when it fails."""
    g, _ = _density(config)
    report = verify_n_digit(mod1_project(g), config.n)
    sys.stdout.write(formatter.verification(report, config.output_format))
    return EXIT_OK if report.is_n_digit else EXIT_THRESHOLD


def _draw_samples(config: CommandConfig, g: PiecewiseDensity, source: str) -> SampleSet:
    sampler = sample_x if config.sample_x else sample_y
    return sampler(g, config.count, config.seed, source=source, workers=config.workers)


def cmd_table(config: CommandConfig, formatter: ReportFormatter) -> int:
    """Print the law of a density next to frequencies from a seeded sample."""
    g, source = _density(config)
    theoretical = distribution_from_mod1(mod1_project(g), config.n)
    samples = _draw_samples(config, g, source)
    empirical = empirical_digit_distribution(samples, config.n)
    report = fit_report(empirical, theoretical)
    sys.stdout.write(formatter.table(theoretical, empirical))
    sys.stdout.write(
        f"count={config.count} seed={config.seed} chi-square={report.chi_square:.4f} "
        f"p-value={report.p_value:.4f} max-dev={report.max_abs_dev:.4f}\n"
    )
    if report.max_abs_dev > config.tolerance:
        logger.warning(f"Deviation {report.max_abs_dev:.4f} exceeds {config.tolerance}")
        return EXIT_THRESHOLD
    return EXIT_OK


def cmd_sample(config: CommandConfig, formatter: ReportFormatter) -> int:
    """Write seeded draws, one per line or as CSV."""
    g, source = _density(config)
    samples = _draw_samples(config, g, source)
    _emit(format_samples(samples, config.output_format), config.output_path)
    return EXIT_OK


def cmd_analyze(config: CommandConfig, formatter: ReportFormatter) -> int:
    """Fit a dataset's digit frequencies against the Benford law."""
    assert config.input_path is not None
    samples = ingest_dataset(config.input_path, config.column, strict=not config.skip_invalid)
    if samples.exclusion_count:
        sys.stderr.write(f"excluded {samples.exclusion_count} rows\n")
    empirical = empirical_digit_distribution(samples, config.n, config.base)
    report = fit_report(empirical, benford_distribution(config.n, config.base))
    sys.stdout.write(formatter.fit(report, config.output_format))
    if config.histogram_path:
        hist = histogram(samples, bins=config.bins, lo=1.0, hi=float(config.base))
        _emit(formatter.histogram(hist), config.histogram_path)
    if config.min_p_value is not None and report.p_value < config.min_p_value:
        return EXIT_THRESHOLD
    return EXIT_OK


def cmd_invariance(config: CommandConfig, formatter: ReportFormatter) -> int:
    """Report digit-law deviations over a grid of scales or shifts."""
    g, _ = _density(config)
    if config.scales:
        report = scale_invariance_report(g, config.scales, config.n)
    elif config.shifts:
        report = translation_invariance_report(mod1_project(g), config.shifts, config.n)
    else:
        raise UsageError("Give --scales or --shifts")
    sys.stdout.write(formatter.invariance(report, config.output_format))
    return EXIT_OK


def cmd_rebase(config: CommandConfig, formatter: ReportFormatter) -> int:
    """Print the base-b digit law of a density."""
    g, _ = _density(config)
    dist = base_digit_distribution(g, config.base, config.n)
    sys.stdout.write(formatter.distribution(dist, config.output_format))
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "table": cmd_table,
    "sample": cmd_sample,
    "analyze": cmd_analyze,
    "invariance": cmd_invariance,
    "rebase": cmd_rebase,
}


def _configure_logging(verbose: bool) -> None:
    level = "INFO" if verbose else get_settings().log_level
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def run(config: CommandConfig) -> int:
    """Execute one configured command and map failures to exit codes."""
    formatter = ReportFormatter()
    try:
        return COMMANDS[config.subcommand](config, formatter)
    except (UsageError, UnknownPresetError, ConstructionError, BlockLimitError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except DensityError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DATA if isinstance(e.__cause__, OSError) else EXIT_USAGE
    except (DatasetError, DigitDomainError, SamplingError, FitError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DATA
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    """Console entry point; returns the process exit code."""
    try:
        config, verbose = parse_config(argv)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    _configure_logging(verbose)
    logger.info(f"Running {config.subcommand} with {config.model_dump(exclude_defaults=True)}")
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
