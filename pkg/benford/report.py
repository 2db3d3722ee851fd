"""Text, CSV and JSON renderings of digit distributions and reports.

Every rendering is a pure function of its input, so CLI output is stable
byte for byte.
"""

import csv
import io
from typing import Literal

from benford.schemas import (
    DigitDistribution,
    FitReport,
    Histogram,
    InvarianceReport,
    VerificationReport,
)

OutputFormat = Literal["json", "csv", "text"]


def _csv(rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


class ReportFormatter:
    """Renders library results for terminals, spreadsheets and other programs."""

    def __init__(self, precision: int = 4):
        self.precision = precision

    def _number(self, value: float) -> str:
        return f"{value:.{self.precision}f}"

    def distribution(self, dist: DigitDistribution, output_format: OutputFormat = "text") -> str:
        """Block probabilities in lexicographic block order.

        CSV columns are ``block,probability``; probabilities keep full
        precision there and in JSON.
        """
        if output_format == "json":
            return dist.model_dump_json(indent=2) + "\n"
        if output_format == "csv":
            rows = [["block", "probability"]]
            rows += [[b.label, repr(p)] for b, p in zip(dist.blocks, dist.probabilities, strict=True)]
            return _csv(rows)
        width = max(len(b.label) for b in dist.blocks)
        lines = [f"{'block':<{width}}  probability"]
        lines += [
            f"{b.label:<{width}}  {self._number(p)}"
            for b, p in zip(dist.blocks, dist.probabilities, strict=True)
        ]
        if dist.total_count is not None:
            lines.append(f"count: {dist.total_count}")
        return "\n".join(lines) + "\n"

    def table(self, theoretical: DigitDistribution, empirical: DigitDistribution) -> str:
        """Two aligned rows: the law, then the sampled frequencies."""
        labels = [b.label for b in theoretical.blocks]
        width = max(self.precision + 2, *(len(label) for label in labels))
        head = "".join(f"{label:>{width + 1}}" for label in labels)
        rows = [f"{'':<12}{head}"]
        for name, dist in (("Theoretical", theoretical), ("Empirical", empirical)):
            cells = "".join(f"{self._number(p):>{width + 1}}" for p in dist.probabilities)
            rows.append(f"{name:<12}{cells}")
        return "\n".join(rows) + "\n"

    def fit(self, report: FitReport, output_format: OutputFormat = "text") -> str:
        """Goodness-of-fit summary followed by the per-block comparison."""
        if output_format == "json":
            return report.model_dump_json(indent=2) + "\n"
        if output_format == "csv":
            rows = [["block", "empirical", "theoretical", "abs_deviation"]]
            for block, e, t in zip(
                report.empirical.blocks,
                report.empirical.probabilities,
                report.theoretical.probabilities,
                strict=True,
            ):
                rows.append([block.label, repr(e), repr(t), repr(abs(e - t))])
            return _csv(rows)
        sections = [self._build_fit_summary(report), self._build_fit_detail(report)]
        return "\n\n".join(sections) + "\n"

    def _build_fit_summary(self, report: FitReport) -> str:
        return "\n".join(
            [
                f"n:            {report.n}",
                f"count:        {report.empirical.total_count}",
                f"chi-square:   {report.chi_square:.6f}",
                f"df:           {report.degrees_of_freedom}",
                f"p-value:      {report.p_value:.6f}",
                f"MAD:          {report.mad:.6f}",
                f"max abs dev:  {report.max_abs_dev:.6f}",
            ]
        )

    def _build_fit_detail(self, report: FitReport) -> str:
        width = max(5, *(len(b.label) for b in report.empirical.blocks))
        lines = [f"{'block':<{width}}  empirical  theoretical"]
        for block, e, t in zip(
            report.empirical.blocks,
            report.empirical.probabilities,
            report.theoretical.probabilities,
            strict=True,
        ):
            lines.append(f"{block.label:<{width}}  {self._number(e):>9}  {self._number(t):>11}")
        return "\n".join(lines)

    def invariance(self, report: InvarianceReport, output_format: OutputFormat = "text") -> str:
        """Deviation per scale or shift, then the largest."""
        if output_format == "json":
            return report.model_dump_json(indent=2) + "\n"
        if output_format == "csv":
            rows = [[report.kind, "shift", "deviation"]]
            rows += [
                [repr(p), repr(s), repr(d)]
                for p, s, d in zip(report.parameters, report.shifts, report.deviations, strict=True)
            ]
            return _csv(rows)
        lines = [f"{report.kind:>12}  {'shift':>10}  {'deviation':>12}"]
        for p, s, d in zip(report.parameters, report.shifts, report.deviations, strict=True):
            lines.append(f"{p:>12.6g}  {s:>10.6f}  {d:>12.3e}")
        lines.append(f"max deviation: {report.max_deviation:.3e}")
        return "\n".join(lines) + "\n"

    def verification(self, report: VerificationReport, output_format: OutputFormat = "text") -> str:
        """One-line verdict on the n-digit law."""
        if output_format == "json":
            return report.model_dump_json(indent=2) + "\n"
        if output_format == "csv":
            worst = report.worst_block.label if report.worst_block else ""
            return _csv(
                [
                    ["n", "max_abs_error", "is_n_digit", "worst_block"],
                    [str(report.n), repr(report.max_abs_error), str(report.is_n_digit).lower(), worst],
                ]
            )
        verdict = "Benford" if report.is_n_digit else "not Benford"
        worst = f" (worst block {report.worst_block})" if report.worst_block else ""
        return f"n={report.n}: {verdict}, max abs error {report.max_abs_error:.3e}{worst}\n"

    def histogram(self, hist: Histogram) -> str:
        """CSV with one row per bin, plus underflow and overflow rows."""
        rows = [["lo", "hi", "count"]]
        rows += [
            [repr(lo), repr(hi), str(c)]
            for lo, hi, c in zip(hist.edges, hist.edges[1:], hist.counts, strict=False)
        ]
        rows.append(["-inf", repr(hist.edges[0]), str(hist.underflow)])
        rows.append([repr(hist.edges[-1]), "inf", str(hist.overflow)])
        return _csv(rows)
