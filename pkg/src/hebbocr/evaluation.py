"""Success rate, false rejection rate and per-class result tables.

Rates are kept as exact ``Fraction`` percentages and only rounded (half up,
two decimals) when written out.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import BinaryIO, Mapping, Sequence

from .errors import CountOverflow, NoTests
from .hebbnet import Decision
from .labels import label_name

TABLE_HEADER = (
    "label\ttrain_count\ttest_count\tcorrect\tmisclassified"
    "\tunrecognized\tsuccess_rate_pct\tfrr_pct"
)
OVERALL_LABEL = "ALL"


def success_rate(correct: int, tested: int) -> Fraction:
    if tested <= 0:
        raise NoTests("success rate needs at least one test")
    if not 0 <= correct <= tested:
        raise CountOverflow(f"{correct} correct out of {tested}")
    return Fraction(100 * correct, tested)


def frr(unrecognized: int, tested: int) -> Fraction:
    """Unrecognized patterns as a percentage of all patterns tested."""
    if tested <= 0:
        raise NoTests("FRR needs at least one test")
    if unrecognized < 0 or unrecognized > tested:
        raise CountOverflow(f"{unrecognized} unrecognized out of {tested}")
    return Fraction(100 * unrecognized, tested)


def format_pct(value: Fraction | None) -> str:
    """Round half up to two decimals. ``None`` (no tests) renders as ``NA``."""
    if value is None:
        return "NA"
    hundredths = math.floor(Fraction(value) * 100 + Fraction(1, 2))
    return f"{hundredths // 100}.{hundredths % 100:02d}"


@dataclass(frozen=True)
class EvalRecord:
    label: str
    training_count: int
    testing_count: int
    correct_count: int
    misclassified_count: int
    unrecognized_count: int

    def __post_init__(self):
        parts = self.correct_count + self.misclassified_count + self.unrecognized_count
        if parts != self.testing_count:
            raise ValueError(f"{self.label}: tallies sum to {parts}, not {self.testing_count}")

    @property
    def success_rate_pct(self) -> Fraction | None:
        if self.testing_count == 0:
            return None
        return success_rate(self.correct_count, self.testing_count)

    @property
    def frr_pct(self) -> Fraction | None:
        if self.testing_count == 0:
            return None
        return frr(self.unrecognized_count, self.testing_count)

    @property
    def misclassified_pct(self) -> Fraction | None:
        if self.testing_count == 0:
            return None
        return Fraction(100 * self.misclassified_count, self.testing_count)

    @property
    def display_label(self) -> str:
        return self.label if self.label == OVERALL_LABEL else label_name(self.label)


@dataclass(frozen=True)
class EvalReport:
    records: tuple[EvalRecord, ...]
    overall: EvalRecord
    kb_summary: Mapping[str, object]

    @property
    def no_tests(self) -> bool:
        return self.overall.testing_count == 0


def build_report(
    truth: Sequence[str],
    decisions: Sequence[Decision],
    training_counts: Mapping[str, int] | None = None,
    kb_summary: Mapping[str, object] | None = None,
) -> EvalReport:
    """Tally decisions against true labels, one record per class in order of
    first appearance."""
    if len(truth) != len(decisions):
        raise ValueError(f"{len(truth)} labels but {len(decisions)} decisions")
    training_counts = training_counts or {}
    tallies: dict[str, list[int]] = {}
    for label, decision in zip(truth, decisions):
        t = tallies.setdefault(label, [0, 0, 0])
        if decision.label is None:
            t[2] += 1
        elif decision.label == label:
            t[0] += 1
        else:
            t[1] += 1
    records = tuple(
        EvalRecord(label, training_counts.get(label, 0), sum(t), *t)
        for label, t in tallies.items()
    )
    overall = EvalRecord(
        OVERALL_LABEL,
        sum(r.training_count for r in records),
        sum(r.testing_count for r in records),
        sum(r.correct_count for r in records),
        sum(r.misclassified_count for r in records),
        sum(r.unrecognized_count for r in records),
    )
    return EvalReport(records, overall, dict(kb_summary or {}))


def _row(r: EvalRecord) -> str:
    return "\t".join(
        [
            r.display_label,
            str(r.training_count),
            str(r.testing_count),
            str(r.correct_count),
            str(r.misclassified_count),
            str(r.unrecognized_count),
            format_pct(r.success_rate_pct),
            format_pct(r.frr_pct),
        ]
    )


def table_bytes(report: EvalReport) -> bytes:
    lines = [TABLE_HEADER, *(_row(r) for r in report.records), _row(report.overall)]
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_table(report: EvalReport, sink: BinaryIO) -> int:
    data = table_bytes(report)
    sink.write(data)
    return len(data)


class PlotKind(enum.Enum):
    SUCCESS_BY_CLASS = "success_by_class"
    FRR_BY_CLASS = "frr_by_class"
    SUCCESS_VS_FRR = "success_vs_frr"


def plot_bytes(report: EvalReport, which: PlotKind) -> bytes:
    lines = ["x,y"]
    for i, r in enumerate(report.records, start=1):
        s, f = format_pct(r.success_rate_pct), format_pct(r.frr_pct)
        if which is PlotKind.SUCCESS_BY_CLASS:
            lines.append(f"{i},{s}")
        elif which is PlotKind.FRR_BY_CLASS:
            lines.append(f"{i},{f}")
        else:
            lines.append(f"{s},{f}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_plot_data(report: EvalReport, which: PlotKind, sink: BinaryIO) -> int:
    data = plot_bytes(report, PlotKind(which))
    sink.write(data)
    return len(data)
