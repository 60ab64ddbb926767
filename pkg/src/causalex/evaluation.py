"""Accuracy of extracted triples against human annotations.

Annotators mark each extracted triple correct or not, with separate
flags for hypothetical and negated statements.  Strict scoring counts a
triple as a true positive only when it is correct and neither flag is
set; relaxed scoring counts every correct one.  Accuracy here is
precision over extracted items: true positives divided by the number of
triples the system produced in that category.  Recall is not measured
(there is no exhaustive gold set to measure it against).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from io import StringIO
from typing import Iterable, TextIO, Union

from .rules import CausalTriple

TripleKey = tuple[str, int, int, str]  # tweet id, sentence ordinal, rule id, effect keyword

ANNOTATION_COLUMNS = ("tweet_id", "sent", "rule", "effect", "correct", "hypothetical", "negated")


class AnnotationError(ValueError):
    """Raised for malformed or inconsistent annotation files."""


@dataclass(frozen=True)
class AnnotationRecord:
    key: TripleKey
    correct: bool
    hypothetical: bool = False
    negated: bool = False


@dataclass(frozen=True)
class CategoryScore:
    true_positives: int
    total: int

    @property
    def accuracy(self) -> float | None:
        return self.true_positives / self.total if self.total else None


@dataclass(frozen=True)
class AccuracyReport:
    mode: str
    per_category: dict[str, CategoryScore]

    @property
    def micro_tp(self) -> int:
        return sum(s.true_positives for s in self.per_category.values())

    @property
    def micro_total(self) -> int:
        return sum(s.total for s in self.per_category.values())

    @property
    def micro_average(self) -> float | None:
        return self.micro_tp / self.micro_total if self.micro_total else None


def load_annotations(source: Union[str, TextIO]) -> dict[TripleKey, AnnotationRecord]:
    """Read the annotation TSV (header row required, flags as 0/1)."""
    if isinstance(source, str):
        source = StringIO(source)
    reader = csv.DictReader(source, delimiter="\t")
    if reader.fieldnames is None:
        return {}
    missing = [c for c in ANNOTATION_COLUMNS if c not in reader.fieldnames]
    if missing:
        raise AnnotationError(f"annotation file missing column(s): {', '.join(missing)}")

    records: dict[TripleKey, AnnotationRecord] = {}
    for lineno, row in enumerate(reader, start=2):
        try:
            key: TripleKey = (row["tweet_id"], int(row["sent"]), int(row["rule"]), row["effect"])
        except (TypeError, ValueError):
            raise AnnotationError(f"line {lineno}: malformed key fields") from None
        if key in records:
            raise AnnotationError(f"line {lineno}: duplicate annotation for {key}")
        records[key] = AnnotationRecord(
            key=key,
            correct=_flag(row, "correct", lineno),
            hypothetical=_flag(row, "hypothetical", lineno),
            negated=_flag(row, "negated", lineno),
        )
    return records


def _flag(row: dict, column: str, lineno: int) -> bool:
    value = (row.get(column) or "").strip()
    if value not in ("0", "1"):
        raise AnnotationError(f"line {lineno}: column {column!r} must be 0 or 1, got {value!r}")
    return value == "1"


def _as_key(item: Union[CausalTriple, TripleKey]) -> TripleKey:
    if isinstance(item, CausalTriple):
        return item.annotation_key
    return item


def accuracy(
    extracted: Iterable[Union[CausalTriple, TripleKey]],
    annotations: dict[TripleKey, AnnotationRecord],
    mode: str,
) -> AccuracyReport:
    """Score extracted triples against annotations (see module docs).

    Every extracted triple must be annotated; categories are the effect
    keywords.  The order of the extraction list does not matter.
    """
    if mode not in ("strict", "relaxed"):
        raise ValueError(f"mode must be 'strict' or 'relaxed', got {mode!r}")
    keys = [_as_key(item) for item in extracted]
    unannotated = sorted({k for k in keys if k not in annotations})
    if unannotated:
        shown = ", ".join(map(str, unannotated[:5]))
        more = f" (+{len(unannotated) - 5} more)" if len(unannotated) > 5 else ""
        raise AnnotationError(f"unannotated triple(s): {shown}{more}")

    tp: dict[str, int] = {}
    totals: dict[str, int] = {}
    for key in keys:
        category = key[3]
        totals[category] = totals.get(category, 0) + 1
        record = annotations[key]
        if mode == "strict":
            hit = record.correct and not record.hypothetical and not record.negated
        else:
            hit = record.correct
        if hit:
            tp[category] = tp.get(category, 0) + 1

    per_category = {
        category: CategoryScore(true_positives=tp.get(category, 0), total=total)
        for category, total in sorted(totals.items())
    }
    return AccuracyReport(mode=mode, per_category=per_category)


def _pct(value: float | None) -> str:
    return "n/a" if value is None else f"{100 * value:.2f}%"


def format_report(reports: list[AccuracyReport]) -> str:
    """Text table, one accuracy column per scored mode."""
    categories: list[str] = []
    for report in reports:
        for category in report.per_category:
            if category not in categories:
                categories.append(category)
    headers = ["Category"] + [r.mode.capitalize() for r in reports]
    rows = []
    for category in categories:
        row = [category]
        for report in reports:
            score = report.per_category.get(category)
            if score is None:
                row.append("n/a")
            else:
                row.append(f"{_pct(score.accuracy)} ({score.true_positives}/{score.total})")
        rows.append(row)
    micro = ["Micro-average"] + [
        f"{_pct(r.micro_average)} ({r.micro_tp}/{r.micro_total})" for r in reports
    ]
    rows.append(micro)

    widths = [max(len(headers[c]), *(len(r[c]) for r in rows)) for c in range(len(headers))]
    lines = []
    for row in [headers] + rows:
        lines.append("  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def report_to_json_dict(report: AccuracyReport) -> dict:
    return {
        "mode": report.mode,
        "per_category": {
            category: {
                "true_positives": score.true_positives,
                "total": score.total,
                "accuracy": score.accuracy,
            }
            for category, score in report.per_category.items()
        },
        "micro_average": report.micro_average,
        "micro_true_positives": report.micro_tp,
        "micro_total": report.micro_total,
    }


def load_triple_keys(source: Union[str, TextIO]) -> list[TripleKey]:
    """Triple keys from extraction JSONL output."""
    if isinstance(source, str):
        source = StringIO(source)
    keys: list[TripleKey] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            keys.append((str(obj["tweet_id"]), int(obj["sent"]), int(obj["rule"]), obj["effect"]))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise AnnotationError(f"triples line {lineno}: malformed record ({exc})") from None
    return keys
