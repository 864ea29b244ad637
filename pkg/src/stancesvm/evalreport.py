"""Confusion matrices and per-class precision/recall/F1 reports."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .corpus import Label

CLASS_ORDER = (Label.DISAPPROVE, Label.APPROVE)


@dataclass(frozen=True)
class ConfusionMatrix:
    """2x2 counts indexed ``[true][predicted]``; row 0 is Disapprove."""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (2, 2) or np.any(counts < 0):
            raise ValueError("confusion matrix must be 2x2 with non-negative counts")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvaluationReport:
    per_class: dict
    weighted_avg: ClassMetrics
    accuracy: float
    confusion: ConfusionMatrix
    # classes whose precision or recall hit a 0/0 and were reported as 0
    degenerate: tuple = ()

    def to_dict(self) -> dict:
        def row(m):
            return {"precision": m.precision, "recall": m.recall, "f1": m.f1, "support": m.support}
        return {
            "per_class": {str(int(c)): {"label": str(c), **row(m)} for c, m in self.per_class.items()},
            "weighted_avg": row(self.weighted_avg),
            "accuracy": self.accuracy,
            "confusion": self.confusion.counts.tolist(),
            "degenerate": [str(c) for c in self.degenerate],
        }

    def format(self) -> str:
        return format_report(self)


def confusion(predictions, truths) -> ConfusionMatrix:
    predictions, truths = list(predictions), list(truths)
    if len(predictions) != len(truths):
        raise ValueError(f"{len(predictions)} predictions vs {len(truths)} truths")
    if not truths:
        raise ValueError("cannot evaluate an empty prediction list")
    counts = np.zeros((2, 2), dtype=np.int64)
    for p, t in zip(predictions, truths):
        counts[int(Label(t)), int(Label(p))] += 1
    return ConfusionMatrix(counts)


def _ratio(num: int, den: int) -> Fraction:
    return Fraction(num, den) if den else Fraction(0)


def f1_score(precision, recall):
    s = precision + recall
    return 2 * precision * recall / s if s > 0 else 0 * s


def _exact_class_metrics(cm: ConfusionMatrix, k: int):
    tp = int(cm.counts[k, k])
    support = int(cm.counts[k, :].sum())
    precision = _ratio(tp, int(cm.counts[:, k].sum()))
    recall = _ratio(tp, support)
    return precision, recall, f1_score(precision, recall), support


def class_metrics(cm: ConfusionMatrix, label: Label) -> ClassMetrics:
    p, r, f, support = _exact_class_metrics(cm, int(Label(label)))
    return ClassMetrics(float(p), float(r), float(f), support)


def summarize(cm: ConfusionMatrix) -> EvaluationReport:
    # Averages are taken in exact rational arithmetic, so accuracy and the
    # support-weighted recall agree bit for bit.
    total = cm.total
    if total == 0:
        raise ValueError("cannot summarize an empty confusion matrix")
    exact = {c: _exact_class_metrics(cm, int(c)) for c in CLASS_ORDER}
    per_class = {c: ClassMetrics(float(p), float(r), float(f), s) for c, (p, r, f, s) in exact.items()}

    def avg(i):
        return float(sum(Fraction(m[3], total) * m[i] for m in exact.values()))

    weighted = ClassMetrics(avg(0), avg(1), avg(2), total)
    degenerate = tuple(
        c for c in CLASS_ORDER
        if cm.counts[:, int(c)].sum() == 0 or cm.counts[int(c), :].sum() == 0
    )
    accuracy = float(Fraction(int(np.trace(cm.counts)), total))
    return EvaluationReport(per_class, weighted, accuracy, cm, degenerate)


def evaluate(predictions, truths) -> EvaluationReport:
    return summarize(confusion(predictions, truths))


def format_report(report: EvaluationReport, digits: int = 2) -> str:
    """Render the four-column precision/recall/f1-score/support table."""
    header = f"{'':>10}{'precision':>11}{'recall':>11}{'f1-score':>11}{'support':>10}"
    lines = [header, ""]

    def line(name, m):
        return (f"{name:>10}{m.precision:>11.{digits}f}{m.recall:>11.{digits}f}"
                f"{m.f1:>11.{digits}f}{m.support:>10d}")

    for c in CLASS_ORDER:
        lines.append(line(str(int(c)), report.per_class[c]))
    lines.append("")
    lines.append(line("avg/total", report.weighted_avg))
    lines.append("")
    lines.append(f"{'accuracy':>10}{report.accuracy:>11.{digits}f}")
    return "\n".join(lines) + "\n"
