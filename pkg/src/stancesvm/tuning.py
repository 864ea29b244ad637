"""Exhaustive hyperparameter search on a stratified validation holdout."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace
from pathlib import Path

from .corpus import DEFAULT_SEED, Corpus, SplitSpec, stratified_split
from .evalreport import EvaluationReport, evaluate
from .features import EmptyVocabularyError, TfidfConfig
from .linear_svm import SvmConfig
from .pipeline import TrainingError, classify_doc, fit_from_docs
from .textprep import DEFAULT_LEXICON, EmoticonLexicon, preprocess


@dataclass(frozen=True)
class TuningGrid:
    c: tuple = (0.1,)
    ngram_max: tuple = (2,)
    loss: tuple = ("squared_hinge",)
    min_document_frequency: tuple = (5,)
    validation_fraction: float = 0.2

    def __post_init__(self):
        for name in ("c", "ngram_max", "loss", "min_document_frequency"):
            values = tuple(getattr(self, name))
            if not values:
                raise ValueError(f"grid entry {name!r} has no candidates")
            object.__setattr__(self, name, values)
        object.__setattr__(self, "loss", tuple(v.replace("-", "_") for v in self.loss))
        if not 0.0 < self.validation_fraction < 1.0:
            raise ValueError("validation_fraction must lie strictly between 0 and 1")

    @classmethod
    def from_dict(cls, data: dict) -> "TuningGrid":
        aliases = {"min_df": "min_document_frequency", "C": "c"}
        kwargs = {}
        for key, value in data.items():
            key = aliases.get(key, key)
            if key not in cls.__dataclass_fields__:
                raise ValueError(f"unknown grid key {key!r}")
            kwargs[key] = value if key == "validation_fraction" else tuple(
                value if isinstance(value, list) else [value])
        return cls(**kwargs)

    @classmethod
    def load(cls, path) -> "TuningGrid":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def candidates(self):
        """Candidates in tie-break order: smaller c, smaller ngram_max, loss name, smaller min_df."""
        return itertools.product(sorted(set(self.c)), sorted(set(self.ngram_max)),
                                 sorted(set(self.loss)), sorted(set(self.min_document_frequency)))


@dataclass(frozen=True)
class TuningRow:
    c: float
    ngram_max: int
    loss: str
    min_document_frequency: int
    weighted_f1: float | None
    accuracy: float | None
    error: str | None = None


@dataclass(frozen=True)
class TuningResult:
    tfidf_config: TfidfConfig
    svm_config: SvmConfig
    validation_report: EvaluationReport
    rows: tuple

    def format_table(self) -> str:
        lines = [f"{'c':>10}{'ngram_max':>11}{'loss':>15}{'min_df':>8}{'val_f1':>10}{'val_acc':>10}"]
        for r in self.rows:
            if r.error is None:
                score = f"{r.weighted_f1:>10.4f}{r.accuracy:>10.4f}"
            else:
                score = f"{'failed':>10}{'':>10}  {r.error}"
            lines.append(f"{r.c:>10g}{r.ngram_max:>11d}{r.loss:>15}{r.min_document_frequency:>8d}{score}")
        return "\n".join(lines) + "\n"


def tune(corpus: Corpus, grid: TuningGrid = TuningGrid(), seed: int = DEFAULT_SEED,
         base_tfidf: TfidfConfig = TfidfConfig(), base_svm: SvmConfig | None = None,
         lexicon: EmoticonLexicon = DEFAULT_LEXICON) -> TuningResult:
    """Pick the grid point with the best validation weighted F1.

    Ties go to the earliest candidate in :meth:`TuningGrid.candidates` order.
    Candidates whose vocabulary comes out empty are recorded as failed rows.
    """
    base_svm = base_svm or SvmConfig(seed=seed)
    train, val = stratified_split(corpus, SplitSpec(grid.validation_fraction, seed))
    for part, name in ((train, "training"), (val, "validation")):
        if len(set(part.labels)) < 2:
            raise TrainingError(f"degenerate split: {name} side lacks a class")

    train_docs = [preprocess(t, lexicon) for t in train.texts]
    val_docs = [preprocess(t, lexicon) for t in val.texts]

    rows = []
    best = None
    for c, ngram_max, loss, min_df in grid.candidates():
        tfidf_cfg = replace(base_tfidf, ngram_max=ngram_max, min_document_frequency=min_df,
                            ngram_min=min(base_tfidf.ngram_min, ngram_max))
        svm_cfg = replace(base_svm, c=c, loss=loss)
        try:
            pipe = fit_from_docs(train_docs, train.labels, tfidf_cfg, svm_cfg, lexicon)
        except EmptyVocabularyError as exc:
            rows.append(TuningRow(c, ngram_max, loss, min_df, None, None, str(exc)))
            continue
        preds = [classify_doc(pipe, d).label for d in val_docs]
        report = evaluate(preds, val.labels)
        f1 = report.weighted_avg.f1
        rows.append(TuningRow(c, ngram_max, loss, min_df, f1, report.accuracy))
        if best is None or f1 > best[0]:
            best = (f1, tfidf_cfg, svm_cfg, report)

    if best is None:
        raise TrainingError("every grid candidate failed to produce a vocabulary")
    _, tfidf_cfg, svm_cfg, report = best
    return TuningResult(tfidf_cfg, svm_cfg, report, tuple(rows))
