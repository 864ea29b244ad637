"""Labeled comment corpora: loading, validation and stratified splitting."""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

DEFAULT_SEED = 42


class CorpusError(ValueError):
    """Raised for unreadable or malformed corpus input."""


class Label(enum.IntEnum):
    """Stance label. Integer values double as report row indices."""

    DISAPPROVE = 0
    APPROVE = 1

    def __str__(self):
        return self.name.lower()

    @property
    def sign(self) -> int:
        return 1 if self is Label.APPROVE else -1


_LABEL_ALIASES = {
    "approve": Label.APPROVE,
    "positive": Label.APPROVE,
    "1": Label.APPROVE,
    "disapprove": Label.DISAPPROVE,
    "negative": Label.DISAPPROVE,
    "0": Label.DISAPPROVE,
}


def parse_label(value: str) -> Label:
    try:
        return _LABEL_ALIASES[value.strip().lower()]
    except (KeyError, AttributeError):
        raise CorpusError(f"unknown label {value!r}") from None


@dataclass(frozen=True)
class LabeledComment:
    id: int
    text: str
    label: Label


@dataclass(frozen=True)
class Corpus:
    comments: tuple[LabeledComment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "comments", tuple(self.comments))
        ids = [c.id for c in self.comments]
        if len(set(ids)) != len(ids):
            raise CorpusError("comment ids must be unique")

    def __len__(self):
        return len(self.comments)

    def __iter__(self):
        return iter(self.comments)

    @property
    def texts(self) -> list[str]:
        return [c.text for c in self.comments]

    @property
    def labels(self) -> list[Label]:
        return [c.label for c in self.comments]

    @property
    def ids(self) -> list[int]:
        return [c.id for c in self.comments]

    def class_counts(self) -> dict[Label, int]:
        counts = {Label.DISAPPROVE: 0, Label.APPROVE: 0}
        for c in self.comments:
            counts[c.label] += 1
        return counts

    @classmethod
    def from_pairs(cls, pairs) -> "Corpus":
        """Build a corpus from ``(text, label)`` pairs, numbering ids from 0."""
        return cls(tuple(
            LabeledComment(i, text, label if isinstance(label, Label) else parse_label(str(label)))
            for i, (text, label) in enumerate(pairs)
        ))


@dataclass(frozen=True)
class SplitSpec:
    test_fraction: float = 0.2
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not 0.0 <= self.test_fraction <= 1.0 or math.isnan(self.test_fraction):
            raise ValueError(f"test_fraction must lie in [0, 1], got {self.test_fraction}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def infer_format(path) -> str:
    suffix = Path(path).suffix.lower()
    return "jsonl" if suffix in (".jsonl", ".ndjson") else "csv"


def load_corpus(path, format: str | None = None) -> Corpus:
    """Read a ``text,label`` CSV or a JSONL file into a :class:`Corpus`.

    Row numbers in error messages count data records from 1 (the CSV header
    is not a record).
    """
    format = (format or infer_format(path)).lower()
    if format not in ("csv", "jsonl"):
        raise CorpusError(f"unsupported corpus format {format!r}")
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CorpusError(f"cannot read corpus {path}: {exc}") from exc

    records = _read_csv(raw) if format == "csv" else _read_jsonl(raw)
    comments = []
    for row, (text, label) in enumerate(records, start=1):
        try:
            parsed = parse_label(label)
        except CorpusError:
            raise CorpusError(f"row {row}: unknown label {label!r}") from None
        comments.append(LabeledComment(len(comments), text, parsed))
    return Corpus(tuple(comments))


def _read_csv(raw: str):
    reader = csv.reader(io.StringIO(raw, newline=""), strict=True)
    try:
        header = next(reader, None)
    except csv.Error as exc:
        raise CorpusError(f"malformed CSV header: {exc}") from exc
    if header is None:
        return
    header = [h.strip().lower() for h in header]
    if "text" not in header or "label" not in header:
        raise CorpusError(f"CSV header must contain 'text' and 'label', got {header}")
    ti, li = header.index("text"), header.index("label")
    row = 0
    while True:
        try:
            fields = next(reader)
        except StopIteration:
            return
        except csv.Error as exc:
            raise CorpusError(f"row {row + 1}: malformed CSV: {exc}") from exc
        row += 1
        if not fields:
            row -= 1
            continue
        if len(fields) != len(header):
            raise CorpusError(f"row {row}: expected {len(header)} fields, got {len(fields)}")
        yield fields[ti], fields[li]


def _read_jsonl(raw: str):
    row = 0
    for line in raw.split("\n"):
        if not line.strip():
            continue
        row += 1
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"row {row}: invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise CorpusError(f"row {row}: expected a JSON object")
        text, label = obj.get("text"), obj.get("label")
        if not isinstance(text, str) or not isinstance(label, str):
            raise CorpusError(f"row {row}: 'text' and 'label' must be strings")
        yield text, label


def write_corpus(corpus: Corpus, path, format: str | None = None) -> None:
    format = (format or infer_format(path)).lower()
    path = Path(path)
    if format == "jsonl":
        lines = [json.dumps({"text": c.text, "label": str(c.label)}, ensure_ascii=False)
                 for c in corpus]
        path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    elif format == "csv":
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\r\n")
            writer.writerow(["text", "label"])
            for c in corpus:
                writer.writerow([c.text, str(c.label)])
    else:
        raise CorpusError(f"unsupported corpus format {format!r}")


def _test_count(n: int, fraction: float) -> int:
    # round half up; the epsilon absorbs products like 0.35 * 10 = 3.4999999999999996
    return min(n, math.floor(n * fraction + 0.5 + 1e-9))


def stratified_split(corpus: Corpus, spec: SplitSpec = SplitSpec()) -> tuple[Corpus, Corpus]:
    """Seeded per-class holdout. Both halves keep the corpus' load order."""
    if not isinstance(spec, SplitSpec):
        raise TypeError("spec must be a SplitSpec")
    if len(corpus) == 0 and 0.0 < spec.test_fraction < 1.0:
        raise CorpusError("cannot split an empty corpus")

    rng = np.random.default_rng(spec.seed)
    test_positions = set()
    for label in (Label.DISAPPROVE, Label.APPROVE):
        positions = [i for i, c in enumerate(corpus.comments) if c.label is label]
        k = _test_count(len(positions), spec.test_fraction)
        order = rng.permutation(len(positions))
        test_positions.update(positions[j] for j in order[:k])

    train = tuple(c for i, c in enumerate(corpus.comments) if i not in test_positions)
    test = tuple(c for i, c in enumerate(corpus.comments) if i in test_positions)
    return Corpus(train), Corpus(test)
