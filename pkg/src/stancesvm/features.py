"""Word n-gram TF-IDF features with document-frequency cutoffs."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np


class EmptyVocabularyError(ValueError):
    pass


@dataclass(frozen=True)
class TfidfConfig:
    min_document_frequency: int = 5
    max_document_proportion: float = 0.95
    sublinear_tf: bool = True
    use_idf: bool = True
    ngram_min: int = 1
    ngram_max: int = 2

    def __post_init__(self):
        if not 1 <= self.ngram_min <= self.ngram_max:
            raise ValueError(f"need 1 <= ngram_min <= ngram_max, got ({self.ngram_min}, {self.ngram_max})")
        if self.min_document_frequency < 1:
            raise ValueError("min_document_frequency must be >= 1")
        if not 0.0 < self.max_document_proportion <= 1.0:
            raise ValueError("max_document_proportion must lie in (0, 1]")


@dataclass(frozen=True)
class SparseVector:
    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        val = np.asarray(self.values, dtype=np.float64)
        if idx.ndim != 1 or idx.shape != val.shape:
            raise ValueError("indices and values must be 1-d arrays of equal length")
        if idx.size > 1 and np.any(np.diff(idx) <= 0):
            raise ValueError("indices must be strictly increasing")
        if idx.size and idx[0] < 0:
            raise ValueError("indices must be non-negative")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    @classmethod
    def zeros(cls) -> "SparseVector":
        return cls(np.empty(0, np.int64), np.empty(0))

    @classmethod
    def from_dense(cls, dense) -> "SparseVector":
        dense = np.asarray(dense, dtype=np.float64)
        nz = np.flatnonzero(dense)
        return cls(nz, dense[nz])

    def to_dense(self, size: int) -> np.ndarray:
        out = np.zeros(size)
        out[self.indices] = self.values
        return out

    def __len__(self):
        return int(self.indices.size)


def extract_ngrams(tokens, ngram_min: int = 1, ngram_max: int = 2) -> list[str]:
    if not 1 <= ngram_min <= ngram_max:
        raise ValueError("need 1 <= ngram_min <= ngram_max")
    tokens = list(tokens)
    grams = []
    for n in range(ngram_min, ngram_max + 1):
        grams.extend(" ".join(tokens[i:i + n]) for i in range(len(tokens) - n + 1))
    return grams


@dataclass(frozen=True)
class TfidfModel:
    config: TfidfConfig
    vocabulary: dict
    idf: np.ndarray
    n_documents: int

    @property
    def size(self) -> int:
        return len(self.vocabulary)

    def feature_names(self) -> list[str]:
        return sorted(self.vocabulary, key=self.vocabulary.__getitem__)

    def transform(self, tokens) -> SparseVector:
        return transform(self, tokens)


def fit_vectorizer(docs, config: TfidfConfig = TfidfConfig()) -> TfidfModel:
    """Learn the vocabulary and idf weights from tokenized training documents."""
    docs = list(docs)
    if not docs:
        raise ValueError("cannot fit a vectorizer on zero documents")
    n = len(docs)
    df = Counter()
    for tokens in docs:
        df.update(set(extract_ngrams(tokens, config.ngram_min, config.ngram_max)))

    max_df = config.max_document_proportion * n
    kept = sorted(t for t, d in df.items()
                  if d >= config.min_document_frequency and d <= max_df)
    if not kept:
        raise EmptyVocabularyError(
            f"empty vocabulary: no n-gram has document frequency in "
            f"[{config.min_document_frequency}, {max_df:g}] over {n} documents")

    vocabulary = {t: i for i, t in enumerate(kept)}
    if config.use_idf:
        idf = np.array([math.log((1 + n) / (1 + df[t])) + 1.0 for t in kept])
    else:
        idf = np.ones(len(kept))
    idf.setflags(write=False)
    return TfidfModel(config, vocabulary, idf, n)


def transform(model: TfidfModel, tokens) -> SparseVector:
    cfg = model.config
    counts = Counter()
    for gram in extract_ngrams(tokens, cfg.ngram_min, cfg.ngram_max):
        j = model.vocabulary.get(gram)
        if j is not None:
            counts[j] += 1
    if not counts:
        return SparseVector.zeros()

    idx = np.array(sorted(counts), dtype=np.int64)
    tf = np.array([counts[j] for j in idx], dtype=np.float64)
    if cfg.sublinear_tf:
        tf = 1.0 + np.log(tf)
    values = tf * model.idf[idx]
    norm = math.sqrt(float(values @ values))
    if norm == 0.0:
        return SparseVector.zeros()
    return SparseVector(idx, values / norm)


def transform_many(model: TfidfModel, docs) -> list[SparseVector]:
    return [transform(model, tokens) for tokens in docs]
