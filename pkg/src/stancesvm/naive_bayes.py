"""Multinomial Naive Bayes over unigrams with additive smoothing."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .corpus import Label

CLASSES = (Label.DISAPPROVE, Label.APPROVE)


@dataclass(frozen=True)
class NbModel:
    log_prior: dict
    log_likelihood: dict
    smoothing_alpha: float
    vocabulary: frozenset
    class_token_totals: dict
    token_counts: dict

    def token_probability(self, token: str, label: Label) -> float:
        """Smoothed ``P(token | label)`` computed from the raw counts."""
        if token not in self.vocabulary:
            raise KeyError(token)
        label = Label(label)
        v = len(self.vocabulary)
        return ((self.token_counts[label].get(token, 0) + self.smoothing_alpha)
                / (self.class_token_totals[label] + self.smoothing_alpha * v))


def train_nb(docs, labels, alpha: float = 1.0) -> NbModel:
    """Fit class priors and Laplace/Lidstone-smoothed token likelihoods.

    ``P(t|c) = (count(t, c) + alpha) / (total_tokens(c) + alpha * |V|)``
    """
    docs, labels = list(docs), [Label(lab) for lab in labels]
    if len(docs) != len(labels):
        raise ValueError(f"got {len(docs)} documents but {len(labels)} labels")
    if not docs:
        raise ValueError("cannot train on zero documents")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    missing = [c for c in CLASSES if c not in labels]
    if missing:
        raise ValueError(f"class {missing[0]} is absent from the training labels")

    counts = {c: Counter() for c in CLASSES}
    n_docs = Counter(labels)
    for tokens, label in zip(docs, labels):
        counts[label].update(tokens)
    vocabulary = frozenset(t for c in CLASSES for t in counts[c])
    v = len(vocabulary)

    totals = {c: sum(counts[c].values()) for c in CLASSES}
    log_prior = {c: math.log(n_docs[c] / len(docs)) for c in CLASSES}
    log_likelihood = {}
    for c in CLASSES:
        if not vocabulary:
            log_likelihood[c] = {}
            continue
        denom = math.log(totals[c] + alpha * v)
        log_likelihood[c] = {t: math.log(counts[c][t] + alpha) - denom for t in vocabulary}
    return NbModel(log_prior, log_likelihood, alpha, vocabulary, totals,
                   {c: dict(counts[c]) for c in CLASSES})


def class_log_scores(model: NbModel, tokens) -> dict:
    scores = dict(model.log_prior)
    for token, tf in Counter(tokens).items():
        if token in model.vocabulary:
            for c in CLASSES:
                scores[c] += tf * model.log_likelihood[c][token]
    return scores


def predict_nb(model: NbModel, tokens) -> Label:
    """Highest-scoring class; an exact tie goes to Approve."""
    scores = class_log_scores(model, tokens)
    if scores[Label.APPROVE] >= scores[Label.DISAPPROVE]:
        return Label.APPROVE
    return Label.DISAPPROVE
