"""Synthetic corpus whose label is decided by word order, not word choice.

Every comment mentions a displaced group and an armed group, each followed
directly by a predicate. Approve comments attach the sympathetic predicate to
the displaced group and the hostile one to the armed group; Disapprove
comments swap them. Comments are generated in pairs that share every token,
so each unigram has identical counts in both classes while the
subject-predicate bigrams decide the label.
"""
from __future__ import annotations

import numpy as np

from .corpus import DEFAULT_SEED, Corpus, Label, LabeledComment

DISPLACED = ("rohingya", "refugees", "migrants", "villagers", "families", "muslims")
ARMED = ("army", "military", "soldiers", "junta", "militia", "generals")
SYMPATHETIC = (
    "deserve shelter", "need protection", "suffer greatly", "seek peace",
    "want safety", "lost everything",
)
HOSTILE = (
    "spread terror", "commit crimes", "threaten everyone", "bring violence",
    "cause trouble", "burn houses",
)
OPENERS = ("", "honestly", "i think", "everyone knows", "in my opinion", "clearly", "sadly")
JOINERS = ("and", "while", "but", "whereas")
CLOSERS = ("", "for sure", "that is the truth", "look at the news", "share this")


def _pick(rng, options):
    return options[int(rng.integers(len(options)))]


def _render(opener, clauses, joiner, closer):
    parts = [opener, f"the {clauses[0]}", joiner, f"the {clauses[1]}", closer]
    return " ".join(p for p in parts if p)


def generate_context_corpus(n_per_class: int, seed: int = DEFAULT_SEED) -> Corpus:
    """Return ``2 * n_per_class`` comments, alternating Approve/Disapprove."""
    if n_per_class < 1:
        raise ValueError("n_per_class must be >= 1")
    rng = np.random.default_rng(seed)
    comments = []
    for _ in range(n_per_class):
        displaced, armed = _pick(rng, DISPLACED), _pick(rng, ARMED)
        kind, cruel = _pick(rng, SYMPATHETIC), _pick(rng, HOSTILE)
        opener, joiner, closer = _pick(rng, OPENERS), _pick(rng, JOINERS), _pick(rng, CLOSERS)
        displaced_first = bool(rng.integers(2))

        for label, (d_pred, a_pred) in ((Label.APPROVE, (kind, cruel)),
                                        (Label.DISAPPROVE, (cruel, kind))):
            clauses = [f"{displaced} {d_pred}", f"{armed} {a_pred}"]
            if not displaced_first:
                clauses.reverse()
            text = _render(opener, clauses, joiner, closer)
            comments.append(LabeledComment(len(comments), text, label))
    return Corpus(tuple(comments))
