"""End-to-end classifier: preprocessing, TF-IDF features and the linear SVM.

A comment whose emoticons give a clear majority polarity is labeled from the
emoticons alone and never reaches the SVM. Such comments still take part in
training, where their replacement words are ordinary features.
"""
from __future__ import annotations

import datetime as _dt
import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Corpus, Label
from .features import TfidfConfig, TfidfModel, fit_vectorizer, transform
from .linear_svm import SvmConfig, SvmModel, decision_value, train_svm
from .textprep import DEFAULT_LEXICON, EmoticonLexicon, PreprocessedDoc, Verdict, preprocess

FORMAT_NAME = "stancesvm-model"
FORMAT_VERSION = 1

ROUTE_EMOTICON = "emoticon"
ROUTE_SVM = "svm"


class TrainingError(RuntimeError):
    """The corpus cannot produce a usable model."""


class ModelFileError(ValueError):
    """The model file is unreadable or has been altered."""


class ModelVersionError(ModelFileError):
    pass


@dataclass(frozen=True)
class Classification:
    label: Label
    route: str
    decision_value: float | None = None


@dataclass(frozen=True)
class Pipeline:
    lexicon: EmoticonLexicon
    tfidf: TfidfModel
    svm: SvmModel
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.svm.n_features != self.tfidf.size:
            raise ValueError(
                f"SVM has {self.svm.n_features} weights but the vocabulary has {self.tfidf.size} terms")

    def classify(self, raw_text: str) -> Classification:
        return classify(self, raw_text)


def _require_both_classes(labels):
    present = set(labels)
    if len(present) < 2:
        only = next(iter(present)) if present else None
        raise TrainingError(f"training data must contain both classes (only saw {only})")


def fit_from_docs(docs: list[PreprocessedDoc], labels, tfidf_config: TfidfConfig,
                  svm_config: SvmConfig, lexicon: EmoticonLexicon, metadata=None) -> Pipeline:
    """Fit features and SVM on already-preprocessed documents."""
    labels = list(labels)
    _require_both_classes(labels)
    tokens = [d.tokens for d in docs]
    tfidf = fit_vectorizer(tokens, tfidf_config)
    vectors = [transform(tfidf, t) for t in tokens]
    svm = train_svm(vectors, labels, svm_config, n_features=tfidf.size)
    return Pipeline(lexicon, tfidf, svm, dict(metadata or {}))


def train_pipeline(corpus: Corpus, tfidf_config: TfidfConfig = TfidfConfig(),
                   svm_config: SvmConfig = SvmConfig(),
                   lexicon: EmoticonLexicon = DEFAULT_LEXICON) -> Pipeline:
    if len(corpus) == 0:
        raise TrainingError("cannot train on an empty corpus")
    _require_both_classes(corpus.labels)
    docs = [preprocess(text, lexicon) for text in corpus.texts]
    metadata = {
        "corpus_size": len(corpus),
        "seed": svm_config.seed,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "format_version": FORMAT_VERSION,
    }
    return fit_from_docs(docs, corpus.labels, tfidf_config, svm_config, lexicon, metadata)


def classify_doc(pipeline: Pipeline, doc: PreprocessedDoc) -> Classification:
    verdict = doc.verdict.verdict
    if verdict is Verdict.POSITIVE:
        return Classification(Label.APPROVE, ROUTE_EMOTICON)
    if verdict is Verdict.NEGATIVE:
        return Classification(Label.DISAPPROVE, ROUTE_EMOTICON)
    score = decision_value(pipeline.svm, transform(pipeline.tfidf, doc.tokens))
    label = Label.APPROVE if score >= 0.0 else Label.DISAPPROVE
    return Classification(label, ROUTE_SVM, score)


def classify(pipeline: Pipeline, raw_text: str) -> Classification:
    return classify_doc(pipeline, preprocess(raw_text, pipeline.lexicon))


# -- persistence -------------------------------------------------------------

def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True,
                      allow_nan=False) + "\n"


def _digest(version: int, payload) -> str:
    body = _canonical({"format_version": version, "payload": payload})
    return "sha256:" + hashlib.sha256(body.encode("ascii")).hexdigest()


def _payload(p: Pipeline) -> dict:
    return {
        "lexicon": p.lexicon.to_dict(),
        "tfidf": {
            "config": asdict(p.tfidf.config),
            "vocabulary": p.tfidf.feature_names(),
            "idf": p.tfidf.idf.tolist(),
            "n_documents": p.tfidf.n_documents,
        },
        "svm": {
            "config": asdict(p.svm.config),
            "weights": p.svm.weights.tolist(),
            "bias": p.svm.bias,
            "converged": p.svm.converged,
            "epochs": p.svm.epochs,
            "label_map": {str(k): v for k, v in SvmModel.label_map.items()},
        },
        "metadata": p.metadata,
    }


def save_pipeline(pipeline: Pipeline, path) -> None:
    payload = _payload(pipeline)
    doc = {
        "format": FORMAT_NAME,
        "format_version": FORMAT_VERSION,
        "checksum": _digest(FORMAT_VERSION, payload),
        "payload": payload,
    }
    Path(path).write_text(_canonical(doc), encoding="ascii")


def load_pipeline(path) -> Pipeline:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ModelFileError(f"cannot read model {path}: {exc}") from exc
    try:
        text = raw.decode("ascii")
        doc = json.loads(text)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFileError(f"{path}: corrupted model file ({exc})") from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise ModelFileError(f"{path}: not a {FORMAT_NAME} file")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelVersionError(
            f"{path}: unsupported model format version {version!r} (expected {FORMAT_VERSION})")
    # Re-encoding must reproduce the file exactly; this catches edits that
    # parse to the same values (e.g. "1e5" -> "1E5").
    if _canonical(doc) != text:
        raise ModelFileError(f"{path}: corrupted model file (non-canonical encoding)")
    payload = doc.get("payload")
    if doc.get("checksum") != _digest(version, payload):
        raise ModelFileError(f"{path}: checksum mismatch, model file is corrupted")
    try:
        return _from_payload(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFileError(f"{path}: malformed payload ({exc})") from exc


def _from_payload(payload) -> Pipeline:
    t = payload["tfidf"]
    vocab = {term: i for i, term in enumerate(t["vocabulary"])}
    idf = np.asarray(t["idf"], dtype=np.float64)
    idf.setflags(write=False)
    tfidf = TfidfModel(TfidfConfig(**t["config"]), vocab, idf, int(t["n_documents"]))

    s = payload["svm"]
    weights = np.asarray(s["weights"], dtype=np.float64)
    weights.setflags(write=False)
    svm = SvmModel(weights, float(s["bias"]), SvmConfig(**s["config"]),
                   bool(s["converged"]), int(s["epochs"]))
    lexicon = EmoticonLexicon.from_dict(payload["lexicon"])
    return Pipeline(lexicon, tfidf, svm, dict(payload["metadata"]))
