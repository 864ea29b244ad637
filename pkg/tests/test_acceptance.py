"""Acceptance checks, one per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or
``python tests/test_acceptance.py`` for a plain summary.
"""
import json
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracles import brute_force_tfidf, dense_nb_scores, svm_dual_qp_bruteforce  # noqa: E402
import stancesvm.pipeline as pipeline_mod  # noqa: E402
from stancesvm.compare import compare  # noqa: E402
from stancesvm.corpus import Label  # noqa: E402
from stancesvm.evalreport import ConfusionMatrix, class_metrics, f1_score, summarize  # noqa: E402
from stancesvm.features import EmptyVocabularyError, SparseVector, TfidfConfig, fit_vectorizer, transform  # noqa: E402
from stancesvm.linear_svm import SvmConfig, primal_objective, train_svm  # noqa: E402
from stancesvm.naive_bayes import class_log_scores, train_nb  # noqa: E402
from stancesvm.pipeline import classify, load_pipeline, save_pipeline, train_pipeline  # noqa: E402
from stancesvm.porter import porter_stem  # noqa: E402
from stancesvm.synthetic import generate_context_corpus  # noqa: E402
from stancesvm.textprep import DEFAULT_LEXICON, apply_emoticons, normalize  # noqa: E402

DATA = Path(__file__).resolve().parent / "data"
A, D = Label.APPROVE, Label.DISAPPROVE


def report(name, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok


def _vectors(X):
    return [SparseVector.from_dense(row) for row in X]


# -- 2 -----------------------------------------------------------------------

def check_svm_beats_nb():
    start = time.perf_counter()
    corpus = generate_context_corpus(2500, seed=42)
    r = compare(corpus, seed=42)
    elapsed = time.perf_counter() - start
    gap = r.svm.accuracy - r.nb.accuracy
    ok = gap >= 0.10 and r.svm.accuracy >= 0.95 and elapsed < 30.0
    return report("2 SVM>NB gap", ok,
                  f"svm={r.svm.accuracy:.4f} nb={r.nb.accuracy:.4f} gap={gap:+.4f} time={elapsed:.1f}s")


# -- 3 -----------------------------------------------------------------------

def check_preprocessing_goldens():
    cases = json.loads((DATA / "normalize_golden.json").read_text(encoding="utf-8"))
    headline = [
        normalize("I'm happyyyyy") == "i'm happyy",
        normalize("#Apple is great") == "apple is great",
        apply_emoticons(normalize(":)"), DEFAULT_LEXICON)[0] == "positive",
    ]
    failures = [src for src, want in cases if normalize(src) != want]
    extra = len(cases) - 2
    ok = all(headline) and not failures and extra >= 20
    return report("3 preprocessing goldens", ok,
                  f"headline {sum(headline)}/3, {len(cases) - len(failures)}/{len(cases)} frozen cases")


# -- 4 -----------------------------------------------------------------------

def check_porter():
    words = (DATA / "porter_voc.txt").read_text(encoding="utf-8").split()
    stems = (DATA / "porter_output.txt").read_text(encoding="utf-8").split()
    agree = sum(porter_stem(w) == s for w, s in zip(words, stems))
    ok = len(words) == len(stems) and agree == len(words) and len(words) >= 1000
    return report("4 Porter stemmer", ok, f"{agree}/{len(words)} words agree")


# -- 5 -----------------------------------------------------------------------

def check_tfidf_oracle(n=200):
    rng = np.random.default_rng(5)
    worst, bad_norm, mismatched = 0.0, 0, 0
    for _ in range(n):
        docs = [[f"t{int(v)}" for v in rng.integers(0, 6, rng.integers(0, 9))]
                for _ in range(int(rng.integers(1, 21)))]
        min_df = int(rng.integers(1, 3))
        max_prop = float(rng.choice([0.5, 0.95, 1.0]))
        terms, idf, dense = brute_force_tfidf(docs, min_df, max_prop)
        cfg = TfidfConfig(min_document_frequency=min_df, max_document_proportion=max_prop)
        if not terms:
            try:
                fit_vectorizer(docs, cfg)
                mismatched += 1
            except EmptyVocabularyError:
                pass
            continue
        model = fit_vectorizer(docs, cfg)
        if model.feature_names() != terms:
            mismatched += 1
            continue
        worst = max(worst, float(np.max(np.abs(model.idf - idf))))
        for doc, row in zip(docs, dense):
            v = transform(model, doc)
            worst = max(worst, float(np.max(np.abs(v.to_dense(model.size) - row))))
            if len(v) and abs(np.linalg.norm(v.values) - 1.0) > 1e-12:
                bad_norm += 1
    ok = worst <= 1e-9 and bad_norm == 0 and mismatched == 0
    return report("5 TF-IDF oracle", ok,
                  f"{n} corpora, max abs diff {worst:.2e}, bad norms {bad_norm}, vocab mismatches {mismatched}")


# -- 6 -----------------------------------------------------------------------

def check_svm_analytic():
    x = [SparseVector([0], [1.0]), SparseVector([0], [-1.0])]
    got = {}
    for loss, want in (("hinge", 0.2), ("squared_hinge", 2 / 7)):
        m = train_svm(x, [A, D], SvmConfig(c=0.1, loss=loss, fit_bias=False), n_features=1)
        got[loss] = (float(m.weights[0]), want)
    ok = all(abs(g - w) <= 1e-4 for g, w in got.values())
    return report("6a SVM two-point analytic", ok,
                  ", ".join(f"{k}: w={g:.6f} (want {w:.6f})" for k, (g, w) in got.items()))


def _random_problem(rng):
    n = int(rng.integers(20, 61))
    d = int(rng.integers(5, 21))
    X = rng.random((n, d)) * (rng.random((n, d)) < 0.3)
    norms = np.linalg.norm(X, axis=1, keepdims=True)
    X = np.divide(X, norms, out=np.zeros_like(X), where=norms > 0)
    y = rng.integers(0, 2, n)
    return X, y


def check_primal_monotone(n=50):
    rng = np.random.default_rng(6)
    rising, worst = 0, 0.0
    for k in range(n):
        X, y = _random_problem(rng)
        cfg = SvmConfig(loss=("squared_hinge", "hinge")[k % 2])
        m = train_svm(_vectors(X), [Label(v) for v in y], cfg, n_features=X.shape[1])
        trace = np.array(m.objective_trace)
        steps = np.diff(trace) - 1e-12 * np.maximum(1.0, np.abs(trace[:-1]))
        if np.any(steps > 0):
            rising += 1
            worst = max(worst, float(np.max(np.diff(trace))))
    return report("6b SVM primal non-increasing", rising == 0,
                  f"{n - rising}/{n} instances monotone, largest rise {worst:.3e}")


def check_svm_qp_oracle(n=50):
    rng = np.random.default_rng(7)
    worst = 0.0
    for k in range(n):
        npts = int(rng.integers(2, 7))
        d = int(rng.integers(1, 4))
        X = rng.normal(size=(npts, d)) * (rng.random((npts, d)) < 0.7)
        y = rng.integers(0, 2, npts)
        loss = ("hinge", "squared_hinge")[k % 2]
        cfg = SvmConfig(c=float(10 ** rng.uniform(-1, 1)), loss=loss, tolerance=1e-8, max_epochs=20000)
        labels = [Label(v) for v in y]
        m = train_svm(_vectors(X), labels, cfg, n_features=d)
        _, oracle = svm_dual_qp_bruteforce(X, np.where(y == 1, 1.0, -1.0), cfg.c, loss)
        worst = max(worst, abs(primal_objective(m, _vectors(X), labels) - oracle))
    return report("6c SVM vs brute-force QP", worst <= 1e-3, f"{n} instances, max |diff| {worst:.2e}")


def check_svm_determinism():
    rng = np.random.default_rng(8)
    X, y = _random_problem(rng)
    labels = [Label(v) for v in y]
    a = train_svm(_vectors(X), labels, SvmConfig(seed=11))
    b = train_svm(_vectors(X), labels, SvmConfig(seed=11))
    corpus = generate_context_corpus(100, seed=2)
    pa, pb = train_pipeline(corpus), train_pipeline(corpus)
    ok = (a.weights.tobytes() == b.weights.tobytes() and a.bias == b.bias
          and pa.svm.weights.tobytes() == pb.svm.weights.tobytes())
    return report("6d SVM determinism", ok, "byte-identical weights" if ok else "weights differ")


# -- 7 -----------------------------------------------------------------------

def check_nb_oracle(n=100):
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(n):
        docs = [[f"w{int(v)}" for v in rng.integers(0, 6, rng.integers(0, 7))]
                for _ in range(int(rng.integers(2, 11)))]
        labels = [int(v) for v in rng.integers(0, 2, len(docs))]
        labels[0], labels[1] = 0, 1
        alpha = float(rng.choice([0.5, 1.0, 2.0]))
        query = [f"w{int(v)}" for v in rng.integers(0, 8, rng.integers(0, 6))]
        model = train_nb(docs, [Label(v) for v in labels], alpha)
        got = class_log_scores(model, query)
        want = dense_nb_scores(docs, labels, query, alpha)
        worst = max(worst, abs(got[D] - want[0]), abs(got[A] - want[1]))
    toy = train_nb([["good"], ["bad"]], [A, D], alpha=1.0)
    exact = toy.token_probability("good", A) == 2 / 3
    return report("7 NB oracle", worst <= 1e-9 and exact,
                  f"{n} corpora, max |diff| {worst:.2e}, P(good|approve)=2/3 exact: {exact}")


# -- 8 -----------------------------------------------------------------------

def check_metrics(n=1000):
    shown = f"{f1_score(0.78, 0.79):.2f}"
    # Approve column: tp=78*79, fp=22*79 -> precision 0.78; fn=21*78 -> recall 0.79
    cm = ConfusionMatrix([[6000, 1738], [1638, 6162]])
    m = class_metrics(cm, A)
    via_class = f"{m.precision:.2f}/{m.recall:.2f}/{m.f1:.2f}"
    rng = np.random.default_rng(10)
    mismatches = 0
    for _ in range(n):
        counts = rng.integers(0, 500, (2, 2))
        if counts.sum() == 0:
            counts[0, 0] = 1
        r = summarize(ConfusionMatrix(counts))
        mismatches += r.accuracy != r.weighted_avg.recall
    ok = shown == "0.78" and via_class == "0.78/0.79/0.78" and mismatches == 0
    return report("8 metrics", ok,
                  f"f1(0.78,0.79) shows {shown} (class_metrics p/r/f1 {via_class}), "
                  f"accuracy != weighted recall on {mismatches}/{n} matrices")


# -- 9 and 10 ----------------------------------------------------------------

_WORDS = ("the", "refugees", "army", "deserve", "shelter", "burn", "houses", "and", "while",
          "rohingya", "soldiers", "need", "protection", "spread", "terror", "zzz", "#help", "@bob",
          "http://x.y", "sooooo", "!!!")
_EMOTICONS = (":)", ":(", ":d", ":-(", "<3", ":'(", "=)")


def _random_texts(rng, n):
    out = []
    for _ in range(n):
        words = list(rng.choice(_WORDS, int(rng.integers(0, 12))))
        for _ in range(int(rng.integers(0, 3))):
            words.insert(int(rng.integers(0, len(words) + 1)), str(rng.choice(_EMOTICONS)))
        out.append(" ".join(words))
    return out


@pytest.fixture(scope="module")
def trained():
    return train_pipeline(generate_context_corpus(300, seed=42))


def check_short_circuit(pipe, n=500):
    rng = np.random.default_rng(11)
    calls = {"n": 0}
    real = pipeline_mod.decision_value

    def counting(model, x):
        calls["n"] += 1
        return real(model, x)

    pipeline_mod.decision_value = counting
    leaked = decisive = 0
    try:
        for text in _random_texts(rng, n):
            before = calls["n"]
            r = classify(pipe, text)
            if r.route == "emoticon":
                decisive += 1
                leaked += calls["n"] != before
            elif calls["n"] != before + 1:
                leaked += 1
    finally:
        pipeline_mod.decision_value = real
    return report("9 emoticon short-circuit", leaked == 0 and decisive > 0,
                  f"{decisive} decisive comments, {leaked} unexpected SVM calls")


def check_round_trip(pipe, tmp_dir, n=1000):
    path = Path(tmp_dir) / "model.json"
    save_pipeline(pipe, path)
    loaded = load_pipeline(path)
    rng = np.random.default_rng(12)
    disagree, worst = 0, 0.0
    for text in _random_texts(rng, n):
        a, b = classify(pipe, text), classify(loaded, text)
        if (a.label, a.route) != (b.label, b.route):
            disagree += 1
        elif a.decision_value is not None:
            worst = max(worst, abs(a.decision_value - b.decision_value))
    return report("10 persistence round-trip", disagree == 0 and worst <= 1e-12,
                  f"{n} inputs, {disagree} label/route mismatches, max value diff {worst:.1e}")


# -- pytest entry points -----------------------------------------------------

def test_criterion_2_svm_beats_nb():
    assert check_svm_beats_nb()


def test_criterion_3_preprocessing_goldens():
    assert check_preprocessing_goldens()


def test_criterion_4_porter():
    assert check_porter()


def test_criterion_5_tfidf_oracle():
    assert check_tfidf_oracle()


def test_criterion_6a_svm_analytic():
    assert check_svm_analytic()


def test_criterion_6b_primal_monotone():
    assert check_primal_monotone()


def test_criterion_6c_svm_qp_oracle():
    assert check_svm_qp_oracle()


def test_criterion_6d_svm_determinism():
    assert check_svm_determinism()


def test_criterion_7_nb_oracle():
    assert check_nb_oracle()


def test_criterion_8_metrics():
    assert check_metrics()


def test_criterion_9_short_circuit(trained):
    assert check_short_circuit(trained)


def test_criterion_10_round_trip(trained, tmp_path):
    assert check_round_trip(trained, tmp_path)


if __name__ == "__main__":
    import tempfile

    pipe = train_pipeline(generate_context_corpus(300, seed=42))
    with tempfile.TemporaryDirectory() as tmp:
        results = [
            check_svm_beats_nb(), check_preprocessing_goldens(), check_porter(), check_tfidf_oracle(),
            check_svm_analytic(), check_primal_monotone(), check_svm_qp_oracle(), check_svm_determinism(),
            check_nb_oracle(), check_metrics(), check_short_circuit(pipe), check_round_trip(pipe, tmp),
        ]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
