"""Side-by-side evaluation of the bigram SVM pipeline and the unigram NB baseline."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from .corpus import DEFAULT_SEED, Corpus, SplitSpec, stratified_split
from .evalreport import CLASS_ORDER, EvaluationReport, evaluate
from .features import TfidfConfig
from .linear_svm import SvmConfig
from .naive_bayes import predict_nb, train_nb
from .pipeline import TrainingError, classify_doc, fit_from_docs
from .textprep import DEFAULT_LEXICON, EmoticonLexicon, preprocess

CHART_METRICS = ("precision", "recall", "f1", "accuracy")


@dataclass(frozen=True)
class ComparisonReport:
    svm: EvaluationReport
    nb: EvaluationReport
    svm_train_ids: frozenset
    nb_train_ids: frozenset
    test_ids: frozenset
    seed: int

    @property
    def accuracy_delta(self) -> float:
        return self.svm.accuracy - self.nb.accuracy

    def metric_rows(self):
        """``(name, svm_value, nb_value)`` for every reported metric."""
        rows = [("accuracy", self.svm.accuracy, self.nb.accuracy)]
        for attr in ("precision", "recall", "f1"):
            rows.append((attr, getattr(self.svm.weighted_avg, attr), getattr(self.nb.weighted_avg, attr)))
        for c in CLASS_ORDER:
            for attr in ("precision", "recall", "f1"):
                rows.append((f"{attr}_{int(c)}", getattr(self.svm.per_class[c], attr),
                             getattr(self.nb.per_class[c], attr)))
        return rows

    def to_csv(self) -> str:
        lines = ["metric,svm,naive_bayes,delta"]
        for name, s, n in self.metric_rows():
            lines.append(f"{name},{s:.6f},{n:.6f},{s - n:.6f}")
        lines.append(f"support,{self.svm.weighted_avg.support},{self.nb.weighted_avg.support},0")
        return "\n".join(lines) + "\n"

    def chart_values(self) -> dict:
        def pick(r):
            return {"precision": r.weighted_avg.precision, "recall": r.weighted_avg.recall,
                    "f1": r.weighted_avg.f1, "accuracy": r.accuracy}
        return {"SVM (1-2 grams)": pick(self.svm), "Naive Bayes (unigrams)": pick(self.nb)}

    def to_svg(self) -> str:
        return bar_chart_svg(self.chart_values(), title="SVM vs Naive Bayes on held-out comments")


def compare(corpus: Corpus, seed: int = DEFAULT_SEED, tfidf_config: TfidfConfig = TfidfConfig(),
            svm_config: SvmConfig | None = None, alpha: float = 1.0,
            lexicon: EmoticonLexicon = DEFAULT_LEXICON, test_fraction: float = 0.2) -> ComparisonReport:
    """Train both classifiers on one stratified split and score them on the same test side.

    The SVM side is the full pipeline, emoticon short-circuit included; NB
    sees only the unigram tokens.
    """
    svm_config = svm_config or SvmConfig(seed=seed)
    if len(set(corpus.labels)) < 2:
        raise TrainingError("comparison needs both classes in the corpus")
    train, test = stratified_split(corpus, SplitSpec(test_fraction, seed))
    train_docs = [preprocess(t, lexicon) for t in train.texts]
    test_docs = [preprocess(t, lexicon) for t in test.texts]

    pipe = fit_from_docs(train_docs, train.labels, tfidf_config, svm_config, lexicon)
    nb = train_nb([d.tokens for d in train_docs], train.labels, alpha)

    svm_report = evaluate([classify_doc(pipe, d).label for d in test_docs], test.labels)
    nb_report = evaluate([predict_nb(nb, d.tokens) for d in test_docs], test.labels)
    train_ids = frozenset(train.ids)
    return ComparisonReport(svm_report, nb_report, train_ids, train_ids, frozenset(test.ids), seed)


def bar_chart_svg(groups: dict, title: str = "", width: int = 640, height: int = 360) -> str:
    """Grouped bar chart of values in [0, 1]: one group per metric, one bar per series."""
    series = list(groups)
    metrics = list(next(iter(groups.values())))
    colors = ("#4472c4", "#ed7d31", "#70ad47", "#7f7f7f")
    left, right, top, bottom = 50, 20, 40, 60
    plot_w, plot_h = width - left - right, height - top - bottom
    group_w = plot_w / len(metrics)
    bar_w = group_w * 0.8 / len(series)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
           f'<rect width="{width}" height="{height}" fill="white"/>']
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for tick in range(0, 11, 2):
        v = tick / 10
        y = top + plot_h * (1 - v)
        out.append(f'<line x1="{left}" y1="{y:.1f}" x2="{width - right}" y2="{y:.1f}" stroke="#ddd"/>')
        out.append(f'<text x="{left - 6}" y="{y + 4:.1f}" text-anchor="end">{v:.1f}</text>')
    for g, metric in enumerate(metrics):
        x0 = left + g * group_w + group_w * 0.1
        for s, name in enumerate(series):
            v = min(max(float(groups[name][metric]), 0.0), 1.0)
            h = plot_h * v
            x = x0 + s * bar_w
            out.append(f'<rect x="{x:.1f}" y="{top + plot_h - h:.1f}" width="{bar_w:.1f}" '
                       f'height="{h:.1f}" fill="{colors[s % len(colors)]}"/>')
            out.append(f'<text x="{x + bar_w / 2:.1f}" y="{top + plot_h - h - 4:.1f}" '
                       f'text-anchor="middle" font-size="10">{v:.2f}</text>')
        out.append(f'<text x="{left + (g + 0.5) * group_w:.1f}" y="{top + plot_h + 18:.1f}" '
                   f'text-anchor="middle">{escape(metric)}</text>')
    out.append(f'<line x1="{left}" y1="{top + plot_h}" x2="{width - right}" y2="{top + plot_h}" stroke="black"/>')
    for s, name in enumerate(series):
        x = left + s * 200
        y = height - 18
        out.append(f'<rect x="{x}" y="{y - 10}" width="12" height="12" fill="{colors[s % len(colors)]}"/>')
        out.append(f'<text x="{x + 18}" y="{y}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_outputs(report: ComparisonReport, csv_path=None, svg_path=None) -> None:
    if csv_path:
        Path(csv_path).write_text(report.to_csv(), encoding="utf-8")
    if svg_path:
        Path(svg_path).write_text(report.to_svg(), encoding="utf-8")
