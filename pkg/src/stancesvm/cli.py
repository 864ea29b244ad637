"""Command-line interface: train, evaluate, predict, tune, compare, gen-corpus.

Exit codes: 0 success, 2 input/validation error, 3 training failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .compare import compare, write_outputs
from .corpus import DEFAULT_SEED, CorpusError, SplitSpec, load_corpus, stratified_split, write_corpus
from .evalreport import evaluate, format_report
from .features import EmptyVocabularyError, TfidfConfig
from .linear_svm import SvmConfig
from .pipeline import ModelFileError, TrainingError, load_pipeline, save_pipeline, train_pipeline
from .synthetic import generate_context_corpus
from .textprep import DEFAULT_LEXICON, EmoticonLexicon
from .tuning import TuningGrid, tune

EXIT_OK, EXIT_INPUT, EXIT_TRAINING = 0, 2, 3

log = logging.getLogger("stancesvm")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_model_options(p):
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--c", type=float, default=0.1)
    p.add_argument("--ngram-max", type=int, default=2)
    p.add_argument("--min-df", type=int, default=5)
    p.add_argument("--max-df", type=float, default=0.95)
    p.add_argument("--loss", choices=("squared-hinge", "hinge"), default="squared-hinge")
    p.add_argument("--lexicon", type=Path, help="emoticon lexicon file (<emoticon>TAB<polarity>)")


def _configs(args):
    tfidf = TfidfConfig(min_document_frequency=args.min_df, max_document_proportion=args.max_df,
                        ngram_max=args.ngram_max)
    svm = SvmConfig(c=args.c, loss=args.loss, seed=args.seed)
    lexicon = EmoticonLexicon.load(args.lexicon) if args.lexicon else DEFAULT_LEXICON
    return tfidf, svm, lexicon


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stancesvm", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train", help="train a pipeline and write a model file")
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--format", choices=("csv", "jsonl"))
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--test-fraction", type=float, default=0.0,
                   help="hold out this stratified fraction and print its report")
    _add_model_options(p)

    p = sub.add_parser("evaluate", help="score a model on a labeled corpus")
    p.add_argument("--model", type=Path, required=True)
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--format", choices=("csv", "jsonl"))
    p.add_argument("--report", type=Path, help="JSON report path (default: <model>.eval.json)")

    p = sub.add_parser("predict", help="label raw comments")
    p.add_argument("--model", type=Path, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--text")
    src.add_argument("--input", type=Path, help="one comment per line")

    p = sub.add_parser("tune", help="grid search on a validation holdout")
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--format", choices=("csv", "jsonl"))
    p.add_argument("--grid", type=Path, required=True, help="JSON grid file")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", type=Path, help="write the chosen configuration as JSON")

    p = sub.add_parser("compare", help="SVM vs Naive Bayes on one 80/20 split")
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--format", choices=("csv", "jsonl"))
    p.add_argument("--out-csv", type=Path)
    p.add_argument("--out-svg", type=Path)
    _add_model_options(p)

    p = sub.add_parser("gen-corpus", help="write the synthetic word-order benchmark corpus")
    p.add_argument("--n-per-class", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--format", choices=("csv", "jsonl"))
    return parser


def cmd_train(args):
    corpus = load_corpus(args.corpus, args.format)
    tfidf, svm, lexicon = _configs(args)
    train, test = stratified_split(corpus, SplitSpec(args.test_fraction, args.seed))
    pipe = train_pipeline(train, tfidf, svm, lexicon)
    save_pipeline(pipe, args.out)
    print(f"trained on {len(train)} comments, vocabulary {pipe.tfidf.size}, "
          f"converged={pipe.svm.converged} after {pipe.svm.epochs} epochs -> {args.out}")
    if len(test):
        report = evaluate([pipe.classify(c.text).label for c in test], test.labels)
        print(format_report(report), end="")


def cmd_evaluate(args):
    pipe = load_pipeline(args.model)
    corpus = load_corpus(args.corpus, args.format)
    if len(corpus) == 0:
        raise CorpusError("evaluation corpus is empty")
    results = [pipe.classify(c.text) for c in corpus]
    report = evaluate([r.label for r in results], corpus.labels)
    print(format_report(report), end="")
    out = args.report or args.model.with_suffix(".eval.json")
    data = report.to_dict()
    data["routes"] = {route: sum(r.route == route for r in results) for route in ("emoticon", "svm")}
    out.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    log.info("wrote %s", out)


def cmd_predict(args):
    pipe = load_pipeline(args.model)
    if args.text is not None:
        texts = [args.text]
    else:
        try:
            texts = args.input.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise CorpusError(f"cannot read {args.input}: {exc}") from exc
    for text in texts:
        r = pipe.classify(text)
        score = "" if r.decision_value is None else repr(r.decision_value)
        print(f"{r.label}\t{r.route}\t{score}")


def cmd_tune(args):
    corpus = load_corpus(args.corpus, args.format)
    try:
        grid = TuningGrid.load(args.grid)
    except (OSError, json.JSONDecodeError, TypeError) as exc:
        raise CorpusError(f"bad grid file {args.grid}: {exc}") from exc
    result = tune(corpus, grid, args.seed)
    print(result.format_table(), end="")
    chosen = {
        "c": result.svm_config.c,
        "loss": result.svm_config.loss,
        "ngram_max": result.tfidf_config.ngram_max,
        "min_df": result.tfidf_config.min_document_frequency,
    }
    print("chosen: " + json.dumps(chosen, sort_keys=True))
    print(format_report(result.validation_report), end="")
    if args.out:
        args.out.write_text(json.dumps(chosen, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def cmd_compare(args):
    corpus = load_corpus(args.corpus, args.format)
    tfidf, svm, lexicon = _configs(args)
    report = compare(corpus, args.seed, tfidf, svm, lexicon=lexicon)
    print("SVM (1-2 grams)")
    print(format_report(report.svm))
    print("Naive Bayes (unigrams)")
    print(format_report(report.nb))
    print(f"accuracy delta (SVM - NB): {report.accuracy_delta:+.4f}")
    write_outputs(report, args.out_csv, args.out_svg)


def cmd_gen_corpus(args):
    write_corpus(generate_context_corpus(args.n_per_class, args.seed), args.out, args.format)
    print(f"wrote {2 * args.n_per_class} comments to {args.out}")


COMMANDS = {
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "predict": cmd_predict,
    "tune": cmd_tune,
    "compare": cmd_compare,
    "gen-corpus": cmd_gen_corpus,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (TrainingError, EmptyVocabularyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRAINING
    except (CorpusError, ModelFileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
