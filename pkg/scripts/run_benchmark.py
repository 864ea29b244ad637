"""SVM vs Naive Bayes on the synthetic word-order corpus.

    python scripts/run_benchmark.py --n-per-class 2500 --seed 42 --out-dir bench/
"""
import argparse
import time
from pathlib import Path

from stancesvm.compare import compare, write_outputs
from stancesvm.evalreport import format_report
from stancesvm.synthetic import generate_context_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-per-class", type=int, default=2500)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--out-dir", type=Path)
    args = ap.parse_args()

    start = time.perf_counter()
    corpus = generate_context_corpus(args.n_per_class, args.seed)
    report = compare(corpus, seed=args.seed)
    elapsed = time.perf_counter() - start

    print("SVM (1-2 grams)")
    print(format_report(report.svm))
    print("Naive Bayes (unigrams)")
    print(format_report(report.nb))
    print(f"accuracy delta {report.accuracy_delta:+.4f}, {len(corpus)} comments, {elapsed:.2f}s")
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
        write_outputs(report, args.out_dir / "comparison.csv", args.out_dir / "comparison.svg")


if __name__ == "__main__":
    main()
