"""Approve/disapprove stance classification of social-media comments.

Text normalization with emoticon short-circuiting, Porter stemming, 1-2 gram
TF-IDF features and a dual coordinate descent linear SVM, plus a unigram
Naive Bayes baseline and the evaluation tooling to compare them.
"""
from .corpus import Corpus, CorpusError, LabeledComment, Label, SplitSpec, load_corpus, stratified_split
from .evalreport import ConfusionMatrix, EvaluationReport, class_metrics, confusion, summarize
from .features import SparseVector, TfidfConfig, TfidfModel, extract_ngrams, fit_vectorizer, transform
from .linear_svm import SvmConfig, SvmModel, decision_value, predict_svm, primal_objective, train_svm
from .naive_bayes import NbModel, class_log_scores, predict_nb, train_nb
from .pipeline import Pipeline, classify, load_pipeline, save_pipeline, train_pipeline
from .porter import porter_stem
from .textprep import EmoticonLexicon, apply_emoticons, normalize, preprocess, tokenize

__version__ = "0.1.0"
