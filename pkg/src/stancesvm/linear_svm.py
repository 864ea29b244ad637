"""L2-regularized linear SVM trained by dual coordinate descent.

Solves

    min_w  1/2 ||w||^2 + C * sum_i loss(1 - y_i w.x_i)

through its box-constrained dual, updating one dual variable at a time with
the closed-form step. ``hinge`` gives the dual box ``[0, C]``; ``squared_hinge``
gives ``[0, inf)`` with ``1/(2C)`` added to the diagonal. The bias is an extra
constant-1 feature and is regularized with the rest of ``w``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import Label
from .features import SparseVector

logger = logging.getLogger(__name__)

LOSSES = ("hinge", "squared_hinge")


@dataclass(frozen=True)
class SvmConfig:
    c: float = 0.1
    loss: str = "squared_hinge"
    tolerance: float = 1e-4
    max_epochs: int = 1000
    seed: int = 42
    fit_bias: bool = True

    def __post_init__(self):
        loss = self.loss.replace("-", "_")
        if loss not in LOSSES:
            raise ValueError(f"loss must be one of {LOSSES}, got {self.loss!r}")
        object.__setattr__(self, "loss", loss)
        if not self.c > 0 or not math.isfinite(self.c):
            raise ValueError("c must be a positive finite number")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SvmModel:
    weights: np.ndarray
    bias: float
    config: SvmConfig
    converged: bool = True
    epochs: int = 0
    objective_trace: tuple[float, ...] = field(default=(), repr=False)
    dual_trace: tuple[float, ...] = field(default=(), repr=False)

    # Approve -> +1, Disapprove -> -1
    label_map = {Label.APPROVE: 1, Label.DISAPPROVE: -1}

    @property
    def n_features(self) -> int:
        return int(self.weights.size)


def _as_sign(label) -> float:
    return 1.0 if Label(label) is Label.APPROVE else -1.0


def _stack(vectors, n_features: int, fit_bias: bool):
    """Flatten sparse rows into (row_ids, cols, vals) plus per-row slices."""
    rows, cols, vals, bounds = [], [], [], [0]
    for i, v in enumerate(vectors):
        if not np.all(np.isfinite(v.values)):
            raise ValueError(f"vector {i} has non-finite values")
        if v.indices.size and v.indices[-1] >= n_features:
            raise ValueError(f"vector {i} has index {v.indices[-1]} >= n_features={n_features}")
        idx, val = v.indices, v.values
        if fit_bias:
            idx = np.append(idx, n_features)
            val = np.append(val, 1.0)
        cols.append(idx)
        vals.append(val)
        rows.append(np.full(idx.size, i, dtype=np.int64))
        bounds.append(bounds[-1] + idx.size)
    if cols:
        return (np.concatenate(rows), np.concatenate(cols), np.concatenate(vals), bounds)
    return np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0), bounds


def _objective(w, y, rows, cols, vals, c, loss) -> float:
    margins = y * np.bincount(rows, weights=vals * w[cols], minlength=y.size)
    slack = np.maximum(0.0, 1.0 - margins)
    if loss == "squared_hinge":
        slack = slack * slack
    return 0.5 * float(w @ w) + c * float(slack.sum())


def train_svm(vectors, labels, config: SvmConfig = SvmConfig(), n_features: int | None = None) -> SvmModel:
    """Fit a linear SVM.

    ``n_features`` defaults to one past the largest index seen. The model
    records the primal and dual objectives after every epoch. Only the dual
    is guaranteed monotone (non-decreasing); the primal usually falls but
    can rise slightly between epochs. Hitting ``max_epochs`` sets
    ``converged=False`` instead of raising.
    """
    vectors = list(vectors)
    labels = list(labels)
    if len(vectors) != len(labels):
        raise ValueError(f"got {len(vectors)} vectors but {len(labels)} labels")
    if not vectors:
        raise ValueError("cannot train on zero examples")
    if n_features is None:
        n_features = max((int(v.indices[-1]) + 1 for v in vectors if v.indices.size), default=0)

    n = len(vectors)
    y = np.array([_as_sign(lab) for lab in labels])
    rows, cols, vals, bounds = _stack(vectors, n_features, config.fit_bias)
    dim = n_features + (1 if config.fit_bias else 0)

    if config.loss == "hinge":
        upper, diag = config.c, 0.0
    else:
        upper, diag = math.inf, 0.5 / config.c
    sq_norms = np.bincount(rows, weights=vals * vals, minlength=n)
    qd = sq_norms + diag

    # Python-level row slices; the inner loop is scalar-heavy.
    row_cols = [cols[bounds[i]:bounds[i + 1]] for i in range(n)]
    row_vals = [vals[bounds[i]:bounds[i + 1]] for i in range(n)]

    alpha = np.zeros(n)
    w = np.zeros(dim)
    rng = np.random.default_rng(config.seed)
    trace, dual_trace = [], []
    converged = False
    epoch = 0
    for epoch in range(1, config.max_epochs + 1):
        max_violation = 0.0
        for i in rng.permutation(n):
            ci, vi, yi = row_cols[i], row_vals[i], y[i]
            a = alpha[i]
            if qd[i] <= 0.0:
                # zero row under hinge: the dual is linear in alpha_i and w is unaffected
                alpha[i] = upper
                continue
            g = yi * float(w[ci] @ vi) - 1.0 + diag * a
            if a == 0.0:
                pg = min(g, 0.0)
            elif a >= upper:
                pg = max(g, 0.0)
            else:
                pg = g
            max_violation = max(max_violation, abs(pg))
            if pg != 0.0:
                new_a = min(max(a - g / qd[i], 0.0), upper)
                delta = (new_a - a) * yi
                if delta != 0.0:
                    w[ci] += delta * vi
                alpha[i] = new_a
        trace.append(_objective(w, y, rows, cols, vals, config.c, config.loss))
        dual_trace.append(float(alpha.sum() - 0.5 * (w @ w) - 0.5 * diag * (alpha @ alpha)))
        if max_violation < config.tolerance:
            converged = True
            break
    if not converged:
        logger.warning("dual coordinate descent stopped after %d epochs without converging", epoch)

    if config.fit_bias:
        weights, bias = w[:-1].copy(), float(w[-1])
    else:
        weights, bias = w, 0.0
    weights.setflags(write=False)
    return SvmModel(weights, bias, config, converged, epoch, tuple(trace), tuple(dual_trace))


def decision_value(model: SvmModel, x: SparseVector) -> float:
    if x.indices.size and x.indices[-1] >= model.weights.size:
        raise IndexError(f"feature index {x.indices[-1]} out of range for {model.weights.size} weights")
    return float(model.weights[x.indices] @ x.values) + model.bias


def predict_svm(model: SvmModel, x: SparseVector) -> Label:
    """Approve on a non-negative decision value (ties go to Approve)."""
    return Label.APPROVE if decision_value(model, x) >= 0.0 else Label.DISAPPROVE


def primal_objective(model: SvmModel, vectors, labels, config: SvmConfig | None = None) -> float:
    """Primal objective of ``model`` on the data; the bias counts in ``||w||^2``."""
    config = config or model.config
    vectors, labels = list(vectors), list(labels)
    if len(vectors) != len(labels):
        raise ValueError("vectors and labels differ in length")
    y = np.array([_as_sign(lab) for lab in labels])
    scores = np.array([decision_value(model, x) for x in vectors])
    slack = np.maximum(0.0, 1.0 - y * scores)
    if config.loss == "squared_hinge":
        slack = slack * slack
    reg = float(model.weights @ model.weights) + model.bias ** 2
    return 0.5 * reg + config.c * float(slack.sum())
