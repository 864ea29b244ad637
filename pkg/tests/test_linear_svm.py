import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import svm_dual_qp_bruteforce
from stancesvm.corpus import Label
from stancesvm.features import SparseVector
from stancesvm.linear_svm import (
    SvmConfig,
    SvmModel,
    decision_value,
    predict_svm,
    primal_objective,
    train_svm,
)

A, D = Label.APPROVE, Label.DISAPPROVE
TWO_POINTS = [SparseVector([0], [1.0]), SparseVector([0], [-1.0])]


def _model(weights, bias=0.0):
    return SvmModel(np.asarray(weights, dtype=float), bias, SvmConfig())


def random_instance(rng, max_points=6, max_features=3):
    n = int(rng.integers(2, max_points + 1))
    d = int(rng.integers(1, max_features + 1))
    X = rng.normal(size=(n, d)) * (rng.random((n, d)) < 0.7)
    y = rng.integers(0, 2, n)
    return X, y


def _vectors(X):
    return [SparseVector.from_dense(row) for row in X]


@pytest.mark.parametrize("loss,expected", [("hinge", 0.2), ("squared_hinge", 2 / 7)])
def test_two_point_analytic(loss, expected):
    model = train_svm(TWO_POINTS, [A, D], SvmConfig(c=0.1, loss=loss, fit_bias=False), n_features=2)
    assert model.weights[0] == pytest.approx(expected, abs=1e-4)
    assert model.weights[1] == 0.0
    assert model.bias == 0.0


def test_hard_margin_separable():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(40, 3))
    y = (X @ np.array([1.0, -2.0, 0.5]) > 0).astype(int)
    model = train_svm(_vectors(X), [Label(v) for v in y], SvmConfig(c=1e6, loss="hinge", max_epochs=5000))
    preds = [predict_svm(model, v) for v in _vectors(X)]
    assert np.mean([p == Label(t) for p, t in zip(preds, y)]) == 1.0


def test_decision_value_and_prediction():
    model = _model([0.2, 0.0])
    assert decision_value(model, SparseVector.zeros()) == 0.0
    assert decision_value(model, SparseVector([0], [1.0])) == pytest.approx(0.2)
    assert decision_value(model, SparseVector([0], [-1.0])) == pytest.approx(-0.2)
    assert predict_svm(model, SparseVector([0], [1.0])) is A
    assert predict_svm(model, SparseVector([0], [-1.0])) is D
    assert predict_svm(model, SparseVector.zeros()) is A


def test_decision_value_index_out_of_range():
    with pytest.raises(IndexError):
        decision_value(_model([1.0]), SparseVector([3], [1.0]))


def test_primal_objective_values():
    cfg = SvmConfig(c=0.1, loss="hinge", fit_bias=False)
    labels = [A, D]
    assert primal_objective(_model([0.0, 0.0]), TWO_POINTS, labels, cfg) == pytest.approx(0.2)
    assert primal_objective(_model([0.2, 0.0]), TWO_POINTS, labels, cfg) == pytest.approx(0.18)


def test_input_validation():
    with pytest.raises(ValueError):
        train_svm(TWO_POINTS, [A])
    with pytest.raises(ValueError):
        train_svm([SparseVector([0], [np.inf])], [A])
    with pytest.raises(ValueError):
        SvmConfig(c=0)
    with pytest.raises(ValueError):
        SvmConfig(loss="logistic")


def test_single_class_is_allowed():
    model = train_svm(_vectors(np.eye(3)), [A, A, A])
    assert all(predict_svm(model, v) is A for v in _vectors(np.eye(3)))


def test_max_epochs_flag():
    rng = np.random.default_rng(0)
    X, y = rng.normal(size=(30, 4)), rng.integers(0, 2, 30)
    model = train_svm(_vectors(X), [Label(v) for v in y], SvmConfig(c=100, max_epochs=1))
    assert not model.converged and model.epochs == 1


@pytest.mark.parametrize("seed", range(20))
def test_matches_bruteforce_qp(seed):
    rng = np.random.default_rng(seed)
    X, y = random_instance(rng)
    loss = ("hinge", "squared_hinge")[seed % 2]
    cfg = SvmConfig(c=float(10 ** rng.uniform(-1, 1)), loss=loss, tolerance=1e-8, max_epochs=20000)
    model = train_svm(_vectors(X), [Label(v) for v in y], cfg, n_features=X.shape[1])
    _, oracle = svm_dual_qp_bruteforce(X, np.where(y == 1, 1.0, -1.0), cfg.c, loss)
    assert primal_objective(model, _vectors(X), [Label(v) for v in y]) == pytest.approx(oracle, abs=1e-3)


@pytest.mark.parametrize("seed", range(10))
def test_dual_objective_non_decreasing(seed):
    rng = np.random.default_rng(100 + seed)
    X, y = random_instance(rng, max_points=30, max_features=8)
    model = train_svm(_vectors(X), [Label(v) for v in y], SvmConfig(c=1.0, loss=("hinge", "squared_hinge")[seed % 2]))
    assert np.all(np.diff(model.dual_trace) >= -1e-10)
    # weak duality
    assert model.dual_trace[-1] <= model.objective_trace[-1] + 1e-10


def test_deterministic():
    rng = np.random.default_rng(1)
    X, y = rng.normal(size=(25, 5)), rng.integers(0, 2, 25)
    a = train_svm(_vectors(X), [Label(v) for v in y], SvmConfig(seed=9))
    b = train_svm(_vectors(X), [Label(v) for v in y], SvmConfig(seed=9))
    assert a.weights.tobytes() == b.weights.tobytes() and a.bias == b.bias


def test_label_flip_negates_decisions():
    rng = np.random.default_rng(2)
    X, y = rng.normal(size=(25, 4)), rng.integers(0, 2, 25)
    vecs = _vectors(X)
    a = train_svm(vecs, [Label(v) for v in y], SvmConfig(seed=5))
    b = train_svm(vecs, [Label(1 - v) for v in y], SvmConfig(seed=5))
    for v in vecs:
        assert abs(decision_value(a, v) + decision_value(b, v)) < 1e-9


@given(st.floats(1e-3, 1e3), st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_positive_scaling_keeps_predictions(scale, point):
    model = _model([0.3, -1.2], bias=0.05)
    scaled = _model(model.weights * scale, bias=model.bias * scale)
    x = SparseVector.from_dense(point[:2])
    assert predict_svm(model, x) is predict_svm(scaled, x)
