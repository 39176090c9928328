"""Tests for ridge training, prediction, capacity and NRMSE."""

import numpy as np
import pytest

from qrcbench.driver import StateMatrix
from qrcbench.readout import (
    ReadoutWeights,
    SingularSystemError,
    capacity,
    nrmse,
    predict,
    ridge_normal_matrix,
    train_ridge,
)


def state_matrix(features: np.ndarray) -> StateMatrix:
    rows = features.shape[0]
    values = np.concatenate([features, np.ones((rows, 1))], axis=1)
    return StateMatrix(values=values, steps=np.arange(1, rows + 1))


def gaussian_elimination_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Independent dense solver: Gaussian elimination with partial pivoting."""
    a = a.astype(np.float64).copy()
    b = b.astype(np.float64).copy()
    n = a.shape[0]
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[pivot, col]) < 1e-300:
            raise ZeroDivisionError("singular")
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            b[[col, pivot]] = b[[pivot, col]]
        for row in range(col + 1, n):
            factor = a[row, col] / a[col, col]
            a[row, col:] -= factor * a[col, col:]
            b[row] -= factor * b[col]
    x = np.zeros(n)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1 :] @ x[row + 1 :]) / a[row, row]
    return x


class TestTrainRidge:
    def test_interpolates_full_rank_square(self):
        rng = np.random.default_rng(0)
        features = np.eye(6) + 0.01 * rng.standard_normal((6, 6))
        s = state_matrix(features[:, :5])  # 6 rows, 5 features + bias = square
        y = rng.standard_normal(6)
        w = train_ridge(s, y, 0.0)
        assert np.max(np.abs(predict(s, w) - y)) < 1e-9

    def test_shrinkage_limit(self):
        rng = np.random.default_rng(1)
        s = state_matrix(rng.standard_normal((40, 6)))
        y = rng.standard_normal(40)
        w = train_ridge(s, y, 1e12)
        assert np.linalg.norm(w.weights[:-1]) < 1e-6

    def test_matches_brute_force_normal_equations(self):
        # Independent oracle: explicit Gaussian elimination on the same
        # normal equations (bias unpenalized).
        rng = np.random.default_rng(2)
        for _ in range(20):
            s = state_matrix(rng.standard_normal((50, 7)))
            y = rng.standard_normal(50)
            lam = 0.01
            w = train_ridge(s, y, lam)
            a = s.values.T @ s.values
            a[np.arange(7), np.arange(7)] += lam
            expected = gaussian_elimination_solve(a, s.values.T @ y)
            assert np.max(np.abs(w.weights - expected)) < 1e-8

    def test_singular_system_reported(self):
        features = np.ones((10, 3))  # three identical columns, collinear with bias
        s = state_matrix(features)
        with pytest.raises(SingularSystemError):
            train_ridge(s, np.arange(10.0), 0.0)

    def test_negative_lambda_rejected(self):
        s = state_matrix(np.random.default_rng(3).standard_normal((5, 2)))
        with pytest.raises(ValueError):
            train_ridge(s, np.zeros(5), -0.1)

    def test_residual_monotone_in_lambda(self):
        rng = np.random.default_rng(4)
        s = state_matrix(rng.standard_normal((60, 8)))
        y = rng.standard_normal(60)
        residuals = []
        for lam in (0.0, 1e-4, 1e-2, 1.0, 100.0):
            w = train_ridge(s, y, lam)
            residuals.append(float(np.sum((predict(s, w) - y) ** 2)))
        assert all(b >= a - 1e-10 for a, b in zip(residuals, residuals[1:]))

    def test_normal_matrix_leaves_bias_unpenalized(self):
        s = state_matrix(np.random.default_rng(5).standard_normal((20, 3)))
        a0 = ridge_normal_matrix(s, 0.0)
        a1 = ridge_normal_matrix(s, 2.5)
        delta = a1 - a0
        np.testing.assert_allclose(np.diag(delta)[:-1], 2.5)
        assert delta[-1, -1] == 0.0


class TestPredict:
    def test_zero_weights(self):
        s = state_matrix(np.random.default_rng(6).standard_normal((5, 3)))
        w = ReadoutWeights(weights=np.zeros(4), regularization=0.0)
        np.testing.assert_array_equal(predict(s, w), np.zeros(5))

    def test_bias_only(self):
        s = state_matrix(np.random.default_rng(7).standard_normal((5, 3)))
        w = ReadoutWeights(weights=np.array([0.0, 0.0, 0.0, 1.0]), regularization=0.0)
        np.testing.assert_array_equal(predict(s, w), np.ones(5))

    def test_dimension_mismatch(self):
        s = state_matrix(np.random.default_rng(8).standard_normal((5, 3)))
        with pytest.raises(ValueError):
            predict(s, ReadoutWeights(weights=np.zeros(3), regularization=0.0))


class TestCapacity:
    def test_perfect(self):
        y = np.array([0.1, 0.5, -0.3, 0.9])
        assert capacity(y, y) == 1.0

    def test_affine_invariance(self):
        rng = np.random.default_rng(9)
        y = rng.standard_normal(300)
        t = rng.standard_normal(300) + 0.4 * y
        base = capacity(y, t)
        assert abs(capacity(3.7 * y - 2.0, t) - base) < 1e-12
        assert capacity(2.0 * t + 1.0, t) == pytest.approx(1.0, abs=1e-12)

    def test_independent_sequences_near_zero(self):
        # Null level ~ chi^2_1 / N; verified by sampling before freezing.
        rng = np.random.default_rng(10)
        a = rng.uniform(-1, 1, 5000)
        b = rng.uniform(-1, 1, 5000)
        assert capacity(a, b) < 0.002

    def test_degenerate_variance_is_zero(self):
        assert capacity(np.ones(10), np.arange(10.0)) == 0.0
        assert capacity(np.arange(10.0), np.ones(10)) == 0.0


class TestNrmse:
    def test_exact_prediction(self):
        y = np.array([1.0, 2.0, 3.0])
        assert nrmse(y, y) == 0.0

    def test_constant_mean_predictor(self):
        # With population variance the mean predictor scores exactly 1.
        rng = np.random.default_rng(11)
        t = rng.standard_normal(500)
        pred = np.full(500, t.mean())
        assert nrmse(pred, t) == pytest.approx(1.0, abs=1e-12)

    def test_identity_with_capacity_for_ols(self):
        rng = np.random.default_rng(12)
        s = state_matrix(rng.standard_normal((200, 10)))
        t = rng.standard_normal(200)
        w = train_ridge(s, t, 0.0)
        pred = predict(s, w)
        assert abs(nrmse(pred, t) ** 2 - (1.0 - capacity(pred, t))) < 1e-6

    def test_zero_variance_rejected(self):
        with pytest.raises(ValueError):
            nrmse(np.arange(4.0), np.ones(4))

    def test_affine_invariance(self):
        rng = np.random.default_rng(13)
        t = rng.standard_normal(100)
        pred = t + 0.1 * rng.standard_normal(100)
        scaled = nrmse((pred - 3.0) / 7.0, (t - 3.0) / 7.0)
        assert abs(scaled - nrmse(pred, t)) < 1e-12
