"""Linear readout training and scoring (capacity, NRMSE)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .driver import StateMatrix


@dataclass
class ReadoutWeights:
    """Trained output weights, one per state-matrix column (bias included)."""

    weights: np.ndarray
    regularization: float


class SingularSystemError(np.linalg.LinAlgError):
    """Normal equations are singular and no ridge penalty was requested."""


def ridge_normal_matrix(s: StateMatrix, lam: float) -> np.ndarray:
    """S†S with the ridge penalty added to every non-bias diagonal entry."""
    a = s.values.T @ s.values
    if lam > 0:
        idx = np.arange(s.feature_count)
        a[idx, idx] += lam
    return a


def train_ridge(s: StateMatrix, target: np.ndarray, lam: float) -> ReadoutWeights:
    """Ridge regression w = (S†S + lam I)⁻¹ S† y with the bias column unpenalized.

    A singular system with lam = 0 raises SingularSystemError instead of being
    silently pseudo-inverted.
    """
    target = np.asarray(target, dtype=np.float64)
    if target.shape != (s.rows,):
        raise ValueError(f"target length {target.shape} does not match {s.rows} rows")
    if lam < 0:
        raise ValueError("ridge parameter must be non-negative")
    a = ridge_normal_matrix(s, lam)
    try:
        cho = scipy.linalg.cho_factor(a)
    except scipy.linalg.LinAlgError as exc:
        raise SingularSystemError(
            f"normal equations singular (lam={lam}); add regularization"
        ) from exc
    w = scipy.linalg.cho_solve(cho, s.values.T @ target)
    if not np.all(np.isfinite(w)):
        raise SingularSystemError(f"non-finite weights from ill-conditioned system (lam={lam})")
    return ReadoutWeights(weights=w, regularization=lam)


def predict(s: StateMatrix, w: ReadoutWeights) -> np.ndarray:
    """y = S w."""
    if w.weights.shape != (s.values.shape[1],):
        raise ValueError(
            f"weight length {w.weights.shape[0]} does not match {s.values.shape[1]} columns"
        )
    return s.values @ w.weights


def capacity(y: np.ndarray, y_target: np.ndarray) -> float:
    """Squared Pearson correlation cov(y, y_t)^2 / (var(y) var(y_t)), in [0, 1].

    Population (1/N) moments throughout. Degenerate variance on either side
    yields 0 by convention.
    """
    y = np.asarray(y, dtype=np.float64)
    y_target = np.asarray(y_target, dtype=np.float64)
    if y.shape != y_target.shape or y.size < 2:
        raise ValueError("capacity needs two equal-length vectors of size >= 2")
    dy = y - y.mean()
    dt = y_target - y_target.mean()
    var_y = float(dy @ dy)
    var_t = float(dt @ dt)
    if var_y <= 0.0 or var_t <= 0.0:
        return 0.0
    cov = float(dy @ dt)
    return min(cov * cov / (var_y * var_t), 1.0)


def nrmse(y: np.ndarray, y_target: np.ndarray) -> float:
    """sqrt( sum (y - y_t)^2 / (N var(y_t)) ) with population variance."""
    y = np.asarray(y, dtype=np.float64)
    y_target = np.asarray(y_target, dtype=np.float64)
    if y.shape != y_target.shape or y.size < 2:
        raise ValueError("nrmse needs two equal-length vectors of size >= 2")
    var_t = float(np.var(y_target))
    if var_t <= 0.0:
        raise ValueError("target variance is zero; NRMSE undefined")
    return float(np.sqrt(np.mean((y - y_target) ** 2) / var_t))
