"""Evaluation metrics and the per-trial result record."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .models import Dataset

__all__ = ["TrialResult", "param_error", "zero_one_error", "rel_eff", "rmse"]


def param_error(theta_hat, theta_star) -> float:
    """L2 distance between an estimate and the true parameters."""
    a = np.asarray(theta_hat, dtype=float).ravel()
    b = np.asarray(theta_star, dtype=float).ravel()
    if a.size != b.size:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    return float(np.linalg.norm(a - b))


def zero_one_error(theta_hat, test: Dataset) -> float:
    """Fraction of test rows misclassified by the rule 1{x.theta > 0}."""
    if test.n == 0:
        raise ValueError("empty test set")
    if test.y is None:
        raise ValueError("test set has no labels")
    pred = (test.X @ np.asarray(theta_hat, dtype=float).ravel() > 0).astype(float)
    return float(np.mean(pred != test.y))


def rel_eff(error_1: float, error_2: float) -> float:
    """Relative efficiency (error_2 - error_1) / error_1: the fractional
    improvement of estimator 1 over estimator 2 (positive means 1 wins)."""
    if error_1 <= 0:
        raise ValueError("degenerate reference")
    return (error_2 - error_1) / error_1


def rmse(a, b) -> float:
    """Root mean squared coordinate difference."""
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.size != b.size:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    return float(math.sqrt(np.mean((a - b) ** 2)))


@dataclass
class TrialResult:
    """One method run on one generated dataset."""

    method: str
    p: int
    n: int
    seed: int
    final_param_error: float
    epsilon: float | None = None
    beta: float | None = None
    sigma: float | None = None
    zero_one_error: float | None = None
    iterations: int = 0
    iter_param_errors: list | None = None

    def __post_init__(self):
        if self.final_param_error < 0:
            raise ValueError("errors must be nonnegative")
