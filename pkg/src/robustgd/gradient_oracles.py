"""Gradient estimation by robust aggregation of per-sample gradients.

The population-risk gradient at any point is the mean of the per-sample
loss gradient distribution, so gradient estimation reduces to multivariate
mean estimation: stack the per-sample gradients into an (n, p) matrix and
aggregate with the chosen mean estimator.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .mean_estimators import (
    GmomParams,
    HuberParams,
    empirical_mean,
    gmom_mean,
    huber_mean,
)
from .models import GAUSSIAN, LINEAR, LOGISTIC, Dataset, ModelSpec, sigmoid

HUBER = "huber"
GMOM = "gmom"
EMPIRICAL = "empirical"
KINDS = (HUBER, GMOM, EMPIRICAL)

__all__ = [
    "HUBER", "GMOM", "EMPIRICAL", "KINDS",
    "GradientEstimatorSpec", "GradientErrorContract",
    "per_sample_gradients", "estimate_gradient",
]


@dataclass(frozen=True)
class GradientEstimatorSpec:
    """Choice of gradient aggregation rule plus its confidence level.

    kind : "huber" (contamination-robust), "gmom" (heavy-tail robust) or
        "empirical" (plain mean, recovering ordinary gradient descent)
    epsilon, trunc_const : huber-only settings
    weiszfeld_tol, weiszfeld_max_iter : gmom-only settings
    """

    kind: str = EMPIRICAL
    delta: float = 0.05
    epsilon: float = 0.0
    trunc_const: float = 2.0
    weiszfeld_tol: float = 1e-10
    weiszfeld_max_iter: int = 10_000

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown estimator kind {self.kind!r}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        # validate kind-specific parameters eagerly
        if self.kind == HUBER:
            HuberParams(self.epsilon, self.delta, self.trunc_const)
        elif self.kind == GMOM:
            GmomParams(self.delta, self.weiszfeld_tol, self.weiszfeld_max_iter)

    def with_delta(self, delta: float) -> "GradientEstimatorSpec":
        return replace(self, delta=delta)


@dataclass(frozen=True)
class GradientErrorContract:
    """Error envelope alpha * ||theta - theta*|| + beta of a gradient
    estimator, recorded for reporting and iteration-count planning."""

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be nonnegative")


def per_sample_gradients(model: ModelSpec, theta, batch: Dataset) -> np.ndarray:
    """Stack the loss gradient of every observation into an (n, p) matrix."""
    theta = np.asarray(theta, dtype=float).ravel()
    if theta.size != model.dim:
        raise ValueError(f"theta has dim {theta.size}, model expects {model.dim}")
    if batch.p != model.dim:
        raise ValueError(f"batch has dim {batch.p}, model expects {model.dim}")
    if batch.n == 0:
        raise ValueError("empty batch")
    if model.family == LINEAR:
        r = batch.X @ theta - batch.y
        return r[:, None] * batch.X
    if model.family == LOGISTIC:
        r = sigmoid(batch.X @ theta) - batch.y
        return r[:, None] * batch.X
    assert model.family == GAUSSIAN
    return theta[None, :] - batch.X


def estimate_gradient(model: ModelSpec, theta, batch: Dataset,
                      spec: GradientEstimatorSpec) -> np.ndarray:
    """Aggregate the per-sample gradients with the selected mean estimator."""
    grads = per_sample_gradients(model, theta, batch)
    if spec.kind == EMPIRICAL:
        return empirical_mean(grads)
    if spec.kind == GMOM:
        return gmom_mean(grads, GmomParams(spec.delta, spec.weiszfeld_tol,
                                           spec.weiszfeld_max_iter))
    return huber_mean(grads, HuberParams(spec.epsilon, spec.delta, spec.trunc_const))
