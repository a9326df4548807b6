"""Non-robust and competing regression baselines.

OLS (closed form), ridge, ordinary gradient descent on the empirical
risk, and the hard-thresholding alternating scheme that refits least
squares on the samples with smallest absolute residuals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gradient_oracles import EMPIRICAL, GradientEstimatorSpec
from .models import Dataset, ModelSpec
from .optimizer import RGDConfig, Trace, run_rgd

__all__ = ["TorrentConfig", "ols", "ridge", "ols_gd", "torrent"]


@dataclass(frozen=True)
class TorrentConfig:
    keep_fraction: float
    max_rounds: int = 100
    tol: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.keep_fraction <= 1.0:
            raise ValueError("keep_fraction must be in (0, 1]")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")


def ols(data: Dataset) -> np.ndarray:
    """Least-squares solution via a rank-checked stable solve."""
    if data.y is None:
        raise ValueError("ols needs responses")
    theta, _, rank, _ = np.linalg.lstsq(data.X, data.y, rcond=None)
    if rank < data.p:
        raise np.linalg.LinAlgError("singular design")
    return theta


def ridge(data: Dataset, lam: float) -> np.ndarray:
    """Minimizer of the squared loss plus lam * ||theta||^2."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if lam == 0:
        return ols(data)
    X, y = data.X, data.y
    return np.linalg.solve(X.T @ X + lam * np.eye(data.p), X.T @ y)


def ols_gd(data: Dataset, config: RGDConfig, model: ModelSpec | None = None) -> Trace:
    """Gradient descent on the empirical squared loss; converges to the
    OLS solution on full-rank designs."""
    if model is None:
        model = ModelSpec("linear", data.p)
    return run_rgd(model, data, GradientEstimatorSpec(kind=EMPIRICAL), config)


def torrent(data: Dataset, config: TorrentConfig) -> np.ndarray:
    """Alternate between selecting the keep_fraction*n smallest-residual
    samples and refitting OLS on them, until the active set stabilizes."""
    n = data.n
    k = math.ceil(config.keep_fraction * n)
    if k < data.p:
        raise ValueError("active set smaller than the dimension")
    theta = np.zeros(data.p)
    active = None
    for _ in range(config.max_rounds):
        resid = np.abs(data.y - data.X @ theta)
        nxt = np.sort(np.argsort(resid, kind="stable")[:k])
        if active is not None and np.array_equal(nxt, active):
            break
        active = nxt
        theta = ols(data.subset(active))
    return theta
