"""Robust multivariate mean estimators.

Two estimators are provided: a recursive-SVD estimator for contaminated
samples (outlier truncation followed by a principal-component split), and
the geometric median-of-means estimator for heavy-tailed samples.  Both
operate on an (n, p) sample matrix, one sample per row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HuberParams",
    "GmomParams",
    "Interval",
    "shortest_interval",
    "huber_truncate_1d",
    "huber_mean_1d",
    "huber_truncate",
    "huber_mean",
    "geometric_median",
    "gmom_mean",
    "empirical_mean",
]


@dataclass(frozen=True)
class HuberParams:
    """Settings for the contamination-robust mean estimator.

    epsilon : expected fraction of outliers, in [0, 1/2)
    delta : confidence level, in (0, 1)
    trunc_const : constant scaling the sampling-error slack of the
        truncation step; larger values truncate more aggressively
    """

    epsilon: float
    delta: float = 0.05
    trunc_const: float = 2.0

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 0.5:
            raise ValueError(f"epsilon must be in [0, 1/2), got {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if not self.trunc_const > 0.0:
            raise ValueError(f"trunc_const must be positive, got {self.trunc_const}")


@dataclass(frozen=True)
class GmomParams:
    """Settings for the geometric median-of-means estimator."""

    delta: float = 0.05
    weiszfeld_tol: float = 1e-10
    weiszfeld_max_iter: int = 10_000

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if not self.weiszfeld_tol > 0.0:
            raise ValueError("weiszfeld_tol must be positive")
        if self.weiszfeld_max_iter < 1:
            raise ValueError("weiszfeld_max_iter must be >= 1")


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo


def _as_sample_matrix(samples) -> np.ndarray:
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"expected an (n, p) sample matrix, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("empty sample")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sample matrix contains non-finite entries")
    return arr


def shortest_interval(values, keep_fraction: float) -> Interval:
    """Minimum-width interval covering a given fraction of the values.

    Scans all length-k windows of the sorted values, k = ceil(keep_fraction
    * n), and returns the narrowest one.  Ties are broken by the leftmost
    window.
    """
    vals = np.asarray(values, dtype=float).ravel()
    n = vals.size
    if n == 0:
        raise ValueError("empty sample")
    if not 0.0 < keep_fraction <= 1.0:
        raise ValueError(f"keep_fraction must be in (0, 1], got {keep_fraction}")
    k = math.ceil(keep_fraction * n)
    k = max(k, 1)
    s = np.sort(vals)
    widths = s[k - 1:] - s[: n - k + 1]
    i = int(np.argmin(widths))
    return Interval(float(s[i]), float(s[i + k - 1]))


def _keep_fraction_1d(n: int, params: HuberParams) -> float:
    slack = params.trunc_const * math.sqrt(math.log(n / params.delta) / n)
    frac = (1.0 - params.epsilon - slack) * (1.0 - params.epsilon)
    return min(max(frac, 0.5), 1.0)


def _keep_fraction_nd(n: int, p: int, params: HuberParams) -> float:
    slack = params.trunc_const * math.sqrt((p / n) * math.log(n / (p * params.delta)))
    frac = (1.0 - params.epsilon - slack) * (1.0 - params.epsilon)
    return min(max(frac, 0.5), 1.0)


def huber_truncate_1d(values, params: HuberParams) -> np.ndarray:
    """Keep the values inside the shortest high-mass interval.

    The retained fraction shrinks with the contamination level and with a
    sampling-error slack, and is clamped to [1/2, 1].  Input order is
    preserved.
    """
    vals = np.asarray(values, dtype=float).ravel()
    if vals.size == 0:
        raise ValueError("empty sample")
    frac = _keep_fraction_1d(vals.size, params)
    iv = shortest_interval(vals, frac)
    return vals[(vals >= iv.lo) & (vals <= iv.hi)]


def huber_mean_1d(values, params: HuberParams) -> float:
    """Mean of the values after outlier truncation."""
    return float(np.mean(huber_truncate_1d(values, params)))


def huber_truncate(samples, params: HuberParams) -> np.ndarray:
    """Keep the samples inside the smallest high-mass ball.

    A robust per-coordinate anchor is estimated first (each coordinate at
    confidence delta/p); the samples inside the smallest ball around the
    anchor containing k = ceil(keep_fraction * n) of them are retained
    (ties on the boundary radius are all kept).
    """
    arr = _as_sample_matrix(samples)
    n, p = arr.shape
    if n < 2:
        raise ValueError("insufficient samples")
    coord_params = HuberParams(params.epsilon, params.delta / p, params.trunc_const)
    anchor = np.array([huber_mean_1d(arr[:, i], coord_params) for i in range(p)])
    frac = _keep_fraction_nd(n, p, params)
    k = math.ceil(frac * n)
    if k >= n:
        return arr
    dist = np.linalg.norm(arr - anchor, axis=1)
    radius = np.sort(dist)[k - 1]
    return arr[dist <= radius]


def huber_mean(samples, params: HuberParams) -> np.ndarray:
    """Contamination-robust mean via recursive principal-component splits.

    After truncation, the space is split into the span of the top
    ceil(p/2) principal components of the retained samples' covariance
    and its complement.  The estimator recurses on the high-variance
    half (where outliers concentrate) and takes the plain mean on the
    complement, then reassembles the estimate in the original basis.
    """
    arr = _as_sample_matrix(samples)
    n, p = arr.shape
    if p == 1:
        if n < 1:
            raise ValueError("empty sample")
        return np.array([huber_mean_1d(arr[:, 0], params)])
    if n < 2:
        raise ValueError("insufficient samples")

    kept = huber_truncate(arr, params)
    centered = kept - kept.mean(axis=0)
    cov = centered.T @ centered / kept.shape[0]
    # eigh returns eigenvalues in ascending order; the top ceil(p/2)
    # principal components span the recursion subspace.
    _, vecs = np.linalg.eigh(cov)
    p_top = math.ceil(p / 2)
    V = vecs[:, p - p_top:]
    W = vecs[:, : p - p_top]

    mu_v = huber_mean(kept @ V, params)
    mu_w = (kept @ W).mean(axis=0)
    return V @ mu_v + W @ mu_w


def geometric_median(points, tol: float = 1e-10, max_iter: int = 10_000) -> np.ndarray:
    """Minimizer of the sum of Euclidean distances to the points.

    Uses the modified Weiszfeld fixed-point iteration.  When the iterate
    coincides with a data point, the subgradient optimality condition is
    checked: the point is returned if optimal, otherwise the standard
    damped update steps away from it.
    """
    arr = _as_sample_matrix(points)
    n, _ = arr.shape
    if n == 1:
        return arr[0].copy()

    mu = arr.mean(axis=0)
    for _ in range(max_iter):
        diff = arr - mu
        dist = np.linalg.norm(diff, axis=1)
        coincident = dist < 1e-12
        m = int(coincident.sum())
        if m == 0:
            w = 1.0 / dist
            nxt = (w[:, None] * arr).sum(axis=0) / w.sum()
        else:
            far = ~coincident
            if not far.any():
                return mu
            w = 1.0 / dist[far]
            r_vec = (diff[far] * w[:, None]).sum(axis=0)
            r = np.linalg.norm(r_vec)
            if r <= m:
                # coincident point dominates the pull from the rest
                return mu
            t = (w[:, None] * arr[far]).sum(axis=0) / w.sum()
            lam = m / r
            nxt = (1.0 - lam) * t + lam * mu
        if np.linalg.norm(nxt - mu) < tol:
            return nxt
        mu = nxt
    return mu


def gmom_mean(samples, params: GmomParams = GmomParams()) -> np.ndarray:
    """Geometric median of block means.

    The number of blocks is b = 1 + floor(3.5 * ln(1/delta)), clamped to
    [1, n]; the first b * floor(n/b) samples are split into b consecutive
    blocks and the geometric median of the block means is returned.
    """
    arr = _as_sample_matrix(samples)
    n, _ = arr.shape
    b = 1 + math.floor(3.5 * math.log(1.0 / params.delta))
    b = min(max(b, 1), n)
    block = n // b
    means = arr[: b * block].reshape(b, block, -1).mean(axis=1)
    return geometric_median(means, tol=params.weiszfeld_tol,
                            max_iter=params.weiszfeld_max_iter)


def empirical_mean(samples) -> np.ndarray:
    """Coordinate-wise arithmetic mean (non-robust baseline)."""
    return _as_sample_matrix(samples).mean(axis=0)
