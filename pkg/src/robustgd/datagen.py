"""Seeded synthetic data generators for the benchmark experiments.

Three designs are covered: linear regression under epsilon-contamination
(clean Gaussian covariates plus a wide-covariate, zero-response outlier
cluster), contaminated separable logistic regression (one class label
flipped with covariates blown up), and linear regression with centered
Pareto noise of a chosen tail index.

All generators are pure functions of (design, seed): the same design
yields byte-identical output.  Datasets round-trip through a simple CSV
format (header ``x_0,...,x_{p-1},y``, or ``z_0,...`` for exponential
family data).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .models import Dataset

__all__ = [
    "HuberLinRegDesign", "HuberLogisticDesign", "ParetoLinRegDesign",
    "gen_huber_linreg", "gen_huber_logistic", "gen_pareto_linreg",
    "pareto_noise", "save_csv", "load_csv",
]


def _default_n(p: int, epsilon: float) -> int:
    return int(math.ceil(10 * p / epsilon**2)) if epsilon > 0 else 100 * p


@dataclass(frozen=True)
class HuberLinRegDesign:
    """Contaminated linear regression: clean rows x ~ N(0, I),
    y = <x, theta*> + N(0, sigma2); outlier rows x ~ N(0, p^2 I), y = 0."""

    p: int
    epsilon: float = 0.1
    sigma2: float = 0.1
    n: int | None = None
    theta_star: np.ndarray | None = None
    seed: int = 0

    def resolved_n(self) -> int:
        return self.n if self.n is not None else _default_n(self.p, self.epsilon)

    def resolved_theta(self) -> np.ndarray:
        if self.theta_star is not None:
            return np.asarray(self.theta_star, dtype=float).ravel()
        return np.ones(self.p)

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 0.5:
            raise ValueError("epsilon must be in [0, 1/2)")
        if self.sigma2 < 0:
            raise ValueError("sigma2 must be nonnegative")


@dataclass(frozen=True)
class HuberLogisticDesign:
    """Contaminated separable classification: clean rows x ~ N(0, I),
    y = 1{<x, theta*> > 0}; outliers drawn from the positive class with
    the label flipped to 0 and covariates scaled by p^2."""

    p: int
    epsilon: float = 0.1
    n: int | None = None
    theta_star: np.ndarray | None = None
    seed: int = 0

    def resolved_n(self) -> int:
        return self.n if self.n is not None else _default_n(self.p, self.epsilon)

    def resolved_theta(self) -> np.ndarray:
        if self.theta_star is not None:
            return np.asarray(self.theta_star, dtype=float).ravel()
        return np.full(self.p, 1.0 / math.sqrt(self.p))

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 0.5:
            raise ValueError("epsilon must be in [0, 1/2)")


@dataclass(frozen=True)
class ParetoLinRegDesign:
    """Heavy-tailed linear regression: x ~ N(0, I) and centered Pareto
    noise with standard deviation sigma and tail index beta (> 2, so the
    variance is finite; moments of order >= beta diverge)."""

    p: int
    n: int
    sigma: float = 0.75
    beta: float = 3.0
    theta_star: np.ndarray | None = None
    seed: int = 0

    def resolved_theta(self) -> np.ndarray:
        if self.theta_star is not None:
            return np.asarray(self.theta_star, dtype=float).ravel()
        return np.full(self.p, 1.0 / math.sqrt(self.p))

    def __post_init__(self):
        if not self.beta > 2:
            raise ValueError("beta must exceed 2 for finite variance")
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")


def pareto_noise(rng: np.random.Generator, n: int, sigma: float, beta: float) -> np.ndarray:
    """Zero-mean Pareto draws with standard deviation sigma.

    The scale x_m = sigma*(beta-1)*sqrt((beta-2)/beta) makes the raw
    Pareto variance equal sigma^2; subtracting the raw mean
    beta*x_m/(beta-1) centers it.
    """
    if not beta > 2:
        raise ValueError("beta must exceed 2")
    x_m = sigma * (beta - 1.0) * math.sqrt((beta - 2.0) / beta)
    u = rng.uniform(0.0, 1.0, size=n)
    raw = x_m * u ** (-1.0 / beta)
    return raw - beta * x_m / (beta - 1.0)


def gen_huber_linreg(design: HuberLinRegDesign) -> Dataset:
    rng = np.random.default_rng(design.seed)
    n = design.resolved_n()
    theta = design.resolved_theta()
    p = design.p
    n_out = int(math.floor(design.epsilon * n))
    n_clean = n - n_out

    Xc = rng.standard_normal((n_clean, p))
    yc = Xc @ theta + math.sqrt(design.sigma2) * rng.standard_normal(n_clean)
    Xo = p * rng.standard_normal((n_out, p))
    yo = np.zeros(n_out)

    X = np.vstack([Xc, Xo])
    y = np.concatenate([yc, yo])
    perm = rng.permutation(n)
    return Dataset(X[perm], y[perm])


def gen_huber_logistic(design: HuberLogisticDesign) -> Dataset:
    rng = np.random.default_rng(design.seed)
    n = design.resolved_n()
    theta = design.resolved_theta()
    p = design.p
    n_out = int(math.floor(design.epsilon * n))
    n_clean = n - n_out

    Xc = rng.standard_normal((n_clean, p))
    yc = (Xc @ theta > 0).astype(float)

    # outliers come from the positive class: reflect negatives through the
    # separating hyperplane, flip the label, and blow up the covariates
    Xo = rng.standard_normal((n_out, p))
    neg = Xo @ theta <= 0
    Xo[neg] = -Xo[neg]
    Xo *= p**2
    yo = np.zeros(n_out)

    X = np.vstack([Xc, Xo])
    y = np.concatenate([yc, yo])
    perm = rng.permutation(n)
    return Dataset(X[perm], y[perm])


def gen_pareto_linreg(design: ParetoLinRegDesign) -> Dataset:
    rng = np.random.default_rng(design.seed)
    theta = design.resolved_theta()
    X = rng.standard_normal((design.n, design.p))
    w = pareto_noise(rng, design.n, design.sigma, design.beta)
    return Dataset(X, X @ theta + w)


def save_csv(data: Dataset, path) -> None:
    """Write a dataset as CSV with round-trip decimal formatting."""
    prefix = "z" if data.y is None else "x"
    cols = [f"{prefix}_{i}" for i in range(data.p)]
    if data.y is not None:
        cols.append("y")
    with open(path, "w", encoding="utf-8") as f:
        f.write(",".join(cols) + "\n")
        for i in range(data.n):
            row = [repr(float(v)) for v in data.X[i]]
            if data.y is not None:
                row.append(repr(float(data.y[i])))
            f.write(",".join(row) + "\n")


def load_csv(path) -> Dataset:
    """Read a dataset written by save_csv."""
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip().split(",")
        rows = [line.strip().split(",") for line in f if line.strip()]
    has_y = header[-1] == "y"
    arr = np.array(rows, dtype=float)
    if has_y:
        return Dataset(arr[:, :-1], arr[:, -1])
    return Dataset(arr)
