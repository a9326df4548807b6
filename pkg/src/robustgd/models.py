"""Risk-minimization model families.

Three families are supported: linear regression with squared loss,
logistic regression (negative log-likelihood), and an isotropic Gaussian
canonical exponential family (sufficient statistic z, log-partition
||theta||^2 / 2).  A model carries its parameter domain and, optionally,
ground-truth parameters for computing error metrics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .mean_estimators import HuberParams, huber_mean

LINEAR = "linear"
LOGISTIC = "logistic"
GAUSSIAN = "gaussian"
FAMILIES = (LINEAR, LOGISTIC, GAUSSIAN)

__all__ = [
    "LINEAR", "LOGISTIC", "GAUSSIAN", "FAMILIES",
    "Dataset", "ParameterDomain", "ModelTruth", "ModelSpec", "CurvatureBounds",
    "per_sample_losses", "loss", "gradient", "project",
    "population_param_error", "plugin_linreg", "plugin_expfam", "sigmoid",
]


@dataclass(frozen=True)
class Dataset:
    """A batch of observations.

    For the regression families X holds covariates and y the responses
    (y in {0, 1} for logistic).  For the exponential family X holds the
    observed sufficient statistics and y is None.
    """

    X: np.ndarray
    y: np.ndarray | None = None

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        if X.ndim != 2:
            raise ValueError(f"X must be (n, p), got shape {X.shape}")
        if not np.all(np.isfinite(X)):
            raise ValueError("X contains non-finite entries")
        object.__setattr__(self, "X", X)
        if self.y is not None:
            y = np.asarray(self.y, dtype=float).ravel()
            if y.size != X.shape[0]:
                raise ValueError("X and y lengths differ")
            if not np.all(np.isfinite(y)):
                raise ValueError("y contains non-finite entries")
            object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    def __len__(self) -> int:
        return self.n

    def subset(self, idx) -> "Dataset":
        return Dataset(self.X[idx], None if self.y is None else self.y[idx])


@dataclass(frozen=True)
class ParameterDomain:
    """Unconstrained space (radius None) or a centered L2 ball."""

    radius: float | None = None

    def __post_init__(self):
        if self.radius is not None and not (0.0 < self.radius < np.inf):
            raise ValueError(f"radius must be positive and finite, got {self.radius}")


@dataclass(frozen=True)
class ModelTruth:
    theta_star: np.ndarray
    sigma2: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "theta_star",
                           np.asarray(self.theta_star, dtype=float).ravel())


@dataclass(frozen=True)
class CurvatureBounds:
    """Strong-convexity (tau_l) and smoothness (tau_u) constants."""

    tau_l: float
    tau_u: float

    def __post_init__(self):
        if not 0.0 < self.tau_l <= self.tau_u:
            raise ValueError(f"need 0 < tau_l <= tau_u, got ({self.tau_l}, {self.tau_u})")


@dataclass(frozen=True)
class ModelSpec:
    family: str
    dim: int
    domain: ParameterDomain = field(default_factory=ParameterDomain)
    truth: ModelTruth | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.truth is not None and self.truth.theta_star.size != self.dim:
            raise ValueError("truth dimension does not match model dim")


def _check_theta(model: ModelSpec, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float).ravel()
    if theta.size != model.dim:
        raise ValueError(f"theta has dim {theta.size}, model expects {model.dim}")
    return theta


def sigmoid(t: np.ndarray) -> np.ndarray:
    out = np.empty_like(t, dtype=float)
    pos = t >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
    e = np.exp(t[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def per_sample_losses(model: ModelSpec, theta, data: Dataset) -> np.ndarray:
    """Loss of each observation at theta, as a length-n vector."""
    theta = _check_theta(model, theta)
    if data.p != model.dim:
        raise ValueError(f"data has dim {data.p}, model expects {model.dim}")
    if model.family == LINEAR:
        r = data.X @ theta - data.y
        return 0.5 * r * r
    if model.family == LOGISTIC:
        t = data.X @ theta
        # log(1 + exp(t)) via logaddexp for overflow safety
        return np.logaddexp(0.0, t) - data.y * t
    return -data.X @ theta + 0.5 * float(theta @ theta)


def loss(model: ModelSpec, theta, x, y: float | None = None) -> float:
    """Loss of a single observation."""
    data = Dataset(np.atleast_2d(np.asarray(x, dtype=float)),
                   None if y is None else [y])
    return float(per_sample_losses(model, theta, data)[0])


def gradient(model: ModelSpec, theta, x, y: float | None = None) -> np.ndarray:
    """Loss gradient of a single observation."""
    from .gradient_oracles import per_sample_gradients
    data = Dataset(np.atleast_2d(np.asarray(x, dtype=float)),
                   None if y is None else [y])
    return per_sample_gradients(model, theta, data)[0]


def project(domain: ParameterDomain, theta) -> np.ndarray:
    """Euclidean projection onto the parameter domain."""
    theta = np.asarray(theta, dtype=float).ravel()
    if domain.radius is None:
        return theta
    nrm = float(np.linalg.norm(theta))
    if nrm <= domain.radius:
        return theta
    return theta * (domain.radius / nrm)


def population_param_error(model: ModelSpec, theta) -> float:
    """L2 distance of theta to the model's ground-truth parameters."""
    if model.truth is None:
        raise ValueError("model has no ground-truth parameters")
    theta = _check_theta(model, theta)
    return float(np.linalg.norm(theta - model.truth.theta_star))


def plugin_linreg(data: Dataset, params: HuberParams) -> np.ndarray:
    """Closed-form linear-regression estimate from a robust mean of x*y.

    Assumes isotropic covariates, for which E[xy] equals the true
    parameter vector; the caller is responsible for that assumption.
    """
    if data.y is None:
        raise ValueError("plugin_linreg needs responses")
    return huber_mean(data.X * data.y[:, None], params)


def plugin_expfam(data: Dataset, params: HuberParams,
                  domain: ParameterDomain = ParameterDomain()) -> np.ndarray:
    """Exponential-family plugin estimate: robust mean of the sufficient
    statistics, projected onto the feasible set (the Gaussian family has
    an identity mean map, so no inversion is needed)."""
    return project(domain, huber_mean(data.X, params))
