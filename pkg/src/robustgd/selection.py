"""Hyperparameter selection over candidate solutions.

Two selectors: a pairwise density-comparison tournament for the
contaminated setting (candidate distributions are compared through the
frequency of the event {p_j(z) > p_k(z)} on held-out data versus under
each candidate's own model), and plain holdout empirical risk for the
heavy-tailed setting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .models import (
    GAUSSIAN,
    LINEAR,
    LOGISTIC,
    Dataset,
    ModelSpec,
    per_sample_losses,
    sigmoid,
)

__all__ = ["Candidate", "TournamentConfig", "pairwise_test",
           "tournament_select", "holdout_risk_select"]


@dataclass(frozen=True)
class Candidate:
    """A fitted parameter vector plus the hyperparameters that produced it."""

    theta_hat: np.ndarray
    epsilon: float | None = None
    delta: float | None = None

    def __post_init__(self):
        theta = np.asarray(self.theta_hat, dtype=float).ravel()
        if not np.all(np.isfinite(theta)):
            raise ValueError("candidate parameters must be finite")
        object.__setattr__(self, "theta_hat", theta)


@dataclass(frozen=True)
class TournamentConfig:
    mc_samples: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.mc_samples < 1:
            raise ValueError("mc_samples must be >= 1")


def _cond_loglik(model: ModelSpec, theta: np.ndarray, X: np.ndarray,
                 y: np.ndarray | None) -> np.ndarray:
    """Log density of each observation under theta, up to terms that are
    identical across candidates (so comparisons are unaffected)."""
    if model.family == LINEAR:
        r = y - X @ theta
        return -0.5 * r * r  # shared sigma^2 scaling drops out
    if model.family == LOGISTIC:
        t = X @ theta
        return y * t - np.logaddexp(0.0, t)
    assert model.family == GAUSSIAN
    return X @ theta - 0.5 * float(theta @ theta)


def _require_sigma(model: ModelSpec) -> float:
    if model.truth is None or model.truth.sigma2 is None:
        raise ValueError("linear-regression tournament needs the noise "
                         "variance (model.truth.sigma2)")
    return float(np.sqrt(model.truth.sigma2))


def _mc_draws(model: ModelSpec, validation: Dataset, cfg: TournamentConfig):
    """Common random numbers for the model-probability estimates, shared
    across all candidates and pairs so the tournament is invariant under
    candidate permutation."""
    rng = np.random.default_rng(cfg.seed)
    M = cfg.mc_samples
    if model.family == GAUSSIAN:
        return {"normal": rng.standard_normal((M, model.dim))}
    idx = rng.integers(0, validation.n, size=M)
    Xs = validation.X[idx]
    if model.family == LINEAR:
        return {"X": Xs, "normal": rng.standard_normal(M)}
    return {"X": Xs, "uniform": rng.uniform(size=M)}


def _sample_from(model: ModelSpec, theta: np.ndarray, draws,
                 sigma: float = 1.0) -> tuple:
    """Observations drawn from the candidate's model, conditioning on the
    validation covariates for the regression families."""
    if model.family == GAUSSIAN:
        return theta[None, :] + draws["normal"], None
    X = draws["X"]
    if model.family == LINEAR:
        y = X @ theta + sigma * draws["normal"]
    else:
        y = (draws["uniform"] < sigmoid(X @ theta)).astype(float)
    return X, y


def _win_freq(model: ModelSpec, tj: np.ndarray, tk: np.ndarray,
              X: np.ndarray, y: np.ndarray | None) -> float:
    lj = _cond_loglik(model, tj, X, y)
    lk = _cond_loglik(model, tk, X, y)
    return float(np.mean(lj > lk))


def pairwise_test(candidate_j: Candidate, candidate_k: Candidate,
                  validation: Dataset, model: ModelSpec,
                  cfg: TournamentConfig) -> bool:
    """Density-comparison test between two candidates.

    Returns True (candidate k favored) when the held-out frequency of
    {p_j(z) > p_k(z)} deviates strictly more from its probability under
    candidate j's model than from its probability under candidate k's;
    ties favor j.  Model probabilities are Monte Carlo estimates with
    cfg.mc_samples seeded draws.
    """
    tj, tk = candidate_j.theta_hat, candidate_k.theta_hat
    sigma = _require_sigma(model) if model.family == LINEAR else 1.0
    draws = _mc_draws(model, validation, cfg)
    emp = _win_freq(model, tj, tk, validation.X, validation.y)
    pj = _win_freq(model, tj, tk, *_sample_from(model, tj, draws, sigma))
    pk = _win_freq(model, tj, tk, *_sample_from(model, tk, draws, sigma))
    return abs(emp - pj) > abs(emp - pk)


def tournament_select(candidates: list[Candidate], validation: Dataset,
                      model: ModelSpec, cfg: TournamentConfig) -> int:
    """Index of the candidate losing the fewest pairwise tests; ties are
    broken by the smallest index."""
    if not candidates:
        raise ValueError("empty candidate list")
    m = len(candidates)
    losses = np.zeros(m, dtype=int)
    for j in range(m):
        for k in range(m):
            if j != k and pairwise_test(candidates[j], candidates[k],
                                        validation, model, cfg):
                losses[j] += 1
    return int(np.argmin(losses))


def holdout_risk_select(candidates: list[Candidate], validation: Dataset,
                        model: ModelSpec) -> int:
    """Index of the candidate with smallest empirical risk on the
    validation data; ties broken by the smallest index."""
    if not candidates:
        raise ValueError("empty candidate list")
    risks = [float(np.mean(per_sample_losses(model, c.theta_hat, validation)))
             for c in candidates]
    return int(np.argmin(risks))
