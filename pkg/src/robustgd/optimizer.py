"""Projected gradient descent with an inexact, robust gradient estimate.

Supports the sample-splitting variant (iteration t consumes batch t at
confidence delta/T, as used for the theory) and the practical variant
that reuses the full dataset every iteration.  Also provides the
contraction diagnostics: the per-step contraction factor kappa and the
iteration count at which the contracting term falls below the error floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .gradient_oracles import GradientEstimatorSpec, estimate_gradient
from .models import CurvatureBounds, Dataset, ModelSpec, population_param_error, project

DIVERGENCE_LIMIT = 1e12

__all__ = ["RGDConfig", "Trace", "split_batches", "run_rgd",
           "contraction_kappa", "required_iterations"]


@dataclass(frozen=True)
class RGDConfig:
    """Optimizer settings.

    step_size : explicit step size; if None, curvature must be given and
        the step resolves to 2 / (tau_l + tau_u)
    max_iters : iteration budget T
    delta : overall confidence, allocated as delta/T across iterations
        when sample splitting is on
    split_samples : if True, iteration t uses the t-th of T disjoint
        batches; otherwise every iteration uses the full dataset
    theta0 : initial point (defaults to the origin)
    conv_tol : stop once the iterate moves less than this (0 disables)
    """

    step_size: float | None = None
    curvature: CurvatureBounds | None = None
    max_iters: int = 200
    delta: float = 0.05
    split_samples: bool = False
    theta0: np.ndarray | None = None
    conv_tol: float = 1e-8

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.step_size is None and self.curvature is None:
            raise ValueError("either step_size or curvature must be given")
        if self.step_size is not None and not self.step_size > 0:
            raise ValueError("step_size must be positive")
        if self.conv_tol < 0:
            raise ValueError("conv_tol must be nonnegative")

    def resolved_step_size(self) -> float:
        if self.step_size is not None:
            return self.step_size
        return 2.0 / (self.curvature.tau_l + self.curvature.tau_u)


@dataclass
class Trace:
    """Per-iteration record of a descent run; iterates[0] is theta0."""

    iterates: list = field(default_factory=list)
    grad_norms: list = field(default_factory=list)
    param_errors: list | None = None

    @property
    def final(self) -> np.ndarray:
        return self.iterates[-1]

    @property
    def iterations(self) -> int:
        return len(self.iterates) - 1


def split_batches(data: Dataset, T: int) -> list[Dataset]:
    """T disjoint consecutive batches of size floor(n/T); the remainder
    is discarded."""
    n = len(data)
    if T < 1:
        raise ValueError("T must be >= 1")
    if n < T:
        raise ValueError(f"too few samples for {T} iterations (n={n})")
    size = n // T
    return [data.subset(slice(t * size, (t + 1) * size)) for t in range(T)]


def run_rgd(model: ModelSpec, data: Dataset, spec: GradientEstimatorSpec,
            config: RGDConfig) -> Trace:
    """Robust gradient descent: projected steps along a robustly
    estimated gradient.

    Raises on divergence (non-finite iterate or norm beyond 1e12).
    """
    if len(data) == 0:
        raise ValueError("empty dataset")
    eta = config.resolved_step_size()
    T = config.max_iters
    if config.split_samples:
        batches = split_batches(data, T)
        step_spec = spec.with_delta(config.delta / T)
    else:
        batches = None
        step_spec = spec.with_delta(config.delta)

    theta = (np.zeros(model.dim) if config.theta0 is None
             else np.asarray(config.theta0, dtype=float).ravel().copy())
    track_error = model.truth is not None
    trace = Trace(iterates=[theta.copy()],
                  param_errors=[population_param_error(model, theta)] if track_error else None)

    for t in range(T):
        batch = batches[t] if batches is not None else data
        g = estimate_gradient(model, theta, batch, step_spec)
        trace.grad_norms.append(float(np.linalg.norm(g)))
        nxt = project(model.domain, theta - eta * g)
        if not np.all(np.isfinite(nxt)) or np.linalg.norm(nxt) > DIVERGENCE_LIMIT:
            raise FloatingPointError("divergence")
        moved = float(np.linalg.norm(nxt - theta))
        theta = nxt
        trace.iterates.append(theta.copy())
        if track_error:
            trace.param_errors.append(population_param_error(model, theta))
        if config.conv_tol > 0 and moved < config.conv_tol:
            break
    return trace


def contraction_kappa(bounds: CurvatureBounds, eta: float, alpha: float) -> float:
    """Per-step error contraction factor
    sqrt(1 - 2*eta*tau_l*tau_u/(tau_l+tau_u)) + eta*alpha."""
    if not eta > 0:
        raise ValueError("eta must be positive")
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    radicand = 1.0 - 2.0 * eta * bounds.tau_l * bounds.tau_u / (bounds.tau_l + bounds.tau_u)
    if radicand < 0:
        raise ValueError("step size too large")
    return math.sqrt(radicand) + eta * alpha


def required_iterations(kappa: float, beta: float, init_dist: float) -> int:
    """Smallest iteration count at which the contracting term drops below
    the gradient-error floor beta / (1 - kappa); at least 1."""
    if not 0.0 < kappa < 1.0:
        raise ValueError("not contractive")
    if not beta > 0 or not init_dist > 0:
        raise ValueError("beta and init_dist must be positive")
    arg = (1.0 - kappa) * init_dist / beta
    if arg <= 1.0:
        return 1
    t = math.log(arg) / math.log(1.0 / kappa)
    # absorb float noise so exact integers are not rounded up
    return max(1, math.ceil(t - 1e-12))
