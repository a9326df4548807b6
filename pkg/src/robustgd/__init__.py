"""Robust gradient descent for risk minimization under contamination and
heavy-tailed noise: robust mean estimators, gradient oracles, the
projected descent loop, synthetic benchmark designs, and baselines."""

from .mean_estimators import (
    GmomParams,
    HuberParams,
    Interval,
    empirical_mean,
    geometric_median,
    gmom_mean,
    huber_mean,
    huber_mean_1d,
    huber_truncate,
    huber_truncate_1d,
    shortest_interval,
)
from .models import (
    CurvatureBounds,
    Dataset,
    ModelSpec,
    ModelTruth,
    ParameterDomain,
    gradient,
    loss,
    plugin_expfam,
    plugin_linreg,
    population_param_error,
    project,
)
from .gradient_oracles import (
    GradientErrorContract,
    GradientEstimatorSpec,
    estimate_gradient,
    per_sample_gradients,
)
from .optimizer import (
    RGDConfig,
    Trace,
    contraction_kappa,
    required_iterations,
    run_rgd,
    split_batches,
)
from .datagen import (
    HuberLinRegDesign,
    HuberLogisticDesign,
    ParetoLinRegDesign,
    gen_huber_linreg,
    gen_huber_logistic,
    gen_pareto_linreg,
)
from .baselines import TorrentConfig, ols, ols_gd, ridge, torrent
from .metrics import param_error, rel_eff, rmse, zero_one_error
from .selection import (
    Candidate,
    TournamentConfig,
    holdout_risk_select,
    pairwise_test,
    tournament_select,
)

__version__ = "0.1.0"
