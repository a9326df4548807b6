"""Benchmark harness: runs methods over seed/grid sweeps and writes reports.

An experiment config names a generator family, a grid (any list-valued
design key is swept, cross-product style), a trial count, and a list of
methods.  Every (grid point, trial) pair derives its data seed purely
from (global seed, grid index, trial index), so adding or removing
methods never perturbs another method's data.  Results are written as
CSV (or a JSON mirror with the same field names) with the fixed header::

    experiment,method,p,n,epsilon,beta,sigma,trial,iter,param_error,
    zero_one_error,rel_eff_vs_ols,runtime_ms
"""

from __future__ import annotations

import itertools
import json
import os
import time
from dataclasses import dataclass, field

import numpy as np

from . import baselines, datagen, metrics, selection
from .gradient_oracles import EMPIRICAL, GMOM, HUBER, GradientEstimatorSpec
from .models import Dataset, ModelSpec, ModelTruth, ParameterDomain
from .optimizer import RGDConfig, run_rgd

RESULT_FIELDS = ["experiment", "method", "p", "n", "epsilon", "beta", "sigma",
                 "trial", "iter", "param_error", "zero_one_error",
                 "rel_eff_vs_ols", "runtime_ms"]

EXPERIMENTS = ("huber-linreg", "huber-logistic", "heavy-linreg",
               "plugin-compare", "tournament")

KNOWN_METHODS = ("rgd-huber", "rgd-gmom", "ols", "ols-gd", "ridge", "torrent",
                 "plugin", "mle-gd", "tournament-gd", "oracle-gd")

# methods whose result is a full descent trace (one row per iteration)
_TRACE_METHODS = {"rgd-huber", "rgd-gmom", "ols-gd", "mle-gd"}

SAMPLE_CAP = 100_000  # desk-scale cap on the default n = 10 p / eps^2

__all__ = ["ExperimentConfig", "run_experiment", "write_results",
           "read_results", "aggregate_rows", "RESULT_FIELDS",
           "EXPERIMENTS", "KNOWN_METHODS"]


@dataclass
class ExperimentConfig:
    experiment: str
    methods: list[str]
    grid: dict = field(default_factory=dict)    # swept keys -> list of values
    fixed: dict = field(default_factory=dict)   # fixed design keys
    trials: int = 20
    seed: int = 0
    max_iters: int = 30
    conv_tol: float = 0.0
    delta: float = 0.05
    trunc_const: float = 2.0
    eta: float | None = None
    ridge_lambda: float = 0.1
    record_runtime: bool = False
    eps_grid: list[float] = field(default_factory=lambda: [0.01, 0.02, 0.05, 0.1, 0.2, 0.4])
    holdout_fraction: float = 0.2
    mc_samples: int = 2000

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if not self.methods:
            raise ValueError("methods must be nonempty")
        for m in self.methods:
            if m not in KNOWN_METHODS:
                raise ValueError(f"unknown method {m!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")

    def grid_points(self) -> list[dict]:
        """Cross product of the swept keys merged over the fixed keys."""
        if not self.grid:
            return [dict(self.fixed)]
        keys = list(self.grid)
        points = []
        for combo in itertools.product(*(self.grid[k] for k in keys)):
            pt = dict(self.fixed)
            pt.update(dict(zip(keys, combo)))
            points.append(pt)
        return points

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        raw = dict(raw)
        known = {"experiment", "methods", "grid", "trials", "seed", "max_iters",
                 "conv_tol", "delta", "trunc_const", "eta", "ridge_lambda",
                 "record_runtime", "eps_grid", "holdout_fraction", "mc_samples"}
        kwargs = {k: raw.pop(k) for k in list(raw) if k in known}
        kwargs["grid"] = {k: v for k, v in kwargs.get("grid", {}).items()}
        # remaining top-level keys are fixed design values (p, n, epsilon, ...)
        kwargs["fixed"] = raw
        return cls(**kwargs)


def _derive_seed(global_seed: int, grid_index: int, trial_index: int) -> int:
    ss = np.random.SeedSequence((int(global_seed), int(grid_index), int(trial_index)))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _point_design(config: ExperimentConfig, point: dict, seed: int):
    """Instantiate (design, model) for one grid point."""
    exp = config.experiment
    p = int(point.get("p", 32))
    eps = float(point.get("epsilon", 0.1))
    if exp in ("huber-linreg", "plugin-compare", "tournament"):
        sigma2 = float(point.get("sigma2", 0.1))
        n = point.get("n")
        n = int(n) if n is not None else min(datagen._default_n(p, eps), SAMPLE_CAP)
        theta = point.get("theta_star")
        design = datagen.HuberLinRegDesign(p=p, epsilon=eps, sigma2=sigma2,
                                           n=n, theta_star=theta, seed=seed)
        model = ModelSpec("linear", p, truth=ModelTruth(design.resolved_theta(), sigma2))
        return design, model
    if exp == "huber-logistic":
        n = point.get("n")
        n = int(n) if n is not None else min(datagen._default_n(p, eps), SAMPLE_CAP)
        design = datagen.HuberLogisticDesign(p=p, epsilon=eps, n=n, seed=seed)
        model = ModelSpec("logistic", p, domain=ParameterDomain(100.0),
                          truth=ModelTruth(design.resolved_theta()))
        return design, model
    assert exp == "heavy-linreg"
    n = int(point.get("n", 16 * p))
    sigma = float(point.get("sigma", 0.75))
    beta = float(point.get("beta", 3.0))
    design = datagen.ParetoLinRegDesign(p=p, n=n, sigma=sigma, beta=beta, seed=seed)
    model = ModelSpec("linear", p, truth=ModelTruth(design.resolved_theta(), sigma**2))
    return design, model


def _generate(design) -> Dataset:
    if isinstance(design, datagen.HuberLinRegDesign):
        return datagen.gen_huber_linreg(design)
    if isinstance(design, datagen.HuberLogisticDesign):
        return datagen.gen_huber_logistic(design)
    return datagen.gen_pareto_linreg(design)


def _default_eta(config: ExperimentConfig, model: ModelSpec) -> float:
    if config.eta is not None:
        return config.eta
    # isotropic quadratic: tau_l = tau_u = 1; logistic curvature ~ 1/4
    return 4.0 if model.family == "logistic" else 1.0


def _rgd_config(config: ExperimentConfig, model: ModelSpec) -> RGDConfig:
    return RGDConfig(step_size=_default_eta(config, model),
                     max_iters=config.max_iters, delta=config.delta,
                     conv_tol=config.conv_tol)


def _run_method(method: str, config: ExperimentConfig, model: ModelSpec,
                design, data: Dataset, seed: int):
    """Run one method; returns (per-iteration errors or None, final theta)."""
    eps = getattr(design, "epsilon", 0.0)
    if method in ("rgd-huber", "oracle-gd"):
        spec = GradientEstimatorSpec(kind=HUBER, epsilon=eps, delta=config.delta,
                                     trunc_const=config.trunc_const)
        trace = run_rgd(model, data, spec, _rgd_config(config, model))
        return trace.param_errors, trace.final
    if method == "rgd-gmom":
        spec = GradientEstimatorSpec(kind=GMOM, delta=config.delta)
        trace = run_rgd(model, data, spec, _rgd_config(config, model))
        return trace.param_errors, trace.final
    if method in ("ols-gd", "mle-gd"):
        spec = GradientEstimatorSpec(kind=EMPIRICAL)
        trace = run_rgd(model, data, spec, _rgd_config(config, model))
        return trace.param_errors, trace.final
    if method == "ols":
        theta = baselines.ols(data)
    elif method == "ridge":
        theta = baselines.ridge(data, config.ridge_lambda)
    elif method == "torrent":
        keep = 1.0 - eps if eps > 0 else 0.9
        theta = baselines.torrent(data, baselines.TorrentConfig(keep_fraction=keep))
    elif method == "plugin":
        from .mean_estimators import HuberParams
        from .models import plugin_linreg
        theta = plugin_linreg(data, HuberParams(eps, config.delta, config.trunc_const))
    elif method == "tournament-gd":
        theta = _tournament_run(config, model, design, data, seed)
    else:  # pragma: no cover - guarded by config validation
        raise ValueError(f"unknown method {method!r}")
    return None, theta


def _tournament_run(config: ExperimentConfig, model: ModelSpec, design,
                    data: Dataset, seed: int) -> np.ndarray:
    """Sweep the contamination grid, fit one candidate per value on the
    training split, and pick a winner by the pairwise tournament."""
    n_val = max(1, int(round(config.holdout_fraction * data.n)))
    val, train = data.subset(slice(0, n_val)), data.subset(slice(n_val, data.n))
    cands = []
    for eps in config.eps_grid:
        spec = GradientEstimatorSpec(kind=HUBER, epsilon=eps, delta=config.delta,
                                     trunc_const=config.trunc_const)
        trace = run_rgd(model, train, spec, _rgd_config(config, model))
        cands.append(selection.Candidate(trace.final, epsilon=eps, delta=config.delta))
    cfg = selection.TournamentConfig(mc_samples=config.mc_samples, seed=seed)
    return cands[selection.tournament_select(cands, val, model, cfg)].theta_hat


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _clean_test_set(config: ExperimentConfig, design, seed: int) -> Dataset:
    test_design = datagen.HuberLogisticDesign(
        p=design.p, epsilon=0.0, n=2000, theta_star=design.theta_star, seed=seed)
    return datagen.gen_huber_logistic(test_design)


def run_experiment(config: ExperimentConfig) -> list[dict]:
    """Run the full grid x trial x method sweep; returns result rows."""
    rows = []
    for gi, point in enumerate(config.grid_points()):
        for trial in range(config.trials):
            data_seed = _derive_seed(config.seed, gi, trial)
            design, model = _point_design(config, point, data_seed)
            data = _generate(design)
            test = None
            if config.experiment == "huber-logistic":
                test = _clean_test_set(config, design, _derive_seed(config.seed, gi, trial + 1_000_003))
            finals: dict[str, float] = {}
            method_rows: dict[str, list] = {}
            for method in config.methods:
                t0 = time.perf_counter()
                errs, theta = _run_method(method, config, model, design, data, data_seed)
                runtime = (time.perf_counter() - t0) * 1000.0
                final_err = metrics.param_error(theta, model.truth.theta_star)
                finals[method] = final_err
                base = {
                    "experiment": config.experiment, "method": method,
                    "p": model.dim, "n": data.n,
                    "epsilon": getattr(design, "epsilon", None),
                    "beta": getattr(design, "beta", None),
                    "sigma": getattr(design, "sigma", None),
                    "trial": trial,
                }
                mrows = []
                if errs is not None:
                    for it, e in enumerate(errs):
                        mrows.append({**base, "iter": it, "param_error": e,
                                      "zero_one_error": None,
                                      "rel_eff_vs_ols": None, "runtime_ms": None})
                else:
                    mrows.append({**base, "iter": 0, "param_error": final_err,
                                  "zero_one_error": None,
                                  "rel_eff_vs_ols": None, "runtime_ms": None})
                if test is not None:
                    mrows[-1]["zero_one_error"] = metrics.zero_one_error(theta, test)
                if config.record_runtime:
                    mrows[-1]["runtime_ms"] = runtime
                method_rows[method] = mrows
            if "ols" in finals:
                for method, mrows in method_rows.items():
                    if method != "ols" and finals[method] > 0:
                        mrows[-1]["rel_eff_vs_ols"] = metrics.rel_eff(
                            finals[method], finals["ols"])
            for method in config.methods:
                rows.extend(method_rows[method])
    return rows


def write_results(rows: list[dict], path, fmt: str = "csv") -> None:
    """Write result rows as CSV (exact header) or a JSON mirror.

    On failure the partial file is removed.
    """
    try:
        with open(path, "w", encoding="utf-8") as f:
            if fmt == "json":
                json.dump([{k: row.get(k) for k in RESULT_FIELDS} for row in rows],
                          f, indent=2)
                f.write("\n")
            else:
                f.write(",".join(RESULT_FIELDS) + "\n")
                for row in rows:
                    f.write(",".join(_fmt(row.get(k)) for k in RESULT_FIELDS) + "\n")
    except Exception:
        if os.path.exists(path):
            os.remove(path)
        raise


def read_results(path) -> list[dict]:
    """Parse a results CSV back into typed row dicts (lossless round trip)."""
    with open(path, "r", encoding="utf-8") as f:
        header = f.readline().strip().split(",")
        if header != RESULT_FIELDS:
            raise ValueError(f"unexpected results header: {header}")
        rows = []
        for line in f:
            if not line.strip():
                continue
            vals = line.rstrip("\n").split(",")
            row = {}
            for key, val in zip(RESULT_FIELDS, vals):
                if val == "":
                    row[key] = None
                elif key in ("experiment", "method"):
                    row[key] = val
                elif key in ("p", "n", "trial", "iter"):
                    row[key] = int(val)
                else:
                    row[key] = float(val)
            rows.append(row)
    return rows


_GROUP_KEYS = ["experiment", "method", "p", "n", "epsilon", "beta", "sigma", "iter"]
_METRIC_KEYS = ["param_error", "zero_one_error", "rel_eff_vs_ols"]


def aggregate_rows(rows: list[dict]) -> list[dict]:
    """Per-(method, grid point, iteration) mean and stddev of every metric.

    Stddev is the population standard deviation over trials.
    """
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        key = tuple(row.get(k) for k in _GROUP_KEYS)
        groups.setdefault(key, []).append(row)
    out = []
    for key in sorted(groups, key=lambda k: tuple(str(x) for x in k)):
        members = groups[key]
        agg = dict(zip(_GROUP_KEYS, key))
        agg["trials"] = len(members)
        for mk in _METRIC_KEYS:
            vals = [m[mk] for m in members if m.get(mk) is not None]
            if vals:
                agg[f"{mk}_mean"] = float(np.mean(vals))
                agg[f"{mk}_std"] = float(np.std(vals))
            else:
                agg[f"{mk}_mean"] = None
                agg[f"{mk}_std"] = None
        out.append(agg)
    return out
