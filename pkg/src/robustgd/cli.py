"""Command-line entry point.

Subcommands:
  generate   write a synthetic dataset CSV from a design
  run        run an experiment sweep from a TOML config file
  select     hyperparameter selection over a contamination grid
  report     aggregate a results CSV into mean/stddev summary tables

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from . import bench, datagen, selection
from .gradient_oracles import HUBER, GradientEstimatorSpec
from .models import ModelSpec, ModelTruth, ParameterDomain
from .optimizer import RGDConfig, run_rgd


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="robustgd",
                     description="Robust gradient descent benchmark harness")
    sub = parser.add_subparsers(dest="command")

    gen = sub.add_parser("generate", help="write a synthetic dataset CSV")
    gen.add_argument("--design", required=True,
                     choices=["huber-linreg", "huber-logistic", "pareto-linreg"])
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--n", type=int, default=None)
    gen.add_argument("--epsilon", type=float, default=0.1)
    gen.add_argument("--sigma2", type=float, default=0.1)
    gen.add_argument("--sigma", type=float, default=0.75)
    gen.add_argument("--beta", type=float, default=3.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)

    run = sub.add_parser("run", help="run an experiment from a config file")
    run.add_argument("--config", required=True)
    run.add_argument("--out", required=True)
    run.add_argument("--seed", type=int, default=None, help="override config seed")
    run.add_argument("--format", choices=["csv", "json"], default="csv")

    sel = sub.add_parser("select", help="pick hyperparameters on a dataset")
    sel.add_argument("--data", required=True, help="dataset CSV (see generate)")
    sel.add_argument("--family", choices=["linear", "logistic"], default="linear")
    sel.add_argument("--mode", choices=["tournament", "holdout"], default="tournament")
    sel.add_argument("--eps-grid", default="0.01,0.02,0.05,0.1,0.2,0.4")
    sel.add_argument("--holdout-fraction", type=float, default=0.2)
    sel.add_argument("--sigma2", type=float, default=0.1,
                     help="noise variance for linear-model likelihoods")
    sel.add_argument("--eta", type=float, default=1.0)
    sel.add_argument("--max-iters", type=int, default=30)
    sel.add_argument("--mc-samples", type=int, default=2000)
    sel.add_argument("--seed", type=int, default=0)
    sel.add_argument("--out", default=None, help="write the selection as JSON")

    rep = sub.add_parser("report", help="summarize a results CSV")
    rep.add_argument("results", help="results CSV produced by `run`")
    rep.add_argument("--format", choices=["csv", "json"], default="csv")
    rep.add_argument("--out", default=None)
    return parser


def _cmd_generate(args) -> int:
    if args.design == "huber-linreg":
        design = datagen.HuberLinRegDesign(p=args.p, epsilon=args.epsilon,
                                           sigma2=args.sigma2, n=args.n, seed=args.seed)
        data = datagen.gen_huber_linreg(design)
    elif args.design == "huber-logistic":
        design = datagen.HuberLogisticDesign(p=args.p, epsilon=args.epsilon,
                                             n=args.n, seed=args.seed)
        data = datagen.gen_huber_logistic(design)
    else:
        if args.n is None:
            raise ValueError("--n is required for pareto-linreg")
        design = datagen.ParetoLinRegDesign(p=args.p, n=args.n, sigma=args.sigma,
                                            beta=args.beta, seed=args.seed)
        data = datagen.gen_pareto_linreg(design)
    datagen.save_csv(data, args.out)
    print(f"wrote {data.n} observations (p={data.p}) to {args.out}")
    return 0


def _cmd_run(args) -> int:
    with open(args.config, "rb") as f:
        raw = tomllib.load(f)
    if args.seed is not None:
        raw["seed"] = args.seed
    config = bench.ExperimentConfig.from_dict(raw)
    rows = bench.run_experiment(config)
    bench.write_results(rows, args.out, fmt=args.format)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_select(args) -> int:
    data = datagen.load_csv(args.data)
    grid = [float(v) for v in args.eps_grid.split(",") if v]
    n_val = max(1, int(round(args.holdout_fraction * data.n)))
    val, train = data.subset(slice(0, n_val)), data.subset(slice(n_val, data.n))
    model = ModelSpec(args.family, data.p,
                      domain=ParameterDomain(100.0) if args.family == "logistic" else ParameterDomain(),
                      truth=ModelTruth(np.zeros(data.p), args.sigma2))
    cands = []
    for eps in grid:
        spec = GradientEstimatorSpec(kind=HUBER, epsilon=eps)
        trace = run_rgd(model, train, spec,
                        RGDConfig(step_size=args.eta, max_iters=args.max_iters,
                                  conv_tol=1e-8))
        cands.append(selection.Candidate(trace.final, epsilon=eps))
    if args.mode == "holdout":
        idx = selection.holdout_risk_select(cands, val, model)
    else:
        idx = selection.tournament_select(
            cands, val, model,
            selection.TournamentConfig(mc_samples=args.mc_samples, seed=args.seed))
    result = {"epsilon": cands[idx].epsilon,
              "theta_hat": [float(v) for v in cands[idx].theta_hat]}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            json.dump(result, f, indent=2)
    print(f"selected epsilon={cands[idx].epsilon}")
    return 0


_REPORT_FIELDS = ["experiment", "method", "p", "n", "epsilon", "beta", "sigma",
                  "iter", "trials",
                  "param_error_mean", "param_error_std",
                  "zero_one_error_mean", "zero_one_error_std",
                  "rel_eff_vs_ols_mean", "rel_eff_vs_ols_std"]


def format_report(aggs: list[dict], fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps([{k: a.get(k) for k in _REPORT_FIELDS} for a in aggs],
                          indent=2) + "\n"
    lines = [",".join(_REPORT_FIELDS)]
    for a in aggs:
        lines.append(",".join(bench._fmt(a.get(k)) for k in _REPORT_FIELDS))
    return "\n".join(lines) + "\n"


def _cmd_report(args) -> int:
    rows = bench.read_results(args.results)
    text = format_report(bench.aggregate_rows(rows), fmt=args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 1
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    try:
        handler = {"generate": _cmd_generate, "run": _cmd_run,
                   "select": _cmd_select, "report": _cmd_report}[args.command]
        return handler(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
