"""Choosing the contamination level when it is unknown.

Fits one robust-GD candidate per value of a contamination grid on a
training split, then picks a winner on a holdout split two ways: the
pairwise density-comparison tournament and plain holdout risk.

Run:  python3 demos/selection_demo.py
"""

import numpy as np

from robustgd import (
    Candidate,
    GradientEstimatorSpec,
    HuberLinRegDesign,
    ModelSpec,
    ModelTruth,
    RGDConfig,
    TournamentConfig,
    gen_huber_linreg,
    holdout_risk_select,
    param_error,
    run_rgd,
    tournament_select,
)

true_eps = 0.1
design = HuberLinRegDesign(p=16, epsilon=true_eps, sigma2=0.1, n=4000, seed=1)
data = gen_huber_linreg(design)
theta_star = design.resolved_theta()
model = ModelSpec("linear", design.p, truth=ModelTruth(theta_star, design.sigma2))

n_val = data.n // 5
val, train = data.subset(slice(0, n_val)), data.subset(slice(n_val, data.n))

grid = [0.01, 0.02, 0.05, 0.1, 0.2, 0.4]
cands = []
for eps in grid:
    spec = GradientEstimatorSpec(kind="huber", epsilon=eps)
    trace = run_rgd(model, train, spec,
                    RGDConfig(step_size=1.0, max_iters=30, conv_tol=1e-8))
    cands.append(Candidate(trace.final, epsilon=eps))
    print(f"eps = {eps:<5}: parameter error {param_error(trace.final, theta_star):.4f}")

t_idx = tournament_select(cands, val, model,
                          TournamentConfig(mc_samples=5000, seed=0))
h_idx = holdout_risk_select(cands, val, model)
print(f"\ntrue contamination level : {true_eps}")
print(f"tournament selects eps = {cands[t_idx].epsilon}")
print(f"holdout risk selects eps = {cands[h_idx].epsilon}")
