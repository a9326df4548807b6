"""Robust multivariate mean estimation under contamination and heavy tails.

Draws a mostly-Gaussian sample with a planted outlier cluster, then a
heavy-tailed Pareto sample, and compares the plain mean against the
contamination-robust estimator and the geometric median-of-means.

Run:  python3 demos/robust_mean_demo.py
"""

import numpy as np

from robustgd import (
    GmomParams,
    HuberParams,
    empirical_mean,
    gmom_mean,
    huber_mean,
)
from robustgd.datagen import pareto_noise

rng = np.random.default_rng(0)

# --- contaminated sample: 90% N(0, I), 10% at a fixed point of norm 100
p, n = 8, 2000
outlier = np.full(p, 100.0 / np.sqrt(p))
sample = np.vstack([rng.standard_normal((int(0.9 * n), p)),
                    np.tile(outlier, (n - int(0.9 * n), 1))])
sample = sample[rng.permutation(n)]

print("contaminated sample (true mean = 0, 10% outliers at norm 100)")
print(f"  plain mean error : {np.linalg.norm(empirical_mean(sample)):8.4f}")
est = huber_mean(sample, HuberParams(epsilon=0.1, delta=0.05))
print(f"  robust mean error: {np.linalg.norm(est):8.4f}")

# --- heavy-tailed sample: centered Pareto noise, tail index 3; this draw
# contains a tail event that drags the plain mean but not the block median
w = pareto_noise(np.random.default_rng(5), 500, sigma=0.75, beta=3.0)
print("\nheavy-tailed 1D sample (centered Pareto, beta = 3)")
print(f"  plain mean       : {float(np.mean(w)):+8.4f}")
print(f"  gmom estimate    : {float(gmom_mean(w[:, None], GmomParams(delta=0.01))[0]):+8.4f}")
