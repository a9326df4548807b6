"""Tests for the seeded synthetic data generators.

Derived expectations for the centered Pareto noise are checked against
the closed-form mean beta*x_m/(beta-1) and variance
x_m^2 * beta / ((beta-1)^2 (beta-2)) computed independently here.
"""

import math

import numpy as np
import pytest

from robustgd.baselines import ols
from robustgd.datagen import (
    HuberLinRegDesign,
    HuberLogisticDesign,
    ParetoLinRegDesign,
    gen_huber_linreg,
    gen_huber_logistic,
    gen_pareto_linreg,
    load_csv,
    pareto_noise,
    save_csv,
)
from robustgd.models import Dataset


class TestHuberLinReg:
    def test_reproducible(self):
        design = HuberLinRegDesign(p=6, epsilon=0.1, n=500, seed=3)
        a, b = gen_huber_linreg(design), gen_huber_linreg(design)
        assert np.array_equal(a.X, b.X) and np.array_equal(a.y, b.y)

    def test_clean_data_ols_recovers_theta(self):
        p, n = 8, 4000
        design = HuberLinRegDesign(p=p, epsilon=0.0, sigma2=0.1, n=n, seed=0)
        data = gen_huber_linreg(design)
        err = np.linalg.norm(ols(data) - design.resolved_theta())
        assert err <= 3.0 * math.sqrt(0.1) * math.sqrt(p / n)

    def test_noiseless_exact(self):
        design = HuberLinRegDesign(p=4, epsilon=0.0, sigma2=0.0, n=100, seed=1)
        data = gen_huber_linreg(design)
        assert data.y == pytest.approx(data.X @ design.resolved_theta(), abs=1e-12)

    def test_contamination_count_and_norms(self):
        p, n, eps = 16, 1000, 0.1
        design = HuberLinRegDesign(p=p, epsilon=eps, sigma2=0.1, n=n, seed=2)
        data = gen_huber_linreg(design)
        outliers = data.y == 0.0
        assert int(outliers.sum()) == math.floor(eps * n)
        # outlier covariates are N(0, p^2 I): norms concentrate near p*sqrt(p)
        norms = np.linalg.norm(data.X[outliers], axis=1)
        assert np.all(norms > 0.5 * p * math.sqrt(p))
        assert np.all(norms < 2.0 * p * math.sqrt(p))

    def test_default_n(self):
        assert HuberLinRegDesign(p=32, epsilon=0.1).resolved_n() == 32_000

    def test_epsilon_validation(self):
        with pytest.raises(ValueError):
            HuberLinRegDesign(p=4, epsilon=0.5)

    def test_clean_covariance_near_identity(self):
        design = HuberLinRegDesign(p=16, epsilon=0.0, n=10_000, seed=4)
        data = gen_huber_linreg(design)
        cov = data.X.T @ data.X / data.n
        dev = np.linalg.norm(cov - np.eye(16), ord=2)
        assert dev <= 3.0 * math.sqrt(16 / 10_000)


class TestHuberLogistic:
    def test_reproducible(self):
        design = HuberLogisticDesign(p=5, epsilon=0.1, n=300, seed=7)
        a, b = gen_huber_logistic(design), gen_huber_logistic(design)
        assert np.array_equal(a.X, b.X) and np.array_equal(a.y, b.y)

    def test_clean_data_separable(self):
        design = HuberLogisticDesign(p=6, epsilon=0.0, n=500, seed=0)
        data = gen_huber_logistic(design)
        margins = data.X @ design.resolved_theta()
        assert np.all((margins > 0) == (data.y == 1.0))

    def test_labels_binary(self):
        design = HuberLogisticDesign(p=4, epsilon=0.2, n=400, seed=1)
        data = gen_huber_logistic(design)
        assert set(np.unique(data.y)) <= {0.0, 1.0}

    def test_outlier_count_and_scale(self):
        p, n, eps = 4, 1000, 0.1
        design = HuberLogisticDesign(p=p, epsilon=eps, n=n, seed=2)
        data = gen_huber_logistic(design)
        norms = np.linalg.norm(data.X, axis=1)
        big = norms > 5.5  # clean norms are O(sqrt(p)), outliers O(p^2 sqrt(p))
        assert int(big.sum()) == math.floor(eps * n)
        # outliers carry a flipped label and sit on the positive side
        assert np.all(data.y[big] == 0.0)
        assert np.all(data.X[big] @ design.resolved_theta() > 0)

    def test_default_theta_unit_norm(self):
        theta = HuberLogisticDesign(p=9).resolved_theta()
        assert np.linalg.norm(theta) == pytest.approx(1.0)


class TestParetoNoise:
    def test_mean_centered(self):
        rng = np.random.default_rng(0)
        sigma = 0.75
        w = pareto_noise(rng, 10**6, sigma, 3.0)
        assert abs(float(np.mean(w))) <= 0.01 * sigma

    def test_variance_matches_formula(self):
        # independent oracle: x_m^2 * beta / ((beta-1)^2 (beta-2))
        beta, sigma = 3.0, 0.75
        x_m = sigma * (beta - 1) * math.sqrt((beta - 2) / beta)
        var_expected = x_m**2 * beta / ((beta - 1) ** 2 * (beta - 2))
        assert var_expected == pytest.approx(sigma**2)
        assert var_expected == pytest.approx(0.5625)
        rng = np.random.default_rng(1)
        w = pareto_noise(rng, 10**6, sigma, beta)
        assert float(np.var(w)) == pytest.approx(0.5625, rel=0.05)

    def test_third_moment_grows(self):
        # beta = 3: moments of order >= 3 diverge, so the empirical third
        # absolute moment keeps growing with the sample size
        rng = np.random.default_rng(2)
        w = pareto_noise(rng, 10**6, 0.75, 3.0)
        m_small = np.mean(np.abs(w[:10**4]) ** 3)
        m_large = np.mean(np.abs(w) ** 3)
        assert m_large > 2.0 * m_small

    def test_beta_validation(self):
        rng = np.random.default_rng(3)
        with pytest.raises(ValueError):
            pareto_noise(rng, 10, 1.0, 2.0)
        with pytest.raises(ValueError):
            ParetoLinRegDesign(p=2, n=10, beta=1.5)


class TestParetoLinReg:
    def test_reproducible(self):
        design = ParetoLinRegDesign(p=4, n=256, seed=5)
        a, b = gen_pareto_linreg(design), gen_pareto_linreg(design)
        assert np.array_equal(a.X, b.X) and np.array_equal(a.y, b.y)

    def test_residuals_are_the_noise(self):
        design = ParetoLinRegDesign(p=4, n=5000, sigma=0.75, beta=3.0, seed=6)
        data = gen_pareto_linreg(design)
        w = data.y - data.X @ design.resolved_theta()
        assert abs(float(np.mean(w))) <= 0.1
        assert float(np.var(w)) == pytest.approx(0.5625, rel=0.25)


class TestCsvRoundTrip:
    def test_regression_round_trip(self, tmp_path):
        design = HuberLinRegDesign(p=3, epsilon=0.1, n=50, seed=8)
        data = gen_huber_linreg(design)
        path = tmp_path / "data.csv"
        save_csv(data, path)
        back = load_csv(path)
        assert np.array_equal(back.X, data.X)
        assert np.array_equal(back.y, data.y)
        header = path.read_text().splitlines()[0]
        assert header == "x_0,x_1,x_2,y"

    def test_expfam_round_trip(self, tmp_path):
        rng = np.random.default_rng(9)
        data = Dataset(rng.standard_normal((20, 2)))
        path = tmp_path / "z.csv"
        save_csv(data, path)
        back = load_csv(path)
        assert back.y is None
        assert np.array_equal(back.X, data.X)
        assert path.read_text().splitlines()[0] == "z_0,z_1"
