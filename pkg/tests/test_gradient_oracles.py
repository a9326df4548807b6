"""Tests for gradient estimation by robust aggregation of per-sample
gradients."""

import numpy as np
import pytest

from robustgd.gradient_oracles import (
    EMPIRICAL,
    GMOM,
    HUBER,
    GradientErrorContract,
    GradientEstimatorSpec,
    estimate_gradient,
    per_sample_gradients,
)
from robustgd.models import (
    GAUSSIAN,
    LINEAR,
    LOGISTIC,
    Dataset,
    ModelSpec,
    gradient,
    per_sample_losses,
)

ALL_KINDS = (HUBER, GMOM, EMPIRICAL)


def _spec(kind):
    if kind == HUBER:
        return GradientEstimatorSpec(kind=HUBER, epsilon=0.1)
    return GradientEstimatorSpec(kind=kind)


class TestPerSampleGradients:
    def test_linear_at_zero(self):
        X = np.array([[1.0, 2.0], [0.5, -1.0]])
        y = np.array([3.0, -2.0])
        G = per_sample_gradients(ModelSpec(LINEAR, 2), np.zeros(2), Dataset(X, y))
        assert G == pytest.approx(-y[:, None] * X)

    def test_logistic_at_zero(self):
        X = np.array([[2.0, 0.0], [0.0, 4.0]])
        y = np.array([1.0, 0.0])
        G = per_sample_gradients(ModelSpec(LOGISTIC, 2), np.zeros(2), Dataset(X, y))
        assert G == pytest.approx((0.5 - y)[:, None] * X)

    def test_gaussian(self):
        Z = np.array([[1.0, 1.0], [3.0, -1.0]])
        theta = np.array([0.5, 0.5])
        G = per_sample_gradients(ModelSpec(GAUSSIAN, 2), theta, Dataset(Z))
        assert G == pytest.approx(theta[None, :] - Z)

    def test_rows_match_single_observation_gradient(self):
        rng = np.random.default_rng(0)
        for family in (LINEAR, LOGISTIC, GAUSSIAN):
            model = ModelSpec(family, 3)
            X = rng.standard_normal((5, 3))
            y = None if family == GAUSSIAN else (rng.uniform(size=5) < 0.5).astype(float)
            theta = rng.standard_normal(3)
            G = per_sample_gradients(model, theta, Dataset(X, y))
            for i in range(5):
                yi = None if y is None else y[i]
                assert G[i] == pytest.approx(gradient(model, theta, X[i], yi))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            per_sample_gradients(ModelSpec(LINEAR, 2), np.zeros(3),
                                 Dataset(np.zeros((2, 2)), np.zeros(2)))


class TestEstimateGradient:
    def test_empirical_is_plain_mean(self):
        rng = np.random.default_rng(1)
        model = ModelSpec(LINEAR, 3)
        data = Dataset(rng.standard_normal((20, 3)), rng.standard_normal(20))
        theta = rng.standard_normal(3)
        g = estimate_gradient(model, theta, data, GradientEstimatorSpec(kind=EMPIRICAL))
        assert g == pytest.approx(per_sample_gradients(model, theta, data).mean(axis=0))

    def test_huber_zero_on_clean_batch_at_truth(self):
        rng = np.random.default_rng(2)
        theta_star = np.array([1.0, -1.0, 0.5])
        X = rng.standard_normal((100, 3))
        data = Dataset(X, X @ theta_star)
        g = estimate_gradient(ModelSpec(LINEAR, 3), theta_star, data, _spec(HUBER))
        assert np.linalg.norm(g) <= 1e-8

    def test_gmom_single_block_equals_empirical(self):
        rng = np.random.default_rng(3)
        model = ModelSpec(LINEAR, 2)
        data = Dataset(rng.standard_normal((15, 2)), rng.standard_normal(15))
        theta = rng.standard_normal(2)
        g_gmom = estimate_gradient(model, theta, data,
                                   GradientEstimatorSpec(kind=GMOM, delta=0.99))
        g_emp = estimate_gradient(model, theta, data,
                                  GradientEstimatorSpec(kind=EMPIRICAL))
        assert g_gmom == pytest.approx(g_emp, abs=1e-9)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    @pytest.mark.parametrize("family", (LINEAR, LOGISTIC, GAUSSIAN))
    def test_identical_observations_reduce_to_single_gradient(self, kind, family):
        rng = np.random.default_rng(4)
        x = rng.standard_normal(3)
        y = None if family == GAUSSIAN else 1.0
        X = np.tile(x, (12, 1))
        yv = None if y is None else np.full(12, y)
        theta = rng.standard_normal(3)
        model = ModelSpec(family, 3)
        g = estimate_gradient(model, theta, Dataset(X, yv), _spec(kind))
        assert g == pytest.approx(gradient(model, theta, x, y), abs=1e-9)

    def test_batch_finite_difference(self):
        # empirical gradient equals the gradient of the batch mean loss
        rng = np.random.default_rng(5)
        h = 1e-6
        for trial in range(20):
            family = (LINEAR, LOGISTIC, GAUSSIAN)[trial % 3]
            model = ModelSpec(family, 3)
            X = rng.standard_normal((8, 3))
            y = None if family == GAUSSIAN else (rng.uniform(size=8) < 0.5).astype(float)
            data = Dataset(X, y)
            theta = rng.uniform(-1, 1, size=3)
            g = estimate_gradient(model, theta, data, GradientEstimatorSpec(kind=EMPIRICAL))
            fd = np.empty(3)
            for j in range(3):
                e = np.zeros(3)
                e[j] = h
                fd[j] = (np.mean(per_sample_losses(model, theta + e, data))
                         - np.mean(per_sample_losses(model, theta - e, data))) / (2 * h)
            assert np.linalg.norm(g - fd) / max(np.linalg.norm(g), 1.0) <= 1e-5

    def test_empty_batch_errors(self):
        with pytest.raises(ValueError):
            estimate_gradient(ModelSpec(GAUSSIAN, 2), np.zeros(2),
                              Dataset(np.zeros((0, 2))), _spec(EMPIRICAL))


class TestSpecs:
    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            GradientEstimatorSpec(kind="median")

    def test_huber_params_validated_eagerly(self):
        with pytest.raises(ValueError):
            GradientEstimatorSpec(kind=HUBER, epsilon=0.7)

    def test_with_delta(self):
        spec = GradientEstimatorSpec(kind=HUBER, epsilon=0.1, delta=0.05)
        assert spec.with_delta(0.01).delta == 0.01
        assert spec.with_delta(0.01).epsilon == 0.1

    def test_error_contract_nonnegative(self):
        GradientErrorContract(0.0, 0.0)
        with pytest.raises(ValueError):
            GradientErrorContract(-0.1, 0.0)
        with pytest.raises(ValueError):
            GradientErrorContract(0.0, -1.0)
