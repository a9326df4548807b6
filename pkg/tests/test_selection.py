"""Tests for the pairwise-tournament and holdout hyperparameter
selectors."""

import numpy as np
import pytest

from robustgd.models import (
    GAUSSIAN,
    LINEAR,
    LOGISTIC,
    Dataset,
    ModelSpec,
    ModelTruth,
    per_sample_losses,
)
from robustgd.selection import (
    Candidate,
    TournamentConfig,
    holdout_risk_select,
    pairwise_test,
    tournament_select,
)


def _linear_model(p, theta_star, sigma2=0.1):
    return ModelSpec(LINEAR, p, truth=ModelTruth(theta_star, sigma2))


def _validation(seed, theta_star, n=400, sigma2=0.1):
    rng = np.random.default_rng(seed)
    p = theta_star.size
    X = rng.standard_normal((n, p))
    y = X @ theta_star + np.sqrt(sigma2) * rng.standard_normal(n)
    return Dataset(X, y)


class TestPairwiseTest:
    def test_identical_candidates_tie_favors_j(self):
        theta = np.array([1.0, -1.0])
        cand = Candidate(theta, epsilon=0.1)
        model = _linear_model(2, theta)
        val = _validation(0, theta)
        cfg = TournamentConfig(mc_samples=500, seed=0)
        assert pairwise_test(cand, cand, val, model, cfg) is False

    def test_true_candidate_beats_distant_one(self):
        theta_star = np.array([1.0, 2.0, -1.0])
        model = _linear_model(3, theta_star)
        val = _validation(1, theta_star, n=2000)
        cfg = TournamentConfig(mc_samples=5000, seed=1)
        good = Candidate(theta_star)
        bad = Candidate(theta_star + 10.0)
        assert pairwise_test(good, bad, val, model, cfg) is False  # j favored
        assert pairwise_test(bad, good, val, model, cfg) is True   # k favored

    def test_deterministic_given_seed(self):
        theta_star = np.array([0.5, 0.5])
        model = _linear_model(2, theta_star)
        val = _validation(2, theta_star)
        cfg = TournamentConfig(mc_samples=1000, seed=7)
        a = Candidate(theta_star + 0.3)
        b = Candidate(theta_star - 0.3)
        results = {pairwise_test(a, b, val, model, cfg) for _ in range(5)}
        assert len(results) == 1

    def test_linear_needs_sigma(self):
        theta = np.zeros(2)
        model = ModelSpec(LINEAR, 2, truth=ModelTruth(theta))
        val = _validation(3, theta)
        with pytest.raises(ValueError, match="noise"):
            pairwise_test(Candidate(theta), Candidate(theta + 1), val, model,
                          TournamentConfig(mc_samples=100, seed=0))

    def test_logistic_family_supported(self):
        rng = np.random.default_rng(4)
        theta_star = np.array([2.0, -2.0])
        X = rng.standard_normal((800, 2))
        y = (rng.uniform(size=800) < 1 / (1 + np.exp(-(X @ theta_star)))).astype(float)
        val = Dataset(X, y)
        model = ModelSpec(LOGISTIC, 2, truth=ModelTruth(theta_star))
        cfg = TournamentConfig(mc_samples=4000, seed=4)
        good, bad = Candidate(theta_star), Candidate(-theta_star)
        assert pairwise_test(bad, good, val, model, cfg) is True

    def test_gaussian_family_supported(self):
        rng = np.random.default_rng(5)
        mu = np.array([1.0, 0.0])
        Z = rng.standard_normal((500, 2)) + mu
        val = Dataset(Z)
        model = ModelSpec(GAUSSIAN, 2, truth=ModelTruth(mu))
        cfg = TournamentConfig(mc_samples=4000, seed=5)
        good, bad = Candidate(mu), Candidate(mu + 5.0)
        assert pairwise_test(bad, good, val, model, cfg) is True


class TestTournamentSelect:
    def test_single_candidate(self):
        theta = np.zeros(2)
        model = _linear_model(2, theta)
        val = _validation(6, theta)
        cfg = TournamentConfig(mc_samples=100, seed=0)
        assert tournament_select([Candidate(theta)], val, model, cfg) == 0

    def test_identical_candidates_pick_first(self):
        theta = np.array([1.0, 1.0])
        model = _linear_model(2, theta)
        val = _validation(7, theta)
        cfg = TournamentConfig(mc_samples=200, seed=0)
        cands = [Candidate(theta) for _ in range(4)]
        assert tournament_select(cands, val, model, cfg) == 0

    def test_selects_truth_over_distant_candidate(self):
        theta_star = np.ones(3)
        model = _linear_model(3, theta_star)
        wins = 0
        for seed in range(20):
            val = _validation(100 + seed, theta_star, n=500)
            cfg = TournamentConfig(mc_samples=2000, seed=seed)
            cands = [Candidate(theta_star), Candidate(theta_star + 10.0)]
            if tournament_select(cands, val, model, cfg) == 0:
                wins += 1
        assert wins >= 18

    def test_permutation_invariant_winner(self):
        theta_star = np.array([1.0, -0.5])
        model = _linear_model(2, theta_star)
        val = _validation(8, theta_star, n=1000)
        cfg = TournamentConfig(mc_samples=3000, seed=8)
        cands = [Candidate(theta_star + d) for d in (0.02, 3.0, -2.0, 0.8)]
        winner = cands[tournament_select(cands, val, model, cfg)].theta_hat
        rng = np.random.default_rng(9)
        for _ in range(3):
            perm = list(rng.permutation(len(cands)))
            shuffled = [cands[i] for i in perm]
            w = shuffled[tournament_select(shuffled, val, model, cfg)].theta_hat
            assert np.array_equal(w, winner)

    def test_empty_errors(self):
        model = _linear_model(2, np.zeros(2))
        val = _validation(10, np.zeros(2))
        with pytest.raises(ValueError, match="empty"):
            tournament_select([], val, model, TournamentConfig(mc_samples=10, seed=0))


class TestHoldoutRiskSelect:
    def test_truth_beats_distant_candidate_noiseless(self):
        theta_star = np.array([1.0, 2.0])
        model = _linear_model(2, theta_star)
        val = _validation(11, theta_star, sigma2=0.0)
        idx = holdout_risk_select([Candidate(theta_star + 3.0),
                                   Candidate(theta_star)], val, model)
        assert idx == 1

    def test_single_candidate(self):
        model = _linear_model(2, np.zeros(2))
        val = _validation(12, np.zeros(2))
        assert holdout_risk_select([Candidate(np.ones(2))], val, model) == 0

    def test_identical_candidates_tie_break(self):
        model = _linear_model(2, np.zeros(2))
        val = _validation(13, np.zeros(2))
        cands = [Candidate(np.ones(2)), Candidate(np.ones(2))]
        assert holdout_risk_select(cands, val, model) == 0

    def test_agrees_with_independent_scan(self):
        rng = np.random.default_rng(14)
        theta_star = rng.standard_normal(4)
        model = _linear_model(4, theta_star)
        val = _validation(14, theta_star)
        cands = [Candidate(theta_star + rng.standard_normal(4)) for _ in range(8)]
        risks = [float(np.mean(per_sample_losses(model, c.theta_hat, val)))
                 for c in cands]
        assert holdout_risk_select(cands, val, model) == int(np.argmin(risks))

    def test_empty_errors(self):
        model = _linear_model(2, np.zeros(2))
        val = _validation(15, np.zeros(2))
        with pytest.raises(ValueError, match="empty"):
            holdout_risk_select([], val, model)


class TestCandidateValidation:
    def test_finite_required(self):
        with pytest.raises(ValueError):
            Candidate(np.array([1.0, np.inf]))

    def test_mc_samples_positive(self):
        with pytest.raises(ValueError):
            TournamentConfig(mc_samples=0)
