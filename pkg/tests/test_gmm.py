"""Gaussian mixture fitting, evaluation, inversion and sampling."""

import numpy as np
import pytest
from scipy.integrate import quad

from mixroc.datasets import PopulationTag, ScoreSample
from mixroc.gmm import (
    EmConfig,
    GmmModel,
    bic,
    fit_em,
    pdf,
    sample_from,
    select_k,
    survival,
    survival_inverse,
)


def sample_of(values):
    return ScoreSample(values, PopulationTag.NON_DISEASED)


def random_mixture(rng, k_max=4):
    """A random well-formed mixture for property checks."""
    k = int(rng.integers(1, k_max + 1))
    w = rng.dirichlet(np.ones(k) * 2.0)
    mu = rng.uniform(-5, 5, k)
    var = rng.uniform(0.05, 4.0, k)
    return GmmModel(w, mu, var)


class TestFitEm:
    def test_k1_is_closed_form_moment_match(self):
        rng = np.random.default_rng(10)
        data = rng.normal(3.0, 2.0, 200)
        model = fit_em(sample_of(data), 1)
        floor = 1e-6 * (data.max() - data.min()) ** 2
        assert model.k == 1
        assert model.weights[0] == 1.0
        np.testing.assert_allclose(model.means[0], data.mean(), rtol=0, atol=1e-12)
        np.testing.assert_allclose(
            model.variances[0], max(data.var(), floor), rtol=1e-13, atol=0
        )

    def test_two_component_recovery(self):
        rng = np.random.default_rng(7)
        data = np.concatenate([rng.normal(-3, 1, 250), rng.normal(3, 1, 250)])
        model = fit_em(sample_of(data), 2, EmConfig(seed=0))
        assert np.all(np.abs(np.sort(model.means) - [-3.0, 3.0]) < 0.3)
        assert np.all(np.abs(model.weights - 0.5) < 0.1)

    def test_k_exceeds_sample_size(self):
        with pytest.raises(ValueError, match="exceeds"):
            fit_em(sample_of([1.0, 2.0, 3.0]), 5)

    def test_k_below_one(self):
        with pytest.raises(ValueError):
            fit_em(sample_of([1.0, 2.0]), 0)

    def test_loglik_trace_monotone(self):
        rng = np.random.default_rng(3)
        data = np.concatenate([rng.normal(0, 1, 120), rng.normal(4, 0.5, 80)])
        _, traces = fit_em(sample_of(data), 3, EmConfig(seed=1), return_trace=True)
        for trace in traces:
            assert np.all(np.diff(trace) >= -1e-9)

    def test_deterministic_given_seed(self):
        rng = np.random.default_rng(5)
        data = rng.normal(0, 1, 150)
        a = fit_em(sample_of(data), 2, EmConfig(seed=9))
        b = fit_em(sample_of(data), 2, EmConfig(seed=9))
        np.testing.assert_array_equal(a.means, b.means)
        np.testing.assert_array_equal(a.weights, b.weights)
        np.testing.assert_array_equal(a.variances, b.variances)


class TestSelectK:
    CFG = EmConfig(k_max=4, n_restarts=2, max_iter=150)

    def test_single_gaussian_prefers_k1(self):
        hits = 0
        trials = 100
        for seed in range(trials):
            rng = np.random.default_rng(seed)
            data = rng.normal(0, 1, 1000)
            model = select_k(sample_of(data), EmConfig(
                k_max=4, n_restarts=2, max_iter=150, seed=seed))
            hits += model.k == 1
        assert hits >= 95, f"K=1 chosen only {hits}/100 times"

    def test_separated_bimodal_prefers_k2(self):
        rng = np.random.default_rng(21)
        data = np.concatenate([rng.normal(-4, 1, 500), rng.normal(4, 1, 500)])
        model = select_k(sample_of(data), self.CFG)
        assert model.k == 2

    def test_degenerate_range_returns_that_k(self):
        rng = np.random.default_rng(2)
        data = rng.normal(0, 1, 200)
        model = select_k(sample_of(data), EmConfig(k_min=3, k_max=3))
        assert model.k == 3

    def test_bic_formula(self):
        model = GmmModel([0.4, 0.6], [0.0, 1.0], [1.0, 2.0], log_likelihood=-100.0, n_train=50)
        assert bic(model) == pytest.approx(200.0 + 5 * np.log(50))


class TestPdf:
    def test_standard_normal_peak(self):
        model = GmmModel([1.0], [0.0], [1.0])
        assert pdf(model, 0.0) == pytest.approx(1.0 / np.sqrt(2 * np.pi), abs=1e-12)

    def test_two_component_hand_value(self):
        model = GmmModel([0.5, 0.5], [-1.0, 1.0], [1.0, 1.0])
        phi1 = np.exp(-0.5) / np.sqrt(2 * np.pi)
        assert pdf(model, 0.0) == pytest.approx(phi1, abs=1e-12)

    def test_normalizes_to_one(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            model = random_mixture(rng)
            sig = np.sqrt(model.variances.max())
            lo = model.means.min() - 10 * sig
            hi = model.means.max() + 10 * sig
            total, _ = quad(lambda v: pdf(model, v), lo, hi, limit=200)
            assert total == pytest.approx(1.0, abs=1e-6)

    def test_nonnegative(self):
        rng = np.random.default_rng(23)
        model = random_mixture(rng)
        xs = rng.uniform(-20, 20, 200)
        assert np.all(pdf(model, xs) >= 0)


class TestSurvival:
    def test_symmetric_mixture_at_zero(self):
        model = GmmModel([0.5, 0.5], [-1.0, 1.0], [1.0, 1.0])
        assert survival(model, 0.0) == pytest.approx(0.5, abs=1e-14)

    def test_standard_normal_upper_quantile(self):
        model = GmmModel([1.0], [0.0], [1.0])
        assert survival(model, 1.6449) == pytest.approx(0.05, abs=1e-4)

    def test_far_left_limit_is_total_mass(self):
        model = GmmModel([0.3, 0.7], [0.0, 2.0], [1.0, 0.5])
        c = model.means.min() - 40 * model.sigmas.max()
        assert survival(model, c) == pytest.approx(1.0, abs=1e-12)

    def test_strictly_decreasing(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            model = random_mixture(rng)
            cs = np.sort(rng.uniform(model.means.min() - 3, model.means.max() + 3, 50))
            vals = survival(model, cs)
            inside = (vals > 1e-12) & (vals < 1 - 1e-12)
            assert np.all(np.diff(vals[inside]) < 0)

    def test_matches_one_minus_pdf_integral(self):
        rng = np.random.default_rng(37)
        model = random_mixture(rng)
        sig = np.sqrt(model.variances.max())
        lo = model.means.min() - 12 * sig
        for c in rng.uniform(model.means.min() - 2, model.means.max() + 2, 20):
            mass, _ = quad(lambda v: pdf(model, v), lo, c, limit=200)
            assert survival(model, c) == pytest.approx(1.0 - mass, abs=1e-8)


class TestSurvivalInverse:
    def test_symmetry_at_half(self):
        model = GmmModel([1.0], [0.0], [1.0])
        assert survival_inverse(model, 0.5) == pytest.approx(0.0, abs=1e-9)

    def test_two_sided_quantile(self):
        model = GmmModel([1.0], [0.0], [1.0])
        assert survival_inverse(model, 0.025) == pytest.approx(1.9600, abs=1e-3)

    def test_round_trip(self):
        model = GmmModel([0.6, 0.4], [-2.0, 3.0], [1.5, 0.3])
        for t in np.arange(0.01, 1.0, 0.01):
            c = survival_inverse(model, float(t))
            assert abs(survival(model, c) - t) <= 1e-9

    def test_monotone(self):
        rng = np.random.default_rng(41)
        model = random_mixture(rng)
        ts = np.sort(rng.uniform(0.01, 0.99, 25))
        cs = [survival_inverse(model, float(t)) for t in ts]
        assert np.all(np.diff(cs) < 0)

    @pytest.mark.parametrize("t", [0.0, 1.0, -0.2, 1.4])
    def test_domain(self, t):
        with pytest.raises(ValueError):
            survival_inverse(GmmModel([1.0], [0.0], [1.0]), t)


class TestSampleFrom:
    def test_deterministic_given_stream(self):
        model = GmmModel([0.5, 0.5], [-1.0, 1.0], [1.0, 1.0])
        a = sample_from(model, 100, np.random.default_rng(4))
        b = sample_from(model, 100, np.random.default_rng(4))
        np.testing.assert_array_equal(a.scores, b.scores)

    def test_component_fractions(self):
        model = GmmModel([0.7, 0.3], [-50.0, 50.0], [1.0, 1.0])
        draws = sample_from(model, 100_000, np.random.default_rng(8)).scores
        frac = np.mean(draws < 0)  # components are 100 sigma apart
        assert frac == pytest.approx(0.7, abs=0.01)

    def test_near_degenerate_component(self):
        floor = 1e-6
        model = GmmModel([1.0], [5.0], [floor])
        n = 10_000
        draws = sample_from(model, n, np.random.default_rng(15)).scores
        assert abs(draws.mean() - 5.0) < 3 * np.sqrt(floor / n)

    def test_minimum_draws(self):
        with pytest.raises(ValueError):
            sample_from(GmmModel([1.0], [0.0], [1.0]), 1, np.random.default_rng(0))


class TestModelValidation:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(ValueError):
            GmmModel([0.5, 0.6], [0.0, 1.0], [1.0, 1.0])

    def test_weights_positive(self):
        with pytest.raises(ValueError):
            GmmModel([1.0, 0.0], [0.0, 1.0], [1.0, 1.0])

    def test_variances_positive(self):
        with pytest.raises(ValueError):
            GmmModel([1.0], [0.0], [0.0])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            GmmModel([1.0], [0.0, 1.0], [1.0])

    def test_json_round_trip(self):
        model = GmmModel([0.25, 0.75], [-1.0, 2.0], [0.5, 1.5],
                         log_likelihood=-12.5, n_train=42)
        back = GmmModel.from_json(model.to_json())
        np.testing.assert_array_equal(back.weights, model.weights)
        np.testing.assert_array_equal(back.means, model.means)
        np.testing.assert_array_equal(back.variances, model.variances)
        assert back.log_likelihood == model.log_likelihood
        assert back.n_train == model.n_train


def test_collapse_error_when_every_restart_diverges(monkeypatch):
    import mixroc.gmm as gmm_mod

    def broken(x, k, config, floor, rng, restart):
        return np.full(k, 1.0 / k), np.zeros(k), np.ones(k), float("nan"), [float("nan")]

    monkeypatch.setattr(gmm_mod, "_em_single", broken)
    with pytest.raises(gmm_mod.EmCollapseError, match="collapsed"):
        fit_em(sample_of([1.0, 2.0, 3.0, 4.0]), 2, EmConfig(n_restarts=3))


class TestEmConfigValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(k_min=0),
            dict(k_min=3, k_max=2),
            dict(max_iter=0),
            dict(tol=0.0),
            dict(n_restarts=0),
            dict(variance_floor=0.0),
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            EmConfig(**kwargs)
