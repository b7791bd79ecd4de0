"""Univariate Gaussian mixture modelling.

EM estimation with deterministic-given-seed restarts, BIC model-order
selection, density/survival evaluation, survival inversion and random
sampling. The likelihood of a univariate mixture is unbounded, so every
variance is clamped to a floor derived from the data range.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray
from scipy.special import logsumexp

from .datasets import PopulationTag, ScoreSample
from .distmath import SQRT_2PI, norm_sf

WEIGHT_SUM_TOL = 1e-12


class EmCollapseError(RuntimeError):
    """Every restart ended degenerate despite the variance floor."""


@dataclass(frozen=True)
class GmmModel:
    """A fitted univariate Gaussian mixture.

    Attributes
    ----------
    weights, means, variances : arrays of length k
        Mixing proportions (positive, summing to one), component means and
        component variances.
    log_likelihood : float
        Training log-likelihood of the returned parameters.
    n_train : int
        Training sample size.
    """

    weights: NDArray[np.float64]
    means: NDArray[np.float64]
    variances: NDArray[np.float64]
    log_likelihood: float = float("nan")
    n_train: int = 0

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.weights, dtype=float)).copy()
        mu = np.atleast_1d(np.asarray(self.means, dtype=float)).copy()
        var = np.atleast_1d(np.asarray(self.variances, dtype=float)).copy()
        if not (w.shape == mu.shape == var.shape) or w.ndim != 1 or w.size < 1:
            raise ValueError("weights, means and variances must share one length K >= 1")
        if np.any(w <= 0.0) or abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError("weights must be positive and sum to 1")
        if np.any(var <= 0.0):
            raise ValueError("variances must be positive")
        for arr in (w, mu, var):
            arr.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "means", mu)
        object.__setattr__(self, "variances", var)

    @property
    def k(self) -> int:
        return int(self.weights.size)

    @property
    def sigmas(self) -> NDArray[np.float64]:
        return np.sqrt(self.variances)

    def to_json_dict(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
            "log_likelihood": self.log_likelihood,
            "n_train": self.n_train,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, doc: dict) -> "GmmModel":
        return cls(
            weights=np.asarray(doc["weights"], dtype=float),
            means=np.asarray(doc["means"], dtype=float),
            variances=np.asarray(doc["variances"], dtype=float),
            log_likelihood=float(doc["log_likelihood"]),
            n_train=int(doc["n_train"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "GmmModel":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class EmConfig:
    """EM tuning knobs; the defaults are used everywhere unless overridden.

    variance_floor=None derives the floor from the data as
    1e-6 * (sample range)^2.
    """

    k_min: int = 1
    k_max: int = 5
    max_iter: int = 500
    tol: float = 1e-8
    n_restarts: int = 5
    variance_floor: float | None = None
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.k_min <= self.k_max:
            raise ValueError("need 1 <= k_min <= k_max")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.tol <= 0.0:
            raise ValueError("tol must be > 0")
        if self.n_restarts < 1:
            raise ValueError("n_restarts must be >= 1")
        if self.variance_floor is not None and self.variance_floor <= 0.0:
            raise ValueError("variance_floor must be > 0")


def _effective_floor(x: NDArray[np.float64], config: EmConfig) -> float:
    if config.variance_floor is not None:
        return float(config.variance_floor)
    rng = float(x[-1] - x[0])  # x is sorted
    if rng > 0.0:
        return 1e-6 * rng * rng
    return 1e-12 * max(1.0, abs(float(x[0])))


def _farthest_point_centers(x: NDArray[np.float64], k: int) -> NDArray[np.float64]:
    """Greedy farthest-point centers, starting from the most central point."""
    centers = [x[np.argmin(np.abs(x - x.mean()))]]
    while len(centers) < k:
        dist = np.min(np.abs(x[:, None] - np.asarray(centers)[None, :]), axis=1)
        centers.append(x[np.argmax(dist)])
    return np.asarray(centers, dtype=float)


def _initial_params(x, k, floor, rng, restart):
    """Restart 0: deterministic farthest-point centers; later restarts draw
    centers from the data itself, which follows the sample density and
    explores far better on heavily skewed samples."""
    if restart == 0 or k >= x.size:
        centers = np.sort(_farthest_point_centers(x, k))
    else:
        centers = np.sort(rng.choice(x, size=k, replace=False))
    # nearest-center assignment; per-cluster variance clamped to the floor
    owner = np.argmin(np.abs(x[:, None] - centers[None, :]), axis=1)
    variances = np.empty(k)
    for j in range(k):
        members = x[owner == j]
        within = float(np.mean((members - centers[j]) ** 2)) if members.size else 0.0
        variances[j] = max(within, floor)
    weights = np.full(k, 1.0 / k)
    return weights, centers, variances


def _log_components(x, weights, means, variances):
    # (n, k) matrix of log(pi_k * phi(x | mu_k, var_k))
    z2 = (x[:, None] - means[None, :]) ** 2 / variances[None, :]
    return np.log(weights)[None, :] - 0.5 * (np.log(2.0 * np.pi * variances)[None, :] + z2)


def _em_single(x, k, config, floor, rng, restart):
    """One EM run; returns (weights, means, variances, ll, ll_trace).

    The trace holds the log-likelihood at every E-step. EM guarantees it
    is non-decreasing except across a degeneracy reset (a starved
    component re-seeded on a random data point), so the trace is cleared
    there and only the final monotone segment is reported.
    """
    n = x.size
    weights, means, variances = _initial_params(x, k, floor, rng, restart)
    ll_prev = -np.inf
    trace = []
    for _ in range(config.max_iter):
        log_comp = _log_components(x, weights, means, variances)
        log_norm = logsumexp(log_comp, axis=1)
        ll = float(np.sum(log_norm))
        trace.append(ll)
        resp = np.exp(log_comp - log_norm[:, None])

        nk = resp.sum(axis=0)
        starved = nk < 1.0  # responsibility mass below 1/n_train of the data
        means = resp.T @ x / np.maximum(nk, 1e-300)
        variances = np.maximum(
            np.einsum("nk,nk->k", resp, (x[:, None] - means[None, :]) ** 2)
            / np.maximum(nk, 1e-300),
            floor,
        )
        weights = nk / n
        if np.any(starved):
            idx = np.flatnonzero(starved)
            means[idx] = rng.choice(x, size=idx.size)
            variances[idx] = floor
            weights[idx] = 1.0 / n
            weights = weights / weights.sum()
            ll_prev = -np.inf
            trace.clear()
            continue
        weights = weights / weights.sum()
        if ll_prev > -np.inf and abs(ll - ll_prev) <= config.tol * (1.0 + abs(ll)):
            break
        ll_prev = ll
    log_comp = _log_components(x, weights, means, variances)
    ll = float(np.sum(logsumexp(log_comp, axis=1)))
    trace.append(ll)
    return weights, means, variances, ll, trace


def fit_em(
    sample: ScoreSample,
    k: int,
    config: EmConfig = EmConfig(),
    return_trace: bool = False,
):
    """Fit a k-component mixture by EM, best of `config.n_restarts` runs.

    The first restart seeds centers by a deterministic farthest-point pass;
    later restarts draw centers from the data. Everything is deterministic
    given `config.seed`.

    Returns the :class:`GmmModel` with the highest final log-likelihood;
    with `return_trace` also the per-iteration log-likelihood trace of
    every restart (each trace is a monotone EM segment).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    x = np.asarray(sample.scores, dtype=float)
    if k > x.size:
        raise ValueError(f"k={k} exceeds the sample size {x.size}")
    floor = _effective_floor(x, config)
    rng = np.random.default_rng(np.random.SeedSequence(config.seed))

    best = None
    traces = []
    for restart in range(config.n_restarts):
        w, mu, var, ll, trace = _em_single(x, k, config, floor, rng, restart)
        traces.append(trace)
        if not np.isfinite(ll):
            continue
        if best is None or ll > best[3]:
            best = (w, mu, var, ll)
    if best is None:
        raise EmCollapseError(f"all {config.n_restarts} EM restarts collapsed for k={k}")
    w, mu, var, ll = best
    order = np.argsort(mu)  # canonical component order
    model = GmmModel(w[order], mu[order], var[order], log_likelihood=ll, n_train=int(x.size))
    if return_trace:
        return model, traces
    return model


def bic(model: GmmModel) -> float:
    """Bayesian information criterion with 3K - 1 free parameters."""
    n_params = 3 * model.k - 1
    return -2.0 * model.log_likelihood + n_params * np.log(model.n_train)


def select_k(sample: ScoreSample, config: EmConfig = EmConfig()) -> GmmModel:
    """Fit each K in [k_min, min(k_max, n)] and return the BIC minimizer.

    Ties break toward smaller K. Each K gets an independent seed stream so
    adding candidates never changes the fits of smaller ones.
    """
    n = len(sample)
    if n < config.k_min:
        raise ValueError(f"sample size {n} is below k_min={config.k_min}")
    best_model = None
    best_bic = np.inf
    for k in range(config.k_min, min(config.k_max, n) + 1):
        model = fit_em(sample, k, replace(config, seed=config.seed + 1000 * k))
        score = bic(model)
        if score < best_bic:
            best_model = model
            best_bic = score
    assert best_model is not None
    return best_model


def pdf(model: GmmModel, x):
    """Mixture density sum_k pi_k * phi(x | mu_k, var_k), elementwise."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    z2 = (x[:, None] - model.means[None, :]) ** 2 / model.variances[None, :]
    dens = np.exp(-0.5 * z2) / (SQRT_2PI * model.sigmas[None, :])
    out = dens @ model.weights
    return float(out[0]) if scalar else out


def survival(model: GmmModel, c):
    """Upper-tail probability P(X > c) = sum_k pi_k * Q((c - mu_k)/sigma_k)."""
    c = np.asarray(c, dtype=float)
    scalar = c.ndim == 0
    c = np.atleast_1d(c)
    z = (c[:, None] - model.means[None, :]) / model.sigmas[None, :]
    out = norm_sf(z) @ model.weights
    return float(out[0]) if scalar else out


def survival_inverse(model: GmmModel, t: float, tol: float = 1e-10, max_iter: int = 500) -> float:
    """Threshold c with survival(model, c) = t, for t in (0, 1).

    Brackets by expanding [mu_min - 10 sigma_max, mu_max + 10 sigma_max]
    outward, then bisects until |survival(c) - t| <= tol. Survival is
    continuous and strictly decreasing, so this always converges.
    """
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must be inside (0, 1), got {t}")
    sig_max = float(np.max(model.sigmas))
    lo = float(np.min(model.means)) - 10.0 * sig_max
    hi = float(np.max(model.means)) + 10.0 * sig_max
    width = hi - lo
    while survival(model, lo) < t:  # expand left until survival(lo) >= t
        lo -= width
        width *= 2.0
    width = hi - lo
    while survival(model, hi) > t:  # expand right until survival(hi) <= t
        hi += width
        width *= 2.0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        s = survival(model, mid)
        if abs(s - t) <= tol:
            return mid
        if s > t:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sample_from(
    model: GmmModel,
    n: int,
    rng: np.random.Generator,
    tag: PopulationTag = PopulationTag.NON_DISEASED,
    source_name: str = "simulated",
) -> ScoreSample:
    """Draw n scores: component index from categorical(weights), then normal.

    Deterministic given the generator state; the caller owns the stream.
    """
    if n < 2:
        raise ValueError(f"need n >= 2 draws, got {n}")
    comp = rng.choice(model.k, size=n, p=model.weights)
    draws = model.means[comp] + model.sigmas[comp] * rng.standard_normal(n)
    return ScoreSample(draws, tag, source_name)
