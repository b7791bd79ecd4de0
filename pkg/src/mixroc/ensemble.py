"""Monte Carlo ensemble of replica ROC curves from fitted mixtures.

Each replicate draws a synthetic study (one sample per population) from
the fitted mixtures, computes its empirical ROC on the shared grid and
its AUC. The ensemble mean is the curve estimate; per-point standard
errors give a mean confidence band, pointwise quantiles give an envelope
band. Replicate RNG streams are spawned per index from the master seed,
so results are bit-identical for any execution order or thread count.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray

from .datasets import FprGrid, LabeledDataset, PopulationTag, make_uniform_grid
from .distmath import two_sided_z
from .gmm import EmConfig, GmmModel, sample_from, select_k
from .roc import RocCurveGrid, auc_mann_whitney, auc_trapezoid, empirical_roc


class BandKind(enum.Enum):
    MEAN_CI = "mean_ci"
    QUANTILE_ENVELOPE = "quantile_envelope"
    BOTH = "both"


@dataclass(frozen=True)
class MgConfig:
    """Ensemble settings.

    `replicate_n_x` / `replicate_n_y` default to the observed sample sizes
    (resolved by the pipeline); `grid` defaults to 512 uniform points.
    """

    m: int = 1000
    alpha: float = 0.05
    replicate_n_x: int | None = None
    replicate_n_y: int | None = None
    grid: FprGrid | None = None
    seed: int = 0
    band_kind: BandKind = BandKind.BOTH

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("need at least M=2 replicates (standard error undefined below)")
        if not 0.0 < self.alpha < 0.5:
            raise ValueError(f"alpha must be in (0, 0.5), got {self.alpha}")
        for name in ("replicate_n_x", "replicate_n_y"):
            val = getattr(self, name)
            if val is not None and val < 2:
                raise ValueError(f"{name} must be >= 2, got {val}")


@dataclass(frozen=True)
class MgEnsembleResult:
    """Mean curve, per-point bands and ensemble AUC statistics."""

    mean_curve: RocCurveGrid
    se: NDArray[np.float64]
    ci_lower: NDArray[np.float64]
    ci_upper: NDArray[np.float64]
    env_lower: NDArray[np.float64]
    env_upper: NDArray[np.float64]
    auc_samples: NDArray[np.float64]
    auc_mean: float
    auc_se: float
    auc_mann_whitney_mean: float
    replicate_matrix: NDArray[np.float64] | None = None

    @property
    def m(self) -> int:
        return int(self.auc_samples.size)


def _resolve(config: MgConfig, dataset: LabeledDataset | None) -> MgConfig:
    updates = {}
    if config.grid is None:
        updates["grid"] = make_uniform_grid()
    if config.replicate_n_x is None:
        if dataset is None:
            raise ValueError("replicate_n_x not set and no dataset to take it from")
        updates["replicate_n_x"] = dataset.n_x
    if config.replicate_n_y is None:
        if dataset is None:
            raise ValueError("replicate_n_y not set and no dataset to take it from")
        updates["replicate_n_y"] = dataset.n_y
    return replace(config, **updates) if updates else config


def run_mg(
    f_model: GmmModel,
    g_model: GmmModel,
    config: MgConfig,
    n_threads: int = 1,
    keep_replicates: bool = False,
) -> MgEnsembleResult:
    """Generate and average the ensemble of replica ROC curves.

    Replicate l draws its two samples from an RNG stream spawned as child
    l of the master seed, computes the empirical ROC of the synthetic
    study on the shared grid, and is reduced by index, so the result does
    not depend on `n_threads`.
    """
    config = _resolve(config, None)
    grid = config.grid
    m = config.m
    curves = np.empty((m, grid.count))
    aucs = np.empty(m)
    mws = np.empty(m)
    children = np.random.SeedSequence(config.seed).spawn(m)

    def one(l: int) -> None:
        rng = np.random.default_rng(children[l])
        xs = sample_from(f_model, config.replicate_n_x, rng, PopulationTag.NON_DISEASED)
        ys = sample_from(g_model, config.replicate_n_y, rng, PopulationTag.DISEASED)
        study = LabeledDataset(xs, ys)
        curve = empirical_roc(study, grid, label="replicate")
        curves[l] = curve.tpr
        aucs[l] = auc_trapezoid(curve)
        mws[l] = auc_mann_whitney(study)

    if n_threads <= 1:
        for l in range(m):
            one(l)
    else:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            list(pool.map(one, range(m)))

    mean_tpr = curves.mean(axis=0)
    se = curves.std(axis=0, ddof=1)
    z = two_sided_z(config.alpha)
    half = z * se / np.sqrt(m)
    ci_lower = np.clip(mean_tpr - half, 0.0, 1.0)
    ci_upper = np.clip(mean_tpr + half, 0.0, 1.0)
    env_lower, env_upper = np.quantile(
        curves, [config.alpha / 2.0, 1.0 - config.alpha / 2.0], axis=0
    )
    # at grid points where more than 1-alpha/2 of the replicates saturate at
    # 0 or 1, the raw quantile can cross the mean; widen minimally so the
    # envelope always contains the mean curve
    env_lower = np.minimum(env_lower, mean_tpr)
    env_upper = np.maximum(env_upper, mean_tpr)
    mean_curve = RocCurveGrid(grid, mean_tpr, label="mg")
    return MgEnsembleResult(
        mean_curve=mean_curve,
        se=se,
        ci_lower=ci_lower,
        ci_upper=ci_upper,
        env_lower=np.clip(env_lower, 0.0, 1.0),
        env_upper=np.clip(env_upper, 0.0, 1.0),
        auc_samples=aucs,
        auc_mean=auc_trapezoid(mean_curve),
        auc_se=float(np.std(aucs, ddof=1)),
        auc_mann_whitney_mean=float(np.mean(mws)),
        replicate_matrix=curves if keep_replicates else None,
    )


def mg_pipeline(
    dataset: LabeledDataset,
    em_config: EmConfig = EmConfig(),
    mg_config: MgConfig = MgConfig(),
    n_threads: int = 1,
    keep_replicates: bool = False,
) -> tuple[GmmModel, GmmModel, MgEnsembleResult]:
    """Fit both populations (BIC-selected K) and run the ensemble.

    Replicate sample sizes default to the observed study sizes so that the
    band width reflects the study's own sampling uncertainty.
    """
    f_model = select_k(dataset.non_diseased, em_config)
    g_model = select_k(dataset.diseased, replace(em_config, seed=em_config.seed + 500_000))
    config = _resolve(mg_config, dataset)
    result = run_mg(f_model, g_model, config, n_threads=n_threads, keep_replicates=keep_replicates)
    return f_model, g_model, result
