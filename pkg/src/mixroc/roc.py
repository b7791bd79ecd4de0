"""ROC curve construction and summary indices.

Curves live on a shared FPR grid so that estimators, replicas and bands
can be compared pointwise. Two empirical constructions are provided:

* a grid-resampled curve whose thresholds come from the empirical
  survival quantile (piecewise-linear by default, pure step optionally);
* the exact operating-point polyline swept over all distinct thresholds,
  for which the trapezoidal area equals the midrank Mann-Whitney statistic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.stats import rankdata

from .datasets import FprGrid, LabeledDataset
from .gmm import GmmModel, survival, survival_inverse

_EDGE_TOL = 1e-9


@dataclass(frozen=True)
class RocCurveGrid:
    """A curve sampled on an FPR grid: pairs (t, R(t)).

    tpr values are validated to be inside [0, 1] and non-decreasing
    (tolerance 1e-9 for float runoff, then canonicalized exactly).
    """

    grid: FprGrid
    tpr: NDArray[np.float64]
    label: str = ""

    def __post_init__(self):
        r = np.asarray(self.tpr, dtype=float)
        if r.shape != (self.grid.count,):
            raise ValueError(
                f"tpr length {r.size} does not match grid count {self.grid.count}"
            )
        if np.any(r < -_EDGE_TOL) or np.any(r > 1.0 + _EDGE_TOL):
            raise ValueError("tpr values must lie in [0, 1]")
        if np.any(np.diff(r) < -_EDGE_TOL):
            raise ValueError("tpr must be non-decreasing along the grid")
        r = np.maximum.accumulate(np.clip(r, 0.0, 1.0))
        r.flags.writeable = False
        object.__setattr__(self, "tpr", r)

    @property
    def fpr(self) -> NDArray[np.float64]:
        return self.grid.points


def empirical_roc(
    dataset: LabeledDataset,
    grid: FprGrid,
    interpolate: bool = True,
    label: str = "empirical",
) -> RocCurveGrid:
    """Empirical ROC curve resampled onto `grid`.

    For each t the threshold is the empirical survival quantile of the
    non-diseased scores, c_t = Fbar^{-1}(t); R(t) is the fraction of
    diseased scores strictly above c_t. With `interpolate` the quantile is
    piecewise linear between order statistics (it agrees with the step
    form at every achievable FPR knot); otherwise it is the
    right-continuous step inf{c : FP(c) <= t}. R anchors to the minimal
    achievable TPR at t=0 and to 1 at t=1.
    """
    x = dataset.non_diseased.scores
    y = dataset.diseased.scores
    t = grid.points
    if interpolate:
        c = np.quantile(x, 1.0 - t, method="interpolated_inverted_cdf")
    else:
        # c_t = inf{c : FP(c) <= t} directly by order statistic; the 1e-12
        # guard keeps t values that are exact multiples of 1/n from falling
        # one threshold short through float dust
        allowed = np.floor(t * x.size + 1e-12).astype(int)
        c = x[::-1][np.minimum(allowed, x.size - 1)].astype(float)
        c[allowed >= x.size] = -np.inf
    r = (y.size - np.searchsorted(y, c, side="right")) / y.size
    r[t >= 1.0] = 1.0
    return RocCurveGrid(grid, np.maximum.accumulate(r), label)


def empirical_roc_points(dataset: LabeledDataset):
    """The exact empirical operating points, swept over all thresholds.

    Returns (thresholds, fpr, tpr), threshold +inf first, then every
    distinct pooled score descending, ending at (1, 1). Consecutive points
    move right (non-diseased values), up (diseased values) or diagonally
    (cross-population ties), so the trapezoidal area of this polyline is
    exactly the midrank Mann-Whitney AUC.
    """
    x = dataset.non_diseased.scores
    y = dataset.diseased.scores
    pooled = np.unique(np.concatenate([x, y]))[::-1]  # descending
    fpr = np.empty(pooled.size + 1)
    tpr = np.empty(pooled.size + 1)
    fpr[0] = 0.0
    tpr[0] = 0.0
    # at threshold v the positive calls are the scores >= v (v just crossed)
    fpr[1:] = (x.size - np.searchsorted(x, pooled, side="left")) / x.size
    tpr[1:] = (y.size - np.searchsorted(y, pooled, side="left")) / y.size
    thresholds = np.concatenate([[np.inf], pooled])
    return thresholds, fpr, tpr


def functional_roc(
    f_model: GmmModel,
    g_model: GmmModel,
    grid: FprGrid,
    label: str = "mixture",
) -> RocCurveGrid:
    """Model-based curve R(t) = Gbar(Fbar^{-1}(t)) on the grid.

    Endpoints are fixed to (0, 0) and (1, 1); interior points invert the
    non-diseased survival and evaluate the diseased survival there.
    """
    t = grid.points
    r = np.empty_like(t)
    for i, ti in enumerate(t):
        if ti <= 0.0:
            r[i] = 0.0
        elif ti >= 1.0:
            r[i] = 1.0
        else:
            r[i] = survival(g_model, survival_inverse(f_model, float(ti)))
    return RocCurveGrid(grid, np.maximum.accumulate(r), label)


def auc_trapezoid(curve: RocCurveGrid) -> float:
    """Trapezoidal area under the curve over the full [0, 1] FPR range.

    If the grid excludes an endpoint the curve is extended flat
    (R(0) = first value, R(1) = last value) to close the integral.
    """
    t = curve.grid.points
    r = curve.tpr
    area = float(np.trapezoid(r, t))
    if t[0] > 0.0:
        area += float(r[0]) * float(t[0])
    if t[-1] < 1.0:
        area += float(r[-1]) * (1.0 - float(t[-1]))
    return area


def auc_trapezoid_points(fpr, tpr) -> float:
    """Trapezoidal area under an explicit point polyline (duplicate FPR ok)."""
    return float(np.trapezoid(np.asarray(tpr, float), np.asarray(fpr, float)))


def auc_mann_whitney(dataset: LabeledDataset) -> float:
    """Mann-Whitney AUC: P(Y > X) + 0.5 P(Y = X), via midranks.

    O((n+m) log(n+m)) through a pooled ranking rather than the pair sum.
    """
    x = dataset.non_diseased.scores
    y = dataset.diseased.scores
    n, m = x.size, y.size
    ranks = rankdata(np.concatenate([x, y]), method="average")
    u = float(np.sum(ranks[n:])) - m * (m + 1) / 2.0
    return u / (n * m)


def pauc(curve: RocCurveGrid, t_lo: float, t_hi: float) -> float:
    """Trapezoidal integral of R(t) over [t_lo, t_hi].

    Interval endpoints falling between grid points are filled in by linear
    interpolation; outside the grid range the curve extends flat, matching
    :func:`auc_trapezoid`.
    """
    if not (0.0 <= t_lo < t_hi <= 1.0):
        raise ValueError(f"need 0 <= t_lo < t_hi <= 1, got [{t_lo}, {t_hi}]")
    t = curve.grid.points
    r = curve.tpr
    inner = t[(t > t_lo) & (t < t_hi)]
    nodes = np.concatenate([[t_lo], inner, [t_hi]])
    values = np.interp(nodes, t, r)  # flat beyond the grid ends by default
    return float(np.trapezoid(values, nodes))
