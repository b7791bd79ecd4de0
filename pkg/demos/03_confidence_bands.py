"""Two kinds of bands around the ensemble mean curve
====================================================

The ensemble gives two different 95% bands:

* a confidence interval for the MEAN curve, whose width shrinks like
  1/sqrt(M) as the ensemble grows, and
* a quantile envelope covering 95% of the individual replicate curves,
  whose width reflects sampling variability and does not shrink with M.

This demo shows both on the same fitted pair of mixtures, and checks the
determinism contract: the same seed always gives bit-identical results,
no matter how many threads do the work.
"""

import numpy as np

from mixroc import GmmModel, MgConfig, make_uniform_grid, run_mg

f_model = GmmModel([1.0], [0.0], [1.0])
g_model = GmmModel([0.6, 0.4], [1.0, 3.5], [0.8, 0.6])
grid = make_uniform_grid(512)

print(f"{'M':>6}{'mean CI width':>16}{'envelope width':>17}")
for m in (250, 1000, 4000):
    res = run_mg(f_model, g_model, MgConfig(m=m, seed=123, grid=grid,
                                            replicate_n_x=100, replicate_n_y=100))
    ci = float(np.mean(res.ci_upper - res.ci_lower))
    env = float(np.mean(res.env_upper - res.env_lower))
    print(f"{m:>6}{ci:>16.5f}{env:>17.5f}")

print("\nthe CI shrinks ~2x from M=1000 to M=4000; the envelope stays put\n")

config = MgConfig(m=500, seed=9, grid=grid, replicate_n_x=80, replicate_n_y=80)
serial = run_mg(f_model, g_model, config, n_threads=1)
threaded = run_mg(f_model, g_model, config, n_threads=8)
identical = np.array_equal(serial.mean_curve.tpr, threaded.mean_curve.tpr) and np.array_equal(
    serial.auc_samples, threaded.auc_samples
)
print(f"1 thread vs 8 threads bit-identical: {identical}")
print(f"ensemble AUC {serial.auc_mean:.4f} +- {serial.auc_se:.4f} (replicate sd)")
