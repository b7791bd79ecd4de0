"""Command-line front end.

Loads a labeled study, runs the selected estimators on one shared FPR
grid, writes a report (json, csv or text table), per-curve CSVs, fitted
model JSONs, optional SVG plots and an optional replicate-matrix dump.

Exit statuses: 0 success, 2 input/validation error, 3 numerical failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .binormal import binormal_auc, binormal_curve, fit_binormal
from .datasets import (
    DatasetError,
    LabeledDataset,
    load_dataset,
    load_two_files,
    make_uniform_grid,
)
from .ensemble import BandKind, MgConfig, MgEnsembleResult, mg_pipeline
from .gmm import EmCollapseError, EmConfig
from .report import Report, compare_table
from .roc import (
    RocCurveGrid,
    auc_mann_whitney,
    auc_trapezoid,
    empirical_roc,
    empirical_roc_points,
    pauc,
)
from .svg import histogram_svg, roc_overlay_svg

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

ESTIMATORS = ("empirical", "binormal", "mg")


@dataclass(frozen=True)
class RunConfig:
    """Everything one `run` needs; built from CLI flags or directly in code."""

    input_path: str | None = None
    non_diseased_path: str | None = None
    diseased_path: str | None = None
    score_col: str = "score"
    label_col: str = "label"
    estimators: tuple[str, ...] = ESTIMATORS
    em: EmConfig = field(default_factory=EmConfig)
    mg: MgConfig = field(default_factory=MgConfig)
    grid_size: int = 512
    pauc_intervals: tuple[tuple[float, float], ...] = ()
    out_dir: str = "."
    plots: bool = False
    report_format: str = "json"
    dump_replicates: bool = False
    reproducible: bool = False
    source_name: str | None = None

    def __post_init__(self):
        if not self.estimators:
            raise ValueError("at least one estimator must be selected")
        unknown = set(self.estimators) - set(ESTIMATORS)
        if unknown:
            raise ValueError(f"unknown estimators: {sorted(unknown)}")
        if self.report_format not in ("json", "csv", "table"):
            raise ValueError(f"unknown report format {self.report_format!r}")
        if self.input_path is None and (self.non_diseased_path is None or self.diseased_path is None):
            raise ValueError("either --input or both --non-diseased and --diseased are required")


def _load(config: RunConfig) -> LabeledDataset:
    if config.input_path is not None:
        return load_dataset(
            config.input_path,
            score_col=config.score_col,
            label_col=config.label_col,
            source_name=config.source_name,
        )
    return load_two_files(
        config.non_diseased_path, config.diseased_path, source_name=config.source_name
    )


def _curve_rows(curve: RocCurveGrid):
    return zip(curve.grid.points, curve.tpr)


def run(config: RunConfig) -> Report:
    """Execute one analysis run and write its outputs.

    Everything is computed before the first file is written, so a failed
    run leaves no partial outputs behind.
    """
    dataset = _load(config)
    grid = make_uniform_grid(config.grid_size)
    mg_config = config.mg if config.mg.grid is not None else replace(config.mg, grid=grid)

    curves: dict[str, RocCurveGrid] = {}
    estimators: dict[str, dict] = {}
    models = None
    mg_result: MgEnsembleResult | None = None

    if "empirical" in config.estimators:
        curve = empirical_roc(dataset, grid)
        curves["empirical"] = curve
        estimators["empirical"] = {
            "auc_trapezoidal": auc_trapezoid(curve),
            "auc_mann_whitney": auc_mann_whitney(dataset),
        }
    if "binormal" in config.estimators:
        params = fit_binormal(dataset)
        curve = binormal_curve(params, grid)
        curves["binormal"] = curve
        estimators["binormal"] = {
            "auc_trapezoidal": auc_trapezoid(curve),
            "auc_closed_form": binormal_auc(params),
            "auc_mann_whitney": binormal_auc(params),
            "mann_whitney_is_closed_form": True,
            "params": params.to_json_dict(),
        }
    if "mg" in config.estimators:
        f_model, g_model, mg_result = mg_pipeline(
            dataset, config.em, mg_config, keep_replicates=config.dump_replicates
        )
        models = (f_model, g_model)
        curves["mg"] = mg_result.mean_curve
        estimators["mg"] = {
            "auc_trapezoidal": mg_result.auc_mean,
            "auc_mann_whitney": mg_result.auc_mann_whitney_mean,
            "auc_se": mg_result.auc_se,
            "k_non_diseased": f_model.k,
            "k_diseased": g_model.k,
            "models": {"non_diseased": f_model.to_json_dict(), "diseased": g_model.to_json_dict()},
            "bands": {
                "alpha": mg_config.alpha,
                "mean_ci_avg_width": float(np.mean(mg_result.ci_upper - mg_result.ci_lower)),
                "envelope_avg_width": float(np.mean(mg_result.env_upper - mg_result.env_lower)),
            },
        }

    pauc_block = {}
    for lo, hi in config.pauc_intervals:
        key = f"{lo:g}:{hi:g}"
        pauc_block[key] = {name: pauc(curve, lo, hi) for name, curve in curves.items()}

    settings = {
        "seed": mg_config.seed,
        "m": mg_config.m,
        "alpha": mg_config.alpha,
        "grid_size": config.grid_size,
        "em": {
            "k_min": config.em.k_min,
            "k_max": config.em.k_max,
            "n_restarts": config.em.n_restarts,
            "tol": config.em.tol,
            "max_iter": config.em.max_iter,
            "seed": config.em.seed,
        },
        "estimators": list(config.estimators),
        "versions": {
            "mixroc": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
    }
    if not config.reproducible:
        settings["created_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()

    report = Report(
        dataset={
            "source_name": dataset.non_diseased.source_name or "dataset",
            "n_non_diseased": dataset.n_x,
            "n_diseased": dataset.n_y,
        },
        settings=settings,
        estimators=estimators,
        pauc=pauc_block,
    )

    _write_outputs(config, report, curves, models, mg_result, dataset)
    return report


def _write_outputs(config, report, curves, models, mg_result, dataset) -> None:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    if config.report_format == "json":
        (out / "report.json").write_text(report.to_json() + "\n")
    elif config.report_format == "csv":
        with (out / "report.csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["estimator", "auc_trapezoidal", "auc_mann_whitney"])
            for name, entry in report.estimators.items():
                writer.writerow(
                    [name, entry.get("auc_trapezoidal"), entry.get("auc_mann_whitney")]
                )
    else:
        (out / "report.txt").write_text(compare_table([report], fmt="text"))

    for name, curve in curves.items():
        with (out / f"curve_{name}.csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "tpr"])
            for t, r in _curve_rows(curve):
                writer.writerow([repr(float(t)), repr(float(r))])

    if mg_result is not None:
        with (out / "mg_bands.csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "mean", "se", "ci_lower", "ci_upper", "env_lower", "env_upper"])
            for i, t in enumerate(mg_result.mean_curve.grid.points):
                writer.writerow(
                    [
                        repr(float(t)),
                        repr(float(mg_result.mean_curve.tpr[i])),
                        repr(float(mg_result.se[i])),
                        repr(float(mg_result.ci_lower[i])),
                        repr(float(mg_result.ci_upper[i])),
                        repr(float(mg_result.env_lower[i])),
                        repr(float(mg_result.env_upper[i])),
                    ]
                )

    if models is not None:
        f_model, g_model = models
        (out / "model_non_diseased.json").write_text(f_model.to_json() + "\n")
        (out / "model_diseased.json").write_text(g_model.to_json() + "\n")

    if config.dump_replicates and mg_result is not None and mg_result.replicate_matrix is not None:
        with (out / "replicates.csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow([repr(float(t)) for t in mg_result.mean_curve.grid.points])
            for row in mg_result.replicate_matrix:
                writer.writerow([repr(float(v)) for v in row])

    if config.plots:
        (out / "histogram_non_diseased.svg").write_text(
            histogram_svg(dataset.non_diseased.scores, "Non-diseased scores")
        )
        (out / "histogram_diseased.svg").write_text(
            histogram_svg(dataset.diseased.scores, "Diseased scores")
        )
        band = None
        if mg_result is not None:
            # plots default to the envelope; a MEAN_CI band kind draws the
            # (much narrower) confidence band for the mean curve instead
            if config.mg.band_kind is BandKind.MEAN_CI:
                lo, hi = mg_result.ci_lower, mg_result.ci_upper
            else:
                lo, hi = mg_result.env_lower, mg_result.env_upper
            band = (mg_result.mean_curve.grid.points, lo, hi)
        curve_specs = []
        for name, curve in curves.items():
            if name == "empirical":
                # draw the true step polyline, not the grid resampling
                _, fpr, tpr = empirical_roc_points(dataset)
                curve_specs.append((name, fpr, tpr))
            else:
                curve_specs.append((name, curve.grid.points, curve.tpr))
        (out / "roc_overlay.svg").write_text(roc_overlay_svg(curve_specs, band=band))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixroc",
        description="ROC estimation: empirical, crude binormal, and mixture Monte Carlo.",
    )
    parser.add_argument("--input", help="labeled CSV (header row required)")
    parser.add_argument("--non-diseased", help="plain text scores, one per line (two-file mode)")
    parser.add_argument("--diseased", help="plain text scores, one per line (two-file mode)")
    parser.add_argument("--score-col", default="score", help="score column name (default: score)")
    parser.add_argument("--label-col", default="label", help="label column name (default: label)")
    parser.add_argument(
        "--estimators",
        default="empirical,binormal,mg",
        help="comma list from {empirical,binormal,mg}",
    )
    parser.add_argument("--grid-size", type=int, default=512, help="FPR grid size (default 512)")
    parser.add_argument("--mc-reps", type=int, default=1000, help="ensemble size M (default 1000)")
    parser.add_argument("--alpha", type=float, default=0.05, help="band level (default 0.05)")
    parser.add_argument("--k-max", type=int, default=5, help="max mixture components (default 5)")
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed")
    parser.add_argument("--pauc", action="append", default=[], metavar="LO:HI",
                        help="pAUC interval, repeatable (e.g. 0:0.2)")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--plots", action="store_true", help="write SVG plots")
    parser.add_argument("--report-format", choices=("json", "csv", "table"), default="json")
    parser.add_argument("--dump-replicates", action="store_true",
                        help="write the full M x grid replicate matrix")
    parser.add_argument("--reproducible", action="store_true",
                        help="omit timestamps so identical runs are byte-identical")
    parser.add_argument("--name", default=None, help="dataset label used in reports")
    return parser


def config_from_args(args) -> RunConfig:
    intervals = []
    for spec in args.pauc:
        try:
            lo, hi = (float(v) for v in spec.split(":"))
        except ValueError:
            raise ValueError(f"bad pAUC interval {spec!r}, expected LO:HI") from None
        intervals.append((lo, hi))
    return RunConfig(
        input_path=args.input,
        non_diseased_path=args.non_diseased,
        diseased_path=args.diseased,
        score_col=args.score_col,
        label_col=args.label_col,
        estimators=tuple(e.strip() for e in args.estimators.split(",") if e.strip()),
        em=EmConfig(k_max=args.k_max, seed=args.seed),
        mg=MgConfig(m=args.mc_reps, alpha=args.alpha, seed=args.seed),
        grid_size=args.grid_size,
        pauc_intervals=tuple(intervals),
        out_dir=args.out,
        plots=args.plots,
        report_format=args.report_format,
        dump_replicates=args.dump_replicates,
        reproducible=args.reproducible,
        source_name=args.name,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = run(config)
    except (DatasetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EmCollapseError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    if config.report_format == "table":
        print(compare_table([report], fmt="text"), end="")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
