#!/usr/bin/env python3
"""Command-line interface for hawkesmisd."""

import argparse
import json
import logging
import sys
import time
from datetime import date
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from hawkesmisd.baseline.towers import TowersModel, compare, expected_series, window_share
from hawkesmisd.catalog.events import EventCatalog
from hawkesmisd.catalog.ingest import SchemaMapping, serialize, summarize
from hawkesmisd.diagnostics.reports import monthly_expected, triggering_plot_table
from hawkesmisd.diagnostics.superthin import choose_b, superthin
from hawkesmisd.diagnostics.uniformity import calibration_run, residual_histogram, uniformity_tests
from hawkesmisd.exceptions import EmptyResidualError, HawkesMISDError
from hawkesmisd.io.files import (
    align_to_window,
    ingest_file,
    load_catalog,
    load_mark_distribution,
    load_model,
    read_json,
    write_csv,
    write_json,
)
from hawkesmisd.io.manifest import RunManifest
from hawkesmisd.misd.estimator import FitConfig, FittedModel, fit
from hawkesmisd.misd.inference import offspring_stats
from hawkesmisd.observability.logging import RunLogger, setup_logging
from hawkesmisd.observability.metrics import get_metrics_collector
from hawkesmisd.simulate.branching import SimConfig, empirical_mark_distribution, simulate_hawkes_with_lineage
from hawkesmisd.utils.config import Config

logger = logging.getLogger("hawkesmisd.cli")
run_logger = RunLogger()

PLOT_COLUMNS = ["bin_start", "bin_end", "open_ended", "value", "se", "lower", "upper"]


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _iso_date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {text!r}") from None


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _settings(args, config: Config) -> Dict[str, Any]:
    """Effective arguments and config, as recorded in the manifest."""
    arguments = {k: v for k, v in vars(args).items() if k != "func"}
    return {"arguments": json.loads(json.dumps(arguments, default=str)), "config": config.to_dict()}


def _finish(manifest: RunManifest, out: Path, config: Config) -> None:
    metrics = get_metrics_collector().get_metrics() if config.metrics_enabled else {}
    manifest.finish(out, metrics)


def _load_input(args, jitter_seed: Optional[int] = None) -> EventCatalog:
    return load_catalog(
        args.input,
        window_start=args.window_start,
        window_end=args.window_end,
        jitter_seed=jitter_seed,
    )


def _load_fitted(args) -> FittedModel:
    """Model JSON plus the catalog it is evaluated on, aligned to the model's window."""
    model, window, data = load_model(args.model)
    catalog = align_to_window(_load_input(args), window)
    return FittedModel.from_model(
        model,
        catalog,
        iterations=int(data.get("iterations", 0)),
        converged=bool(data.get("converged", True)),
        epsilon=data.get("epsilon") or float("nan"),
    )


def cmd_ingest(args, config: Config) -> int:
    """Normalize a source CSV into ``catalog.csv`` and ``summary.json``."""
    out = _out_dir(args)
    manifest = RunManifest.begin(
        "ingest", _settings(args, config), {"input": Path(args.input), "mapping": Path(args.mapping)}
    )

    mapping = SchemaMapping.model_validate(read_json(args.mapping))
    catalog = ingest_file(args.input, mapping)
    run_logger.log_ingest(catalog.n, catalog.dropped, str(args.input))
    get_metrics_collector().record_ingest(catalog.n, catalog.dropped)

    (out / "catalog.csv").write_bytes(serialize(catalog))
    write_json(out / "summary.json", summarize(catalog).to_dict())
    _finish(manifest, out, config)
    print(f"Wrote {catalog.n} events to {out / 'catalog.csv'}")
    return 0


def cmd_fit(args, config: Config) -> int:
    """Fit by MISD and write the model, offspring statistics and plot tables."""
    out = _out_dir(args)
    manifest = RunManifest.begin(
        "fit", _settings(args, config), {"input": Path(args.input)}, seed=args.jitter_seed
    )

    fit_config = FitConfig.from_config(
        config,
        time_edges=args.time_edges,
        mark_edges=args.mark_edges,
        mark_quantiles=args.mark_quantiles,
        epsilon=args.epsilon,
        max_iter=args.max_iter,
        jitter_seed=args.jitter_seed,
    )
    catalog = _load_input(args)
    fitted = fit(catalog, fit_config)
    window_days = args.window_days or config.offspring_window_days

    stats = offspring_stats(fitted, fitted.catalog, window_days).to_dict()
    stats["eta_t"] = fitted.eta_t
    stats["branching_ratio"] = fitted.model.branching_ratio(empirical_mark_distribution(fitted.catalog))
    stats["converged"] = fitted.converged

    g_rows, k_rows = triggering_plot_table(fitted)
    write_json(out / "model.json", fitted.to_dict())
    write_json(out / "offspring.json", stats)
    write_csv(out / "g_plot.csv", g_rows, PLOT_COLUMNS)
    write_csv(out / "k_plot.csv", k_rows, PLOT_COLUMNS)
    write_csv(
        out / "trace.csv",
        [{"iteration": i, "max_delta": d} for i, d in enumerate(fitted.trace, start=1)],
        ["iteration", "max_delta"],
    )
    if args.dump_p:
        triplets = fitted.P.to_triplets(config.p_dump_threshold)
        write_csv(out / "p_matrix.csv", [dict(zip("ijp", t)) for t in triplets], ["i", "j", "p"])

    _finish(manifest, out, config)
    if not fitted.converged:
        print(
            f"warning: fit did not converge in {fitted.iterations} iterations "
            f"(max |dP| = {fitted.max_delta:.3e})",
            file=sys.stderr,
        )
    print(f"mu = {fitted.mu:.6g}, eta_t = {fitted.eta_t:.4f}, iterations = {fitted.iterations}")
    return 0


def cmd_superthin(args, config: Config) -> int:
    """Super-thin the catalog against a model; optionally repeat over many seeds."""
    out = _out_dir(args)
    manifest = RunManifest.begin(
        "superthin",
        _settings(args, config),
        {"input": Path(args.input), "model": Path(args.model)},
        seed=args.seed,
    )

    fitted = _load_fitted(args)
    catalog = fitted.catalog
    b = choose_b(fitted, catalog, args.b or config.b_mode)
    alpha = args.alpha if args.alpha is not None else config.ks_alpha

    if args.replicates:
        seeds = range(args.seed, args.seed + args.replicates)
        summary = calibration_run(fitted, catalog, b, seeds, alpha, log_every=max(args.replicates // 10, 1))
        write_json(out / "calibration.json", summary.to_dict())
        write_csv(
            out / "calibration_p.csv",
            [{"run": i, "p": p} for i, p in enumerate(summary.p_values, start=1)],
            ["run", "p"],
        )
        _finish(manifest, out, config)
        print(f"Rejection rate {summary.rejection_rate:.4f} over {summary.runs} runs at alpha={alpha}")
        return 0

    residual = superthin(fitted, catalog, b, args.seed)
    write_csv(out / "residual.csv", [{"t": t, "label": lab} for t, lab in residual.rows()], ["t", "label"])
    write_csv(
        out / "residual_monthly.csv",
        [{"month": m, "count": c} for m, c in residual_histogram(residual)],
        ["month", "count"],
    )
    try:
        result = uniformity_tests(residual).to_dict()
    except EmptyResidualError as exc:
        logger.warning(f"{exc}; uniformity statistics left empty")
        result = {"ks": None, "p": None, "n": 0}
    result["b"] = b
    write_json(out / "uniformity.json", result)
    _finish(manifest, out, config)
    print(f"b = {b:.6g}: {residual.residual_times.size} residual points, KS p = {result['p']}")
    return 0


def cmd_simulate(args, config: Config) -> int:
    """Draw a synthetic catalog from a model JSON."""
    out = _out_dir(args)
    manifest = RunManifest.begin(
        "simulate",
        _settings(args, config),
        {"model": Path(args.model), "marks": Path(args.marks)},
        seed=args.seed,
    )

    model, _, _ = load_model(args.model)
    sim_config = SimConfig(
        model=model,
        T=args.T,
        mark_distribution=load_mark_distribution(args.marks),
        seed=args.seed,
        allow_supercritical=args.allow_supercritical,
        epoch=args.epoch or date.fromisoformat(config.simulation_epoch),
    )
    result = simulate_hawkes_with_lineage(sim_config)
    catalog = result.catalog

    (out / "catalog.csv").write_bytes(serialize(catalog))
    write_json(out / "summary.json", summarize(catalog).to_dict())
    write_csv(
        out / "events.csv",
        [{"t": t, "mark": int(m), "parent": int(p)} for t, m, p in zip(catalog.times, catalog.marks, result.parents)],
        ["t", "mark", "parent"],
    )
    write_json(
        out / "simulation.json",
        {
            **sim_config.to_dict(),
            "n": catalog.n,
            "generations": result.generations,
            "realized_rho": result.realized_rho,
        },
    )
    _finish(manifest, out, config)
    print(f"Simulated {catalog.n} events over {args.T:g} days (rho = {result.rho:.4f})")
    return 0


def cmd_baseline(args, config: Config) -> int:
    """Evaluate the exponential contagion baseline, next to a fitted model when given."""
    out = _out_dir(args)
    inputs = {"input": Path(args.input), "config": Path(args.config)}
    if args.model:
        inputs["model"] = Path(args.model)
    manifest = RunManifest.begin("baseline", _settings(args, config), inputs)

    towers = TowersModel.from_dict(read_json(args.config))
    window_days = args.window_days or config.offspring_window_days

    if args.model:
        fitted = _load_fitted(args)
        report = compare(fitted, towers, fitted.catalog, window_days)
        comparison = report.to_dict()
        rows = report.series_rows()
        columns = ["day", "misd_expected", "towers_expected"]
    else:
        catalog = _load_input(args)
        series = expected_series(catalog, towers)
        comparison = {
            "window_days": float(window_days),
            "towers_n_secondary": towers.n_secondary,
            "towers_within_window": window_share(towers, window_days),
        }
        rows = [{"day": d, "towers_expected": float(v)} for d, v in enumerate(series)]
        columns = ["day", "towers_expected"]

    comparison["baseline"] = towers.to_dict()
    write_csv(out / "baseline_series.csv", rows, columns)
    write_json(out / "comparison.json", comparison)
    _finish(manifest, out, config)
    print(f"Baseline series over {len(rows)} days written to {out / 'baseline_series.csv'}")
    return 0


def cmd_report(args, config: Config) -> int:
    """Monthly observed/expected counts and g, k plot tables of a stored model."""
    if not (args.monthly or args.plots):
        print("error: report needs --monthly and/or --plots", file=sys.stderr)
        return 2
    out = _out_dir(args)
    manifest = RunManifest.begin(
        "report", _settings(args, config), {"input": Path(args.input), "model": Path(args.model)}
    )

    fitted = _load_fitted(args)
    if args.monthly:
        rows = [
            {"month": r.month, "observed": r.observed, "expected": r.expected}
            for r in monthly_expected(fitted, fitted.catalog)
        ]
        write_csv(out / "monthly.csv", rows, ["month", "observed", "expected"])
    if args.plots:
        g_rows, k_rows = triggering_plot_table(fitted)
        write_csv(out / "g_plot.csv", g_rows, PLOT_COLUMNS)
        write_csv(out / "k_plot.csv", k_rows, PLOT_COLUMNS)

    _finish(manifest, out, config)
    print(f"Report written to {out}")
    return 0


def _add_window_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--window-start", type=_iso_date, help="First window day (default: summary.json or data)")
    parser.add_argument("--window-end", type=_iso_date, help="Last window day, inclusive")


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog="hawkesmisd",
        description="Nonparametric marked Hawkes process fitting by stochastic declustering",
    )
    parser.add_argument("--settings", help="YAML or JSON file overriding built-in defaults")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--log-structured", action="store_true", default=None, help="JSON log lines")
    parser.add_argument("--log-file", help="Also write logs to this file")

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    # Ingest command
    ingest_parser = subparsers.add_parser("ingest", help="Normalize a source CSV")
    ingest_parser.add_argument("--input", required=True, help="Source CSV")
    ingest_parser.add_argument("--mapping", required=True, help="SchemaMapping JSON")
    ingest_parser.add_argument("--out", required=True, help="Output directory")
    ingest_parser.set_defaults(func=cmd_ingest)

    # Fit command
    fit_parser = subparsers.add_parser("fit", help="Fit a Hawkes model by MISD")
    fit_parser.add_argument("--input", required=True, help="Normalized catalog CSV")
    _add_window_flags(fit_parser)
    fit_parser.add_argument("--time-edges", type=_float_list, help="g bin edges, e.g. 0,14,91,182,365,1826")
    marks = fit_parser.add_mutually_exclusive_group()
    marks.add_argument("--mark-edges", type=_float_list, help="k bin edges, e.g. 3,4,5,7")
    marks.add_argument("--mark-quantiles", type=int, help="Number of empirical-quantile k bins")
    fit_parser.add_argument("--epsilon", type=float, help="Stop when max |dP| falls below this")
    fit_parser.add_argument("--max-iter", type=int, help="Iteration cap")
    fit_parser.add_argument("--jitter-seed", type=int, help="Break same-day ties with seeded offsets")
    fit_parser.add_argument("--window-days", type=float, help="Offspring window in days (default 13)")
    fit_parser.add_argument("--dump-p", action="store_true", help="Also write the sparse P matrix")
    fit_parser.add_argument("--out", required=True, help="Output directory")
    fit_parser.set_defaults(func=cmd_fit)

    # Superthin command
    thin_parser = subparsers.add_parser("superthin", help="Super-thinning residual analysis")
    thin_parser.add_argument("--input", required=True, help="Normalized catalog CSV")
    thin_parser.add_argument("--model", required=True, help="Model JSON")
    _add_window_flags(thin_parser)
    thin_parser.add_argument("--b", help="median, min, max or fixed:<rate>")
    thin_parser.add_argument("--seed", type=int, required=True, help="Random seed")
    thin_parser.add_argument("--replicates", type=int, help="Run this many seeds from --seed and summarize")
    thin_parser.add_argument("--alpha", type=float, help="KS rejection level for --replicates")
    thin_parser.add_argument("--out", required=True, help="Output directory")
    thin_parser.set_defaults(func=cmd_superthin)

    # Simulate command
    sim_parser = subparsers.add_parser("simulate", help="Simulate a synthetic catalog")
    sim_parser.add_argument("--model", required=True, help="Model JSON")
    sim_parser.add_argument("--T", type=float, required=True, help="Window length in days")
    sim_parser.add_argument("--marks", required=True, help="Mark distribution JSON")
    sim_parser.add_argument("--seed", type=int, required=True, help="Random seed")
    sim_parser.add_argument("--epoch", type=_iso_date, help="Calendar date of t = 0")
    sim_parser.add_argument("--allow-supercritical", action="store_true", help="Simulate even if rho >= 1")
    sim_parser.add_argument("--out", required=True, help="Output directory")
    sim_parser.set_defaults(func=cmd_simulate)

    # Baseline command
    base_parser = subparsers.add_parser("baseline", help="Exponential contagion baseline")
    base_parser.add_argument("--input", required=True, help="Normalized catalog CSV")
    base_parser.add_argument("--config", required=True, help="Baseline JSON (t_excite, n_secondary, n0)")
    base_parser.add_argument("--model", help="Fitted model JSON to compare against")
    _add_window_flags(base_parser)
    base_parser.add_argument("--window-days", type=float, help="Offspring window in days (default 13)")
    base_parser.add_argument("--out", required=True, help="Output directory")
    base_parser.set_defaults(func=cmd_baseline)

    # Report command
    report_parser = subparsers.add_parser("report", help="Monthly expected counts and plot tables")
    report_parser.add_argument("--input", required=True, help="Normalized catalog CSV")
    report_parser.add_argument("--model", required=True, help="Model JSON")
    _add_window_flags(report_parser)
    report_parser.add_argument("--monthly", action="store_true", help="Write monthly.csv")
    report_parser.add_argument("--plots", action="store_true", help="Write g_plot.csv and k_plot.csv")
    report_parser.add_argument("--out", required=True, help="Output directory")
    report_parser.set_defaults(func=cmd_report)

    return parser


def _load_config(args) -> Config:
    config = Config.from_file(args.settings) if args.settings else Config()
    return config.merged(
        {
            "log_level": args.log_level,
            "log_structured": args.log_structured,
            "log_file": args.log_file,
        }
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 2

    try:
        config = _load_config(args)
    except (HawkesMISDError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    setup_logging(level=config.log_level, structured=config.log_structured, log_file=config.log_file)

    started = time.perf_counter()
    status = "error"
    try:
        code = args.func(args, config)
        status = "success" if code == 0 else "error"
        return code
    except ValidationError as exc:
        print(f"error: invalid input: {exc.error_count()} problem(s); {exc.errors()[0]['msg']}", file=sys.stderr)
        return 2
    except (HawkesMISDError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        duration_ms = (time.perf_counter() - started) * 1000
        run_logger.log_command(args.command, status, duration_ms)
        get_metrics_collector().record_command(args.command, status, duration_ms)


if __name__ == "__main__":
    sys.exit(main())
