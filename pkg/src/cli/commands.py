"""Subcommand handlers; each returns a process exit code."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from src.application import run_application
from src.data.loader import (
    dataset_from_frame,
    dataset_with_propensity,
    expand_interactions,
    parse_interaction_spec,
    read_table,
)
from src.delivery.serializers import (
    estimate_to_csv,
    estimate_to_json,
    frame_to_text,
    read_metrics_csv,
    write_metrics_csv,
    write_nuisance_csv,
)
from src.delivery.tables import (
    format_application_table,
    format_metrics_table,
    format_subgroup_table,
)
from src.diagnostics.efficiency import efficiency_report
from src.errors import ArgumentError
from src.estimation.bootstrap import BootstrapPlan
from src.estimation.catalog import proposed_name, run_estimator
from src.estimation.types import Assumption, Estimand
from src.nuisance.crossfit import cross_fit
from src.nuisance.models import NuisanceModel
from src.simulation.registry import get_case, parse_case_ids
from src.simulation.study import run_study
from src.simulation.truth_cache import TruthCache, cached_true_value, default_cache_path

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ESTIMATION = 1
EXIT_USAGE = 2


def _emit(text: str, out: Optional[str]):
    """Write results to out, or to stdout."""
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Output saved to {out}")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_estimate(args: argparse.Namespace) -> int:
    """Load data, cross-fit nuisances and print one Estimate."""
    estimand = Estimand(args.estimand)
    assumption = Assumption(args.assumption)
    model = NuisanceModel(args.nuisance)

    frame = read_table(args.data)
    if args.known_propensity_col:
        d, known_e = dataset_with_propensity(
            frame, args.treatment, args.outcome, args.known_propensity_col
        )
    else:
        d, known_e = dataset_from_frame(frame, args.treatment, args.outcome), None
    if d.dropped_count:
        logger.warning(f"{d.dropped_count} rows dropped for missing values")

    if args.interactions:
        continuous, discrete = parse_interaction_spec(args.interactions)
        d = expand_interactions(d, continuous, discrete)

    if args.method == "proposed":
        name = proposed_name(estimand, assumption, known_e=known_e is not None)
    elif args.method == "plugin":
        name = f"{estimand.value}_plugin_{assumption.value}"
    elif estimand == Estimand.PN:
        name = f"pn_{args.method}"
    else:
        raise ArgumentError(f"Method {args.method!r} is only available for PN")

    if args.efficiency and estimand != Estimand.PN:
        raise ArgumentError("--efficiency reports PN efficiency bounds; use --estimand pn")

    logger.info(
        f"Estimating {name} on {d.n} units, {d.p} covariates "
        f"({model.value} nuisances, K={args.folds}, seed {args.seed})"
    )
    nf = cross_fit(d, k=args.folds, model=model, known_e=known_e, seed=args.seed)
    if args.nuisance_out:
        write_nuisance_csv(nf, args.nuisance_out)

    plan = BootstrapPlan(
        reps=args.bootstrap,
        seed=args.seed,
        refit=args.refit,
        folds=args.folds,
        model=model,
        workers=args.workers,
    )
    estimate = run_estimator(name, d, nf, plan)
    logger.info(
        f"{name} = {estimate.value:.4f} (SE {estimate.se:.4f}, p = {estimate.p_value:.4g})"
    )

    if args.format == "csv":
        _emit(estimate_to_csv(estimate, args.seed), args.out)
    else:
        report = efficiency_report(d, nf) if args.efficiency else None
        _emit(estimate_to_json(estimate, args.seed, report), args.out)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    """Run the Monte-Carlo study and write the metrics CSV."""
    case_ids = parse_case_ids(args.cases)

    with TruthCache(default_cache_path()) as cache:
        rows = run_study(
            case_ids,
            args.estimators,
            args.n,
            args.reps,
            folds=args.folds,
            seed=args.seed,
            workers=args.workers,
            known_propensity=args.known_propensity,
            truth_samples=args.truth_samples,
            bootstrap_reps=args.bootstrap,
            model=NuisanceModel(args.nuisance),
            cache=cache,
            variant=args.variant,
        )

    _emit(write_metrics_csv(rows), args.out)
    return EXIT_OK


def cmd_truth(args: argparse.Namespace) -> int:
    """Print the Monte-Carlo true value of a case."""
    spec = get_case(args.case, args.variant)
    with TruthCache(default_cache_path()) as cache:
        value = cached_true_value(spec, Estimand(args.estimand), args.samples, args.seed, cache)
    _emit(f"{value:.17g}", None)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    frame = read_metrics_csv(args.input)
    _emit(format_metrics_table(frame), args.out)
    return EXIT_OK


def cmd_apply(args: argparse.Namespace) -> int:
    """PN for each exposure of a case-control file, optionally by subgroup."""
    frame = read_table(args.data)
    exposures = [e.strip() for e in args.exposures.split(",") if e.strip()]
    interactions = parse_interaction_spec(args.interactions) if args.interactions else None

    results = run_application(
        frame,
        args.outcome,
        exposures,
        interactions=interactions,
        nuisance=NuisanceModel(args.nuisance),
        folds=args.folds,
        bootstrap_reps=args.bootstrap,
        seed=args.seed,
        group_col=args.group_col,
        assumption=Assumption(args.assumption),
        workers=args.workers,
    )

    if args.format == "csv":
        _emit(frame_to_text(results), args.out)
    elif args.group_col:
        _emit(format_subgroup_table(results.to_dict("records")), args.out)
    else:
        _emit(format_application_table(results.to_dict("records")), args.out)
    return EXIT_OK
