"""Argument parser for python -m src.main."""

import argparse
from typing import List

from src.cli.commands import cmd_apply, cmd_estimate, cmd_report, cmd_simulate, cmd_truth
from src.config import config
from src.data.synthetic import EXPOSURES
from src.estimation.catalog import ESTIMATORS
from src.estimation.types import Assumption, Estimand
from src.nuisance.models import NuisanceModel


def _int_list(text: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be non-negative, got {value}")
    return value


def _estimator_names(text: str) -> List[str]:
    """Comma-separated catalog names, rejected at parse time when unknown."""
    names = [name.strip() for name in text.split(",") if name.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected at least one estimator name")
    unknown = [name for name in names if name not in ESTIMATORS]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown estimator(s) {', '.join(unknown)}; choose from {', '.join(ESTIMATORS)}"
        )
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m src.main",
        description="Probabilities of necessary and sufficient causation from observational data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=config.seed, help="Random seed (echoed in output)")
    common.add_argument("--folds", type=_positive, default=config.folds, help="Cross-fitting folds K")
    common.add_argument(
        "--bootstrap", type=_positive, default=config.bootstrap_reps, help="Bootstrap replicates B"
    )
    common.add_argument(
        "--workers", type=int, default=config.workers, help="joblib workers (-1: all cores)"
    )
    common.add_argument("--out", help="Output file (default: stdout)")

    est = sub.add_parser("estimate", parents=[common], help="Estimate PN or PS from a CSV file")
    est.add_argument("--data", required=True, help="CSV file with a header row")
    est.add_argument("--treatment", required=True, help="Binary treatment column")
    est.add_argument("--outcome", required=True, help="Binary outcome column")
    est.add_argument("--estimand", choices=[e.value for e in Estimand], default="pn")
    est.add_argument("--assumption", choices=[a.value for a in Assumption], default="mono")
    est.add_argument(
        "--method", choices=["proposed", "ipw", "or", "plugin"], default="proposed",
        help="ipw and or are PN-only comparison estimators",
    )
    est.add_argument("--known-propensity-col", help="Column holding known propensities")
    est.add_argument("--nuisance", choices=[m.value for m in NuisanceModel], default="logistic")
    est.add_argument("--interactions", help='Product terms, e.g. "cont=age,whr;disc=sex"')
    est.add_argument("--format", choices=["json", "csv"], default="json")
    est.add_argument(
        "--no-refit", dest="refit", action="store_false",
        help="Reuse the original nuisance predictions on bootstrap resamples",
    )
    est.add_argument("--nuisance-out", help="Write cross-fitted predictions to this CSV")
    est.add_argument("--efficiency", action="store_true", help="Add the PN efficiency report")
    est.set_defaults(handler=cmd_estimate)

    sim = sub.add_parser("simulate", parents=[common], help="Run the Monte-Carlo study")
    sim.add_argument("--cases", required=True, help='Case ids, e.g. "1,2,5-7"')
    sim.add_argument(
        "--estimators", type=_estimator_names, default=["pn_mono", "pn_inde"],
        help="Comma-separated estimator names",
    )
    sim.add_argument("--n", type=_int_list, default=[500, 1000, 2000], help="Sample sizes")
    sim.add_argument("--reps", type=_positive, default=1000, help="Replications per cell")
    sim.add_argument("--known-propensity", action="store_true", help="Add known-propensity estimators")
    sim.add_argument("--truth-samples", type=_positive, default=config.truth_samples)
    sim.add_argument("--nuisance", choices=[m.value for m in NuisanceModel], default="logistic")
    sim.add_argument("--variant", help='Alternative case reading, e.g. "two-dim"')
    sim.set_defaults(handler=cmd_simulate)

    truth = sub.add_parser("truth", help="True PN/PS value of a simulation case")
    truth.add_argument("--case", type=int, required=True)
    truth.add_argument("--estimand", choices=[e.value for e in Estimand], default="pn")
    truth.add_argument("--samples", type=_positive, default=config.truth_samples)
    truth.add_argument("--seed", type=_seed, default=config.seed)
    truth.add_argument("--variant")
    truth.set_defaults(handler=cmd_truth)

    report = sub.add_parser("report", help="Format a metrics CSV as a text table")
    report.add_argument("--in", dest="input", required=True, help="Metrics CSV from simulate")
    report.add_argument("--out", help="Output file (default: stdout)")
    report.set_defaults(handler=cmd_report)

    app = sub.add_parser("apply", parents=[common], help="Multi-exposure PN analysis")
    app.add_argument("--data", required=True, help="Case-control CSV file")
    app.add_argument("--outcome", default="case", help="Case indicator column")
    app.add_argument("--exposures", default=",".join(EXPOSURES), help="Comma-separated exposures")
    app.add_argument("--interactions", help='Product terms, e.g. "cont=age,whr;disc=sex"')
    app.add_argument("--group-col", help="Run separately within each level of this column")
    app.add_argument("--assumption", choices=[a.value for a in Assumption], default="mono")
    app.add_argument("--nuisance", choices=[m.value for m in NuisanceModel], default="lasso")
    app.add_argument("--format", choices=["text", "csv"], default="text")
    app.set_defaults(handler=cmd_apply)

    return parser
