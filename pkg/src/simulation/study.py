"""Monte-Carlo replication engine producing Bias / SSE / ESE / CP95 tables."""

import logging
from dataclasses import dataclass
from datetime import datetime
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from src.config import config
from src.errors import AttributionError
from src.estimation.bootstrap import BootstrapPlan
from src.estimation.catalog import EstimatorSpec, get_estimator, known_e_counterpart
from src.estimation.types import Estimand
from src.nuisance.crossfit import cross_fit
from src.nuisance.models import NuisanceModel
from src.simulation.generator import generate_case
from src.simulation.registry import get_case
from src.simulation.truth_cache import TruthCache, cached_true_value

logger = logging.getLogger(__name__)

# A cell is flagged invalid when more than this share of replications fail
MAX_FAILURE_SHARE = 0.05

# (value, se, ci_low, ci_high) on success, the error code on failure
Outcome = Union[Tuple[float, float, float, float], str]


@dataclass
class MetricsRow:
    """Monte-Carlo summary of one (case, estimator, n) cell."""

    case_id: int
    estimator: str
    n: int
    reps: int
    bias: float  # mean(estimate) - truth
    sse: float  # standard deviation of the estimates
    ese: float  # mean of the estimated standard errors
    cp95: float  # share of 95% intervals covering the truth
    failures: int = 0
    truth: Optional[float] = None
    valid: bool = True
    seed: Optional[int] = None  # study seed; replication r used (seed, case, n, r)


def expand_estimators(names: Sequence[str], known_propensity: bool) -> List[EstimatorSpec]:
    """Resolve names; with known_propensity add each proposed estimator's known-e twin."""
    specs: List[EstimatorSpec] = []
    for name in names:
        spec = get_estimator(name)
        specs.append(spec)
        if known_propensity:
            twin = known_e_counterpart(spec)
            if twin is not None:
                specs.append(twin)
    unique = {spec.name: spec for spec in specs}
    return list(unique.values())


def run_replication(
    case_id: int,
    n: int,
    replication: int,
    seed: int,
    estimator_names: Sequence[str],
    folds: int,
    model: NuisanceModel,
    clip_eps: float,
    bootstrap_reps: int,
    variant: Optional[str] = None,
) -> Dict[str, Outcome]:
    """Generate one dataset and apply every estimator to it.

    Known-propensity estimators receive the generating propensity; all
    others use the cross-fitted one. Both fits share folds and outcome models.
    """
    key = (seed, case_id, n, replication)
    spec = get_case(case_id, variant)
    draw = generate_case(spec, n, key)
    d = draw.dataset
    plan = BootstrapPlan(
        reps=bootstrap_reps, seed=key, folds=folds, model=model, clip_eps=clip_eps, workers=1
    )

    fits = {}
    outcomes: Dict[str, Outcome] = {}
    for name in estimator_names:
        estimator = get_estimator(name)
        try:
            if estimator.known_e not in fits:
                fits[estimator.known_e] = cross_fit(
                    d,
                    k=folds,
                    model=model,
                    known_e=draw.e if estimator.known_e else None,
                    seed=key,
                    clip_eps=clip_eps,
                )
            estimate = estimator.compute(d, fits[estimator.known_e], plan)
            outcomes[name] = (estimate.value, estimate.se, estimate.ci_low, estimate.ci_high)
        except AttributionError as e:
            outcomes[name] = e.code

    return outcomes


def summarize_cell(
    case_id: int,
    estimator: str,
    n: int,
    outcomes: Sequence[Outcome],
    truth: float,
    seed: Optional[int] = None,
) -> MetricsRow:
    """Aggregate replication outcomes, in replication order, into one row."""
    successes = np.array([o for o in outcomes if not isinstance(o, str)], dtype=float)
    failures = len(outcomes) - len(successes)
    reps = len(outcomes)

    if len(successes) == 0:
        return MetricsRow(
            case_id, estimator, n, reps,
            bias=float("nan"), sse=float("nan"), ese=float("nan"), cp95=float("nan"),
            failures=failures, truth=truth, valid=False, seed=seed,
        )

    values, ses, lows, highs = successes.T
    covered = (lows <= truth) & (truth <= highs)

    return MetricsRow(
        case_id=case_id,
        estimator=estimator,
        n=n,
        reps=reps,
        bias=float(np.mean(values) - truth),
        sse=float(np.std(values, ddof=1)) if len(values) > 1 else 0.0,
        ese=float(np.mean(ses)),
        cp95=float(np.mean(covered)),
        failures=failures,
        truth=truth,
        valid=failures <= MAX_FAILURE_SHARE * reps,
        seed=seed,
    )


def run_study(
    case_ids: Sequence[int],
    estimators: Sequence[str],
    n_values: Sequence[int],
    reps: int,
    folds: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    known_propensity: bool = False,
    truth_samples: Optional[int] = None,
    bootstrap_reps: Optional[int] = None,
    model: NuisanceModel = NuisanceModel.LOGISTIC,
    clip_eps: Optional[float] = None,
    cache: Optional[TruthCache] = None,
    variant: Optional[str] = None,
) -> List[MetricsRow]:
    """Run every (case, n) cell and summarize each estimator.

    Args:
        case_ids: Registered case ids
        estimators: Catalog names, e.g. ["pn_mono", "pn_inde"]
        n_values: Sample sizes
        reps: Replications per cell
        folds: Cross-fitting folds
        seed: Study seed; replication r of (case, n) uses (seed, case, n, r)
        workers: joblib worker count; results do not depend on it
        known_propensity: Add known-propensity twins of the proposed estimators
        truth_samples: Sample size of the truth oracle
        bootstrap_reps: Replicates for bootstrap-SE estimators
        model: Nuisance learner
        clip_eps: Propensity clipping
        cache: Open truth cache, if any
        variant: Alternative reading of the cases, e.g. "two-dim" for case 8

    Returns:
        MetricsRow list ordered by case, n, then estimator
    """
    folds = config.folds if folds is None else folds
    seed = config.seed if seed is None else seed
    workers = config.workers if workers is None else workers
    truth_samples = config.truth_samples if truth_samples is None else truth_samples
    bootstrap_reps = config.bootstrap_reps if bootstrap_reps is None else bootstrap_reps
    clip_eps = config.clip_eps if clip_eps is None else clip_eps

    specs = expand_estimators(estimators, known_propensity)
    names = [spec.name for spec in specs]
    cells = [(case_id, n) for case_id in case_ids for n in n_values]

    logger.info("=" * 60)
    logger.info(
        f"Simulation study: {len(cells)} cells, {reps} replications, "
        f"estimators {', '.join(names)}, seed {seed}"
    )
    logger.info("=" * 60)

    start_time = datetime.now()
    truths: Dict[Tuple[int, Estimand], float] = {}
    rows: List[MetricsRow] = []
    invalid_count = 0

    for index, (case_id, n) in enumerate(cells, start=1):
        logger.info(f"[{index}/{len(cells)}] Case {case_id}, n={n}")
        spec_case = get_case(case_id, variant)

        for estimand in dict.fromkeys(spec.estimand for spec in specs):
            if (case_id, estimand) not in truths:
                truths[(case_id, estimand)] = cached_true_value(
                    spec_case, estimand, truth_samples, seed, cache
                )

        results: List[Dict[str, Outcome]] = Parallel(n_jobs=workers)(
            delayed(run_replication)(
                case_id, n, r, seed, names, folds, model, clip_eps, bootstrap_reps, variant
            )
            for r in range(reps)
        )

        for spec in specs:
            row = summarize_cell(
                case_id,
                spec.name,
                n,
                [result[spec.name] for result in results],
                truths[(case_id, spec.estimand)],
                seed=seed,
            )
            if not row.valid:
                invalid_count += 1
                logger.warning(
                    f"  {spec.name}: {row.failures}/{reps} replications failed, cell flagged invalid"
                )
            elif row.failures:
                logger.warning(f"  {spec.name}: {row.failures}/{reps} replications failed")
            logger.info(
                f"  {spec.name}: bias={row.bias:.3f} sse={row.sse:.3f} "
                f"ese={row.ese:.3f} cp95={row.cp95:.3f}"
            )
            rows.append(row)

    elapsed = (datetime.now() - start_time).total_seconds()
    logger.info("=" * 60)
    logger.info("Simulation study complete")
    logger.info(f"Duration: {elapsed:.1f} seconds")
    logger.info(f"Rows: {len(rows)}, invalid cells: {invalid_count}")
    logger.info("=" * 60)

    return rows
