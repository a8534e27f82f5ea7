"""Multi-exposure and subgroup PN analysis of a case-control table."""

import logging
from dataclasses import replace
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.config import config
from src.data.loader import dataset_from_frame, expand_interactions
from src.data.models import Dataset
from src.errors import ArgumentError, AttributionError, SchemaError
from src.estimation import baselines, pn
from src.estimation.bootstrap import BootstrapPlan
from src.estimation.types import Assumption, Estimate
from src.nuisance.crossfit import cross_fit
from src.nuisance.models import NuisanceModel
from src.nuisance.streams import SeedKey, as_key

logger = logging.getLogger(__name__)

METHODS = ("proposed", "OR", "IPW")
RESULT_COLUMNS = ["group", "exposure", "method", "pn.est", "ESE", "p-value", "error"]

Interactions = Tuple[Sequence[str], Sequence[str]]


def exposure_dataset(
    frame: pd.DataFrame,
    outcome_col: str,
    exposure: str,
    exclude: Sequence[str] = (),
    interactions: Optional[Interactions] = None,
) -> Dataset:
    """Dataset for one exposure; covariates are every other column not excluded.

    Interaction terms naming the exposure or an excluded column are skipped.
    """
    covariates = [
        c for c in frame.columns if c not in (outcome_col, exposure, *exclude)
    ]
    d = dataset_from_frame(frame, exposure, outcome_col, covariates)
    if interactions is None:
        return d

    continuous, discrete = (
        [c for c in cols if c in covariates] for cols in interactions
    )
    return expand_interactions(d, continuous, discrete)


def _row(group: Any, exposure: str, method: str, estimate: Optional[Estimate] = None, error: str = "") -> Dict[str, Any]:
    return {
        "group": group,
        "exposure": exposure,
        "method": method,
        "pn.est": estimate.value if estimate else None,
        "ESE": estimate.se if estimate else None,
        "p-value": estimate.p_value if estimate else None,
        "error": error,
    }


def analyse_exposure(
    d: Dataset,
    exposure: str,
    nuisance: NuisanceModel,
    folds: int,
    plan: BootstrapPlan,
    seed: SeedKey,
    assumption: Assumption = Assumption.MONOTONICITY,
    group: Any = None,
) -> List[Dict[str, Any]]:
    """Proposed, OR and IPW PN estimates for one exposure.

    The proposed estimator reports its influence-function SE; OR and IPW
    report bootstrap SEs. A failing method gives a row carrying its error code.
    """
    nf = cross_fit(d, k=folds, model=nuisance, seed=seed)

    proposed = pn.pn_mono if assumption == Assumption.MONOTONICITY else pn.pn_inde
    runners = {
        "proposed": lambda: proposed(d, nf),
        "OR": lambda: baselines.pn_or(d, nf, plan),
        "IPW": lambda: baselines.pn_ipw(d, nf, plan),
    }

    rows = []
    for method in METHODS:
        try:
            estimate = runners[method]()
            rows.append(_row(group, exposure, method, estimate))
            logger.info(
                f"  {method}: pn.est={estimate.value:.3f} ESE={estimate.se:.3f} "
                f"p={estimate.p_value:.4f}"
            )
        except AttributionError as e:
            logger.error(f"  {method} failed for {exposure}: {e.code}: {e.message}")
            rows.append(_row(group, exposure, method, error=e.code))
    return rows


def run_application(
    frame: pd.DataFrame,
    outcome_col: str,
    exposures: Sequence[str],
    interactions: Optional[Interactions] = None,
    nuisance: NuisanceModel = NuisanceModel.LASSO,
    folds: Optional[int] = None,
    bootstrap_reps: Optional[int] = None,
    seed: Optional[SeedKey] = None,
    group_col: Optional[str] = None,
    assumption: Assumption = Assumption.MONOTONICITY,
    workers: int = 1,
) -> pd.DataFrame:
    """Estimate PN for each exposure, overall or within each level of group_col.

    Args:
        frame: Token frame as returned by read_table
        outcome_col: Binary case indicator
        exposures: Binary exposure columns, analysed one at a time
        interactions: (continuous, discrete) column lists for product terms
        nuisance: Learner for the three nuisance functions
        folds: Cross-fitting folds
        bootstrap_reps: Replicates for the OR and IPW SEs
        seed: Run seed; exposure j of group g uses (seed..., g, j)
        group_col: Optional grouping column; excluded from the covariates
        assumption: Identification assumption of the proposed estimator
        workers: joblib workers for bootstrap replicates

    Returns:
        DataFrame with columns group, exposure, method, pn.est, ESE, p-value, error
    """
    folds = config.folds if folds is None else folds
    bootstrap_reps = config.bootstrap_reps if bootstrap_reps is None else bootstrap_reps
    key = as_key(config.seed if seed is None else seed)

    if not exposures:
        raise ArgumentError("No exposures given")
    for column in (outcome_col, *exposures, *([group_col] if group_col else [])):
        if column not in frame.columns:
            raise SchemaError(column)

    if group_col is None:
        groups: List[Tuple[Any, pd.DataFrame]] = [("all", frame)]
    else:
        levels = frame[group_col].dropna().unique()
        numeric = pd.to_numeric(pd.Series(levels), errors="coerce")
        order = np.argsort(numeric.to_numpy()) if numeric.notna().all() else np.argsort(levels)
        groups = [(levels[i], frame[frame[group_col] == levels[i]]) for i in order]

    exclude = [group_col] if group_col else []
    plan = BootstrapPlan(
        reps=bootstrap_reps, seed=key, folds=folds, model=nuisance, workers=workers
    )

    logger.info("=" * 60)
    logger.info(
        f"Application run: {len(exposures)} exposures, {len(groups)} group(s), "
        f"{nuisance.value} nuisances, B={bootstrap_reps}"
    )
    logger.info("=" * 60)

    start_time = datetime.now()
    rows: List[Dict[str, Any]] = []
    success_count = 0
    error_count = 0
    total = len(groups) * len(exposures)
    index = 0

    for g, (group, subset) in enumerate(groups):
        for j, exposure in enumerate(exposures):
            index += 1
            logger.info(f"[{index}/{total}] Group {group}, exposure {exposure}")
            run_key = key + (g, j)
            try:
                d = exposure_dataset(subset, outcome_col, exposure, exclude, interactions)
                rows.extend(
                    analyse_exposure(
                        d, exposure, nuisance, folds, replace(plan, seed=run_key),
                        run_key, assumption, group,
                    )
                )
                success_count += 1
            except AttributionError as e:
                logger.error(f"  Error analysing {exposure} in group {group}: {e.code}: {e.message}")
                rows.extend(_row(group, exposure, method, error=e.code) for method in METHODS)
                error_count += 1
                continue

    elapsed = (datetime.now() - start_time).total_seconds()
    logger.info("=" * 60)
    logger.info("Application run complete")
    logger.info(f"Duration: {elapsed:.1f} seconds")
    logger.info(f"Exposures analysed: {success_count}, errors: {error_count}")
    logger.info("=" * 60)

    return pd.DataFrame(rows, columns=RESULT_COLUMNS)
