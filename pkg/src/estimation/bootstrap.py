"""Nonparametric bootstrap standard errors.

Rows are resampled with replacement. By default the nuisance models are
cross-fitted again on every resample with the plan's learner, folds and
clipping. With refit=False each resampled unit keeps its original predictions.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np
from joblib import Parallel, delayed

from src.config import config
from src.data.models import Dataset
from src.errors import AttributionError, BootstrapError
from src.estimation.types import PropensitySource
from src.nuisance.crossfit import cross_fit
from src.nuisance.models import NuisanceFit, NuisanceModel
from src.nuisance.streams import SeedKey, Stage, as_key, stream

logger = logging.getLogger(__name__)

Statistic = Callable[[Dataset, NuisanceFit], float]


@dataclass(frozen=True)
class BootstrapPlan:
    """How bootstrap replicates are drawn and refitted."""

    reps: int = field(default_factory=lambda: config.bootstrap_reps)
    seed: SeedKey = field(default_factory=lambda: config.seed)
    refit: bool = True  # cross-fit nuisances again on each resample
    folds: int = field(default_factory=lambda: config.folds)
    model: NuisanceModel = NuisanceModel.LOGISTIC
    clip_eps: Optional[float] = None
    workers: int = 1


@dataclass(frozen=True)
class BootstrapResult:
    se: float
    values: np.ndarray  # successful replicates in replicate order
    failures: int
    reps: int


def _replicate(
    d: Dataset, nf: NuisanceFit, statistic: Statistic, plan: BootstrapPlan, index: int
) -> Optional[float]:
    """One resample; None when the statistic cannot be computed on it."""
    key = as_key(plan.seed)
    rows = stream(key, Stage.BOOTSTRAP, index).integers(0, d.n, size=d.n)
    d_boot = d.subset(rows)

    try:
        if plan.refit:
            known = (
                nf.e_hat[rows]
                if nf.propensity_source == PropensitySource.KNOWN
                else None
            )
            nf_boot = cross_fit(
                d_boot,
                k=plan.folds,
                model=plan.model,
                known_e=known,
                seed=key + (Stage.BOOTSTRAP, index),
                clip_eps=plan.clip_eps,
            )
        else:
            nf_boot = nf.subset(rows)
        value = statistic(d_boot, nf_boot)
    except AttributionError as e:
        logger.debug(f"Bootstrap replicate {index} failed: {e.code}: {e.message}")
        return None

    return float(value) if np.isfinite(value) else None


def bootstrap(
    d: Dataset, nf: NuisanceFit, statistic: Statistic, plan: Optional[BootstrapPlan] = None
) -> BootstrapResult:
    """Bootstrap SE of statistic(d, nf).

    Args:
        d: Observed data
        nf: Nuisance fit on d (predictions reused, or propensities reused when Known)
        statistic: Point-estimate function; must be picklable for workers > 1
        plan: Replicate count, seed and refit policy

    Returns:
        BootstrapResult with the sample standard deviation of the replicates
    """
    plan = plan or BootstrapPlan()
    if plan.reps < 2:
        raise BootstrapError(f"Bootstrap needs at least 2 replicates, got {plan.reps}")

    results: List[Optional[float]] = Parallel(n_jobs=plan.workers)(
        delayed(_replicate)(d, nf, statistic, plan, index) for index in range(plan.reps)
    )

    values = np.array([v for v in results if v is not None])
    failures = plan.reps - len(values)
    if failures:
        logger.warning(f"{failures}/{plan.reps} bootstrap replicates failed and were excluded")
    if len(values) < 2:
        raise BootstrapError(
            f"Only {len(values)} of {plan.reps} bootstrap replicates succeeded"
        )

    return BootstrapResult(
        se=float(np.std(values, ddof=1)),
        values=values,
        failures=failures,
        reps=plan.reps,
    )
