"""Wald intervals, p-values and Estimate construction."""

from typing import Optional, Sequence

import numpy as np
from scipy.stats import norm

from src.errors import ArgumentError
from src.estimation.types import (
    Assumption,
    Estimand,
    Estimate,
    Flag,
    InfluenceValues,
    Method,
    PropensitySource,
    Z_975,
)


def two_sided_p_value(value: float, se: float) -> float:
    """P-value of H0: estimand = 0 against a two-sided alternative.

    Equals 2 * (1 - Phi(|value| * sqrt(n) / sigma)) with se = sigma / sqrt(n).
    """
    if se == 0.0:
        return 1.0 if value == 0.0 else 0.0
    return float(2.0 * norm.sf(abs(value) / se))


def wald_estimate(
    value: float,
    se: float,
    n: int,
    estimand: Estimand,
    method: Method,
    assumption: Assumption,
    propensity_source: PropensitySource,
    warnings: Sequence[Flag] = (),
    bootstrap_reps: Optional[int] = None,
    bootstrap_failures: int = 0,
) -> Estimate:
    """Build an Estimate with a 95% Wald interval and a two-sided p-value.

    Args:
        value: Point estimate
        se: Standard error on the estimate's own scale
        n: Number of units used
        estimand: PN or PS
        method: Estimation strategy
        assumption: Identifying assumption
        propensity_source: Whether e(X) was estimated or supplied
        warnings: Flags carried over from the nuisance fit
        bootstrap_reps: Replicates behind a bootstrap SE, if any
        bootstrap_failures: Replicates that failed and were excluded

    Returns:
        Estimate; OUTSIDE_UNIT_INTERVAL is added when value is not in [0, 1]
    """
    if not np.isfinite(value) or not np.isfinite(se) or se < 0:
        raise ArgumentError(f"Estimate needs finite value and se >= 0, got {value}, {se}")

    flags = list(dict.fromkeys(warnings))
    if not 0.0 <= value <= 1.0 and Flag.OUTSIDE_UNIT_INTERVAL not in flags:
        flags.append(Flag.OUTSIDE_UNIT_INTERVAL)
    if bootstrap_failures and Flag.BOOTSTRAP_FAILURES not in flags:
        flags.append(Flag.BOOTSTRAP_FAILURES)

    return Estimate(
        value=float(value),
        se=float(se),
        ci_low=float(value - Z_975 * se),
        ci_high=float(value + Z_975 * se),
        p_value=two_sided_p_value(value, se),
        n=int(n),
        estimand=estimand,
        method=method,
        assumption=assumption,
        propensity_source=propensity_source,
        warnings=tuple(flags),
        bootstrap_reps=bootstrap_reps,
        bootstrap_failures=bootstrap_failures,
    )


def estimate_from_influence(
    iv: InfluenceValues,
    estimand: Estimand,
    method: Method,
    assumption: Assumption,
    propensity_source: PropensitySource,
    warnings: Sequence[Flag] = (),
) -> Estimate:
    """Estimate whose SE is the plug-in sigma / sqrt(n) of the influence values."""
    return wald_estimate(
        value=iv.estimand_at_solution,
        se=iv.se,
        n=iv.n,
        estimand=estimand,
        method=method,
        assumption=assumption,
        propensity_source=propensity_source,
        warnings=warnings,
    )


def covers(estimate: Estimate, truth: float) -> bool:
    """Whether the Wald interval contains the true value."""
    return estimate.ci_low <= truth <= estimate.ci_high


def check_aligned(n_units: int, nf_units: int):
    """Nuisance predictions must cover exactly the units of the dataset."""
    if n_units != nf_units:
        raise ArgumentError(
            f"Nuisance fit covers {nf_units} units but the dataset has {n_units}"
        )
