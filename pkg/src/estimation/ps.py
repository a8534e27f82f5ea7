"""Estimators of the probability of sufficient causation (PS, gamma).

The estimated-propensity variants carry plug-in SEs from their influence
values. The known-propensity variants report bootstrap SEs.

Denominators keep their literal sign: mean((1-A)(Y-1)) equals minus the
share of untreated non-cases, and the numerators carry the matching sign.
"""

import logging
from functools import partial
from typing import Optional, Tuple

import numpy as np

from src.data.models import Dataset
from src.errors import DegenerateDenominatorError, WrongVariantError
from src.estimation.bootstrap import BootstrapPlan, bootstrap
from src.estimation.inference import (
    check_aligned,
    estimate_from_influence,
    wald_estimate,
)
from src.estimation.pn import DENOMINATOR_TOL
from src.estimation.types import (
    Assumption,
    Estimand,
    Estimate,
    InfluenceValues,
    Method,
    PropensitySource,
)
from src.nuisance.models import NuisanceFit

logger = logging.getLogger(__name__)


def treated_inverse_odds(a: np.ndarray, e: np.ndarray) -> np.ndarray:
    """(1-e)/e on treated units, 0 on untreated units."""
    with np.errstate(divide="ignore", invalid="ignore"):
        inverse = np.where(a == 1.0, (1.0 - e) / e, 0.0)
    if not np.isfinite(inverse).all():
        raise DegenerateDenominatorError("Propensity of 0 for a treated unit")
    return inverse


def ps_terms(
    d: Dataset, nf: NuisanceFit, assumption: Assumption, known_e: bool = False
) -> Tuple[np.ndarray, float]:
    """Per-unit numerator terms and the mean denominator of a PS estimator."""
    check_aligned(d.n, nf.n)
    if known_e and nf.propensity_source != PropensitySource.KNOWN:
        raise WrongVariantError("Known-propensity estimator needs a Known nuisance fit")

    a, y = d.a, d.y
    e, mu0, mu1 = nf.e_hat, nf.mu0_hat, nf.mu1_hat
    treated_residual = treated_inverse_odds(a, e) * (y - mu1)

    if not known_e:
        if not np.any((a == 0.0) & (y == 0.0)):
            raise DegenerateDenominatorError(
                "No untreated non-cases: the PS denominator is zero"
            )
        if assumption == Assumption.MONOTONICITY:
            num = (1.0 - a) * y - treated_residual + mu1 * (a - 1.0)
            denominator = float(np.mean((1.0 - a) * (y - 1.0)))
        else:
            num = mu1 * (1.0 - y) * (a - 1.0) - treated_residual * (1.0 - mu0)
            denominator = float(np.mean((1.0 - y) * (a - 1.0)))
        return num, denominator

    control_residual = (1.0 - a) * (y - mu0)
    denominator = float(np.mean((1.0 - mu0) * (1.0 - e) - control_residual))
    if abs(denominator) <= DENOMINATOR_TOL:
        raise DegenerateDenominatorError(
            f"Known-propensity PS denominator is {denominator:.3g}"
        )
    if assumption == Assumption.MONOTONICITY:
        num = treated_residual - control_residual + (mu1 - mu0) * (1.0 - e)
    else:
        num = (
            treated_residual * (1.0 - mu0)
            - control_residual * mu1
            + mu1 * (1.0 - mu0) * (1.0 - e)
        )
    return num, denominator


def ps_value(
    d: Dataset, nf: NuisanceFit, assumption: Assumption, known_e: bool = False
) -> float:
    num, denominator = ps_terms(d, nf, assumption, known_e)
    return float(np.mean(num) / denominator)


def ps_influence_values(
    d: Dataset,
    nf: NuisanceFit,
    gamma_hat: float,
    assumption: Assumption,
    known_e: bool = False,
) -> InfluenceValues:
    """Plug-in influence values zeta_i = num_i / D, centred at gamma_hat."""
    num, denominator = ps_terms(d, nf, assumption, known_e)
    return InfluenceValues(values=num / denominator, estimand_at_solution=float(gamma_hat))


def _proposed(d: Dataset, nf: NuisanceFit, assumption: Assumption) -> Estimate:
    num, denominator = ps_terms(d, nf, assumption, known_e=False)
    gamma_hat = float(np.mean(num) / denominator)
    iv = InfluenceValues(values=num / denominator, estimand_at_solution=gamma_hat)
    estimate = estimate_from_influence(
        iv,
        estimand=Estimand.PS,
        method=Method.PROPOSED,
        assumption=assumption,
        propensity_source=nf.propensity_source,
        warnings=nf.warnings,
    )
    if not 0.0 <= gamma_hat <= 1.0:
        logger.warning(f"{estimate.name} estimate {gamma_hat:.4f} lies outside [0, 1]")
    return estimate


def _known_e(
    d: Dataset, nf: NuisanceFit, assumption: Assumption, plan: Optional[BootstrapPlan]
) -> Estimate:
    gamma_hat = ps_value(d, nf, assumption, known_e=True)
    result = bootstrap(d, nf, partial(ps_value, assumption=assumption, known_e=True), plan)
    return wald_estimate(
        value=gamma_hat,
        se=result.se,
        n=d.n,
        estimand=Estimand.PS,
        method=Method.PROPOSED_KNOWN_E,
        assumption=assumption,
        propensity_source=nf.propensity_source,
        warnings=nf.warnings,
        bootstrap_reps=result.reps,
        bootstrap_failures=result.failures,
    )


def ps_mono(d: Dataset, nf: NuisanceFit) -> Estimate:
    """PS under monotonicity with an estimated propensity."""
    return _proposed(d, nf, Assumption.MONOTONICITY)


def ps_inde(d: Dataset, nf: NuisanceFit) -> Estimate:
    """PS under conditional independence of the potential outcomes."""
    return _proposed(d, nf, Assumption.COND_INDEPENDENCE)


def ps_mono_known_e(
    d: Dataset, nf: NuisanceFit, plan: Optional[BootstrapPlan] = None
) -> Estimate:
    return _known_e(d, nf, Assumption.MONOTONICITY, plan)


def ps_inde_known_e(
    d: Dataset, nf: NuisanceFit, plan: Optional[BootstrapPlan] = None
) -> Estimate:
    return _known_e(d, nf, Assumption.COND_INDEPENDENCE, plan)
