"""Efficient estimators of the probability of necessary causation (PN, beta).

Each estimator is a ratio mean(num_i) / D. The per-unit influence values
are num_i / D, so their mean is the estimate itself and the plug-in
variance is the mean squared deviation of those values from it.
"""

import logging
from typing import Tuple

import numpy as np

from src.data.models import Dataset
from src.errors import (
    DegenerateDenominatorError,
    NoTreatedCasesError,
    WrongVariantError,
)
from src.estimation.inference import check_aligned, estimate_from_influence
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

DENOMINATOR_TOL = 1e-12


def control_odds(a: np.ndarray, e: np.ndarray) -> np.ndarray:
    """e/(1-e) on untreated units, 0 on treated units."""
    with np.errstate(divide="ignore", invalid="ignore"):
        odds = np.where(a == 0.0, e / (1.0 - e), 0.0)
    if not np.isfinite(odds).all():
        raise DegenerateDenominatorError("Propensity of 1 for an untreated unit")
    return odds


def pn_terms(
    d: Dataset, nf: NuisanceFit, assumption: Assumption, known_e: bool = False
) -> Tuple[np.ndarray, float]:
    """Per-unit numerator terms and the mean denominator of a PN estimator."""
    check_aligned(d.n, nf.n)
    if known_e and nf.propensity_source != PropensitySource.KNOWN:
        raise WrongVariantError("Known-propensity estimator needs a Known nuisance fit")

    a, y = d.a, d.y
    e, mu0, mu1 = nf.e_hat, nf.mu0_hat, nf.mu1_hat
    odds = control_odds(a, e)
    control_residual = (1.0 - a) * (y - mu0) * odds

    if not known_e:
        denominator = float(np.mean(a * y))
        if denominator == 0.0:
            raise NoTreatedCasesError(
                "No treated cases: the denominator of the ratio estimator is zero"
            )
        if assumption == Assumption.MONOTONICITY:
            num = a * (y - mu0) - control_residual
        else:
            num = a * (1.0 - mu0) * y - control_residual * mu1
        return num, denominator

    denominator = float(np.mean(a * (y - mu1) + mu1 * e))
    if abs(denominator) <= DENOMINATOR_TOL:
        raise DegenerateDenominatorError(
            f"Known-propensity PN denominator is {denominator:.3g}"
        )
    if assumption == Assumption.MONOTONICITY:
        num = a * (y - mu1) - control_residual + (mu1 - mu0) * e
    else:
        num = (1.0 - mu0) * a * (y - mu1) + (1.0 - mu0) * mu1 * e - control_residual * mu1
    return num, denominator


def pn_value(
    d: Dataset, nf: NuisanceFit, assumption: Assumption, known_e: bool = False
) -> float:
    num, denominator = pn_terms(d, nf, assumption, known_e)
    return float(np.mean(num) / denominator)


def pn_influence_values(
    d: Dataset,
    nf: NuisanceFit,
    beta_hat: float,
    assumption: Assumption,
    known_e: bool = False,
) -> InfluenceValues:
    """Plug-in influence values zeta_i = num_i / D, centred at beta_hat.

    Functionals of the population law are replaced by the same sample
    quantities the matching estimator uses, so mean(zeta) equals that
    estimator's value exactly.
    """
    num, denominator = pn_terms(d, nf, assumption, known_e)
    return InfluenceValues(values=num / denominator, estimand_at_solution=float(beta_hat))


def _proposed(d: Dataset, nf: NuisanceFit, assumption: Assumption, known_e: bool) -> Estimate:
    num, denominator = pn_terms(d, nf, assumption, known_e)
    beta_hat = float(np.mean(num) / denominator)
    iv = InfluenceValues(values=num / denominator, estimand_at_solution=beta_hat)
    estimate = estimate_from_influence(
        iv,
        estimand=Estimand.PN,
        method=Method.PROPOSED_KNOWN_E if known_e else Method.PROPOSED,
        assumption=assumption,
        propensity_source=nf.propensity_source,
        warnings=nf.warnings,
    )
    if not 0.0 <= beta_hat <= 1.0:
        logger.warning(f"{estimate.name} estimate {beta_hat:.4f} lies outside [0, 1]")
    return estimate


def pn_mono(d: Dataset, nf: NuisanceFit) -> Estimate:
    """PN under monotonicity with an estimated propensity."""
    return _proposed(d, nf, Assumption.MONOTONICITY, known_e=False)


def pn_inde(d: Dataset, nf: NuisanceFit) -> Estimate:
    """PN under conditional independence of the potential outcomes."""
    return _proposed(d, nf, Assumption.COND_INDEPENDENCE, known_e=False)


def pn_mono_known_e(d: Dataset, nf: NuisanceFit) -> Estimate:
    return _proposed(d, nf, Assumption.MONOTONICITY, known_e=True)


def pn_inde_known_e(d: Dataset, nf: NuisanceFit) -> Estimate:
    return _proposed(d, nf, Assumption.COND_INDEPENDENCE, known_e=True)
