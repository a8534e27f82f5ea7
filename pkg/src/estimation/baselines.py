"""Comparison estimators: IPW and outcome regression for PN, and the
identification plug-ins for PN and PS. All report bootstrap SEs."""

import logging
from functools import partial
from typing import Callable, Optional

import numpy as np

from src.data.functionals import moment_functionals
from src.data.models import Dataset
from src.errors import DegenerateDenominatorError, NoTreatedCasesError
from src.estimation.bootstrap import BootstrapPlan, bootstrap
from src.estimation.inference import check_aligned, wald_estimate
from src.estimation.pn import control_odds
from src.estimation.types import Assumption, Estimand, Estimate, Method
from src.nuisance.models import NuisanceFit

logger = logging.getLogger(__name__)


def pn_ipw_value(d: Dataset, nf: NuisanceFit) -> float:
    """1 - sum(e(1-A)Y/(1-e)) / sum(AY)."""
    check_aligned(d.n, nf.n)
    treated_cases = float(np.sum(d.a * d.y))
    if treated_cases == 0.0:
        raise NoTreatedCasesError("No treated cases: the IPW denominator is zero")
    weighted_controls = float(np.sum(control_odds(d.a, nf.e_hat) * d.y))
    return 1.0 - weighted_controls / treated_cases


def pn_or_value(d: Dataset, nf: NuisanceFit) -> float:
    """1 - sum(A mu0) / sum(A mu1)."""
    check_aligned(d.n, nf.n)
    denominator = float(np.sum(d.a * nf.mu1_hat))
    if denominator == 0.0:
        raise DegenerateDenominatorError("sum(A * mu1) is zero in the OR estimator")
    return 1.0 - float(np.sum(d.a * nf.mu0_hat)) / denominator


def pn_plugin_value(d: Dataset, nf: NuisanceFit, assumption: Assumption) -> float:
    """1 - mu0/mu1 under monotonicity, 1 - mu/mu1 under independence."""
    check_aligned(d.n, nf.n)
    m = moment_functionals(nf)
    if m.mu1 == 0.0:
        raise DegenerateDenominatorError("mean(e * mu1) is zero")
    numerator = m.mu0 if assumption == Assumption.MONOTONICITY else m.mu
    return 1.0 - numerator / m.mu1


def ps_plugin_value(d: Dataset, nf: NuisanceFit, assumption: Assumption) -> float:
    """(bar_mu1 - bar_mu0)/barbar_mu0, or (bar_mu1 - bar_mu)/barbar_mu0."""
    check_aligned(d.n, nf.n)
    m = moment_functionals(nf)
    if m.barbar_mu0 == 0.0:
        raise DegenerateDenominatorError("mean((1 - mu0) * (1 - e)) is zero")
    subtracted = m.bar_mu0 if assumption == Assumption.MONOTONICITY else m.bar_mu
    return (m.bar_mu1 - subtracted) / m.barbar_mu0


def _bootstrapped(
    d: Dataset,
    nf: NuisanceFit,
    statistic: Callable[[Dataset, NuisanceFit], float],
    estimand: Estimand,
    method: Method,
    assumption: Assumption,
    plan: Optional[BootstrapPlan],
) -> Estimate:
    value = statistic(d, nf)
    result = bootstrap(d, nf, statistic, plan)
    return wald_estimate(
        value=value,
        se=result.se,
        n=d.n,
        estimand=estimand,
        method=method,
        assumption=assumption,
        propensity_source=nf.propensity_source,
        warnings=nf.warnings,
        bootstrap_reps=result.reps,
        bootstrap_failures=result.failures,
    )


def pn_ipw(d: Dataset, nf: NuisanceFit, plan: Optional[BootstrapPlan] = None) -> Estimate:
    return _bootstrapped(
        d, nf, pn_ipw_value, Estimand.PN, Method.IPW, Assumption.MONOTONICITY, plan
    )


def pn_or(d: Dataset, nf: NuisanceFit, plan: Optional[BootstrapPlan] = None) -> Estimate:
    return _bootstrapped(
        d, nf, pn_or_value, Estimand.PN, Method.OR, Assumption.MONOTONICITY, plan
    )


def pn_plugin(
    d: Dataset,
    nf: NuisanceFit,
    assumption: Assumption,
    plan: Optional[BootstrapPlan] = None,
) -> Estimate:
    statistic = partial(pn_plugin_value, assumption=assumption)
    return _bootstrapped(d, nf, statistic, Estimand.PN, Method.PLUGIN, assumption, plan)


def ps_plugin(
    d: Dataset,
    nf: NuisanceFit,
    assumption: Assumption,
    plan: Optional[BootstrapPlan] = None,
) -> Estimate:
    statistic = partial(ps_plugin_value, assumption=assumption)
    return _bootstrapped(d, nf, statistic, Estimand.PS, Method.PLUGIN, assumption, plan)
