"""Empirical efficiency bounds for PN and the closed-form gaps between them.

Each bound is the sample mean of a squared influence function. The
monotonicity functions are centred at the monotonicity estimate and the
independence functions at the independence estimate. All four share one
plug-in for the functional E[e(X)mu1(X)], mean(A*Y) by default.

The assumption gap compares the two unknown-propensity bounds at a common
beta; with that centring it equals their difference exactly in-sample.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Dict, Optional

import numpy as np

from src.data.functionals import moment_functionals
from src.data.models import Dataset
from src.errors import NoTreatedCasesError
from src.estimation.inference import check_aligned
from src.estimation.pn import control_odds, pn_value
from src.estimation.types import Assumption
from src.nuisance.models import NuisanceFit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EfficiencyReport:
    bound_mono_unknown: float
    bound_inde_unknown: float
    bound_mono_known: float
    bound_inde_known: float
    gap_assumption: float  # common-beta difference of the unknown-propensity bounds
    gap_known_e_mono: float  # bound_mono_unknown - bound_mono_known, closed form
    gap_known_e_inde: float  # same under conditional independence
    beta_mono: float
    beta_inde: float
    mu1_functional: float
    n: int

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def _mu1_functional(d: Dataset, mu1_functional: Optional[float]) -> float:
    value = float(np.mean(d.a * d.y)) if mu1_functional is None else float(mu1_functional)
    if value == 0.0:
        raise NoTreatedCasesError("No treated cases: mean(A * Y) is zero")
    return value


def influence_functions(
    d: Dataset,
    nf: NuisanceFit,
    beta_mono: float,
    beta_inde: Optional[float] = None,
    mu1_functional: Optional[float] = None,
) -> Dict[str, np.ndarray]:
    """Per-unit efficient influence functions of PN.

    Args:
        d: Observed data
        nf: Nuisance predictions
        beta_mono: Centring value of the monotonicity functions
        beta_inde: Centring value of the independence functions; beta_mono when None
        mu1_functional: Plug-in for E[e(X)mu1(X)]; mean(A*Y) when None

    Returns:
        Arrays keyed mono_unknown, inde_unknown, mono_known, inde_known
    """
    check_aligned(d.n, nf.n)
    a, y = d.a, d.y
    e, mu0, mu1 = nf.e_hat, nf.mu0_hat, nf.mu1_hat
    m = _mu1_functional(d, mu1_functional)
    beta_inde = beta_mono if beta_inde is None else beta_inde

    control = control_odds(a, e) * (y - mu0)
    s_mono = 1.0 - beta_mono
    s_inde = 1.0 - beta_inde

    return {
        "mono_unknown": (s_mono * a * y - control - mu0 * a) / m,
        "inde_unknown": ((s_inde - mu0) * a * y - control * mu1) / m,
        "mono_known": (
            s_mono * a * (y - mu1) - control + s_mono * mu1 * e - mu0 * e
        ) / m,
        "inde_known": (
            (s_inde - mu0) * a * (y - mu1) - control * mu1 + (s_inde - mu0) * mu1 * e
        ) / m,
    }


def assumption_gap(
    d: Dataset, nf: NuisanceFit, mu1_functional: Optional[float] = None
) -> float:
    """Excess variance of the monotonicity bound over the independence bound."""
    a, y = d.a, d.y
    e, mu0, mu1 = nf.e_hat, nf.mu0_hat, nf.mu1_hat
    mu1_sq = _mu1_functional(d, mu1_functional) ** 2
    odds = control_odds(a, e)

    treated = a * mu0**2 * (1.0 - y**2) / mu1_sq
    untreated = (1.0 - a) * odds**2 * (y - mu0) ** 2 * (1.0 - mu1**2) / mu1_sq
    return float(np.mean(treated + untreated))


def known_propensity_gaps(
    nf: NuisanceFit, mu1_functional: Optional[float] = None
) -> Dict[str, float]:
    """Reduction of each PN bound when e(X) is known; both carry e(1-e).

    The squared terms use the moment functionals of nf. The outer
    normalisation uses mu1_functional when given, so the gaps share the
    plug-in of the bounds they compare.
    """
    m = moment_functionals(nf)
    e, mu0, mu1 = nf.e_hat, nf.mu0_hat, nf.mu1_hat
    spread = e * (1.0 - e)
    if m.mu1 == 0.0:
        raise NoTreatedCasesError("mean(e * mu1) is zero")
    outer = m.mu1 if mu1_functional is None else float(mu1_functional)
    denominator = m.mu1**2 * outer**2

    mono = np.mean((m.mu0 * mu1 - m.mu1 * mu0) ** 2 * spread) / denominator
    inde = np.mean((m.mu * mu1 - m.mu1 * mu1 * mu0) ** 2 * spread) / denominator
    return {"mono": float(mono), "inde": float(inde)}


def efficiency_report(d: Dataset, nf: NuisanceFit) -> EfficiencyReport:
    """Empirical V(phi) for the four PN influence functions plus the gaps.

    Args:
        d: Observed data
        nf: Nuisance predictions (oracle or cross-fitted)

    Returns:
        EfficiencyReport
    """
    beta_mono = pn_value(d, nf, Assumption.MONOTONICITY)
    beta_inde = pn_value(d, nf, Assumption.COND_INDEPENDENCE)
    m = _mu1_functional(d, None)

    phis = influence_functions(d, nf, beta_mono, beta_inde, mu1_functional=m)
    bounds = {name: float(np.mean(phi**2)) for name, phi in phis.items()}
    gaps = known_propensity_gaps(nf, mu1_functional=m)

    report = EfficiencyReport(
        bound_mono_unknown=bounds["mono_unknown"],
        bound_inde_unknown=bounds["inde_unknown"],
        bound_mono_known=bounds["mono_known"],
        bound_inde_known=bounds["inde_known"],
        gap_assumption=assumption_gap(d, nf, mu1_functional=m),
        gap_known_e_mono=gaps["mono"],
        gap_known_e_inde=gaps["inde"],
        beta_mono=float(beta_mono),
        beta_inde=float(beta_inde),
        mu1_functional=m,
        n=d.n,
    )
    logger.debug(f"Efficiency report: {report}")
    return report
