"""Data-generating processes for the simulation study.

Each case draws X ~ N(0, cov_scale * I_p) and sets
P(A=1|X) = expit(propensity(X)), P(Y0=1|X) = expit(mu0(X)) and
P(Y1=1|X) = expit(mu1(X)). Cases with monotonicity_adjust set Y0 to 0
whenever Y1 is 0.

Cases 1-4: both models linear, varying dimension and adjustment.
Cases 5-10 (adjusted) and 11-16 (same designs, unadjusted): a main-effects
logistic fit is wrong for the propensity in 6, 9, 12, 15 and wrong for the
outcomes in 7, 10, 13, 16.
Cases 17-19: wider covariates comparing the proposed estimator with IPW and
outcome regression.
"""

from dataclasses import dataclass, replace
from typing import Callable, Dict

import numpy as np

IndexFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class DgpSpec:
    case_id: int
    p: int
    cov_scale: float
    propensity_fn: IndexFn
    mu0_fn: IndexFn
    mu1_fn: IndexFn
    monotonicity_adjust: bool
    propensity_linear: bool = True  # representable by a main-effects logistic model
    outcome_linear: bool = True
    formulas: str = ""
    note: str = ""
    variant: str = ""  # non-default reading of an ambiguous case

    @property
    def key(self) -> str:
        """Cache key; distinguishes alternative readings of one case."""
        return f"{self.case_id}-{self.variant}" if self.variant else str(self.case_id)


def _sum(x: np.ndarray) -> np.ndarray:
    return x.sum(axis=1)


def _alternating(x: np.ndarray) -> np.ndarray:
    """X1 - X2 + X3 - X4 + X5."""
    signs = np.array([1.0, -1.0, 1.0, -1.0, 1.0])
    return x[:, :5] @ signs


def _log1p_sq(v: np.ndarray) -> np.ndarray:
    return np.log(1.0 + v**2)


def _nonlinear_propensity_2(x):
    return (np.sin(x[:, 0]) + _log1p_sq(x[:, 1])) / 2.0


def _nonlinear_propensity_5(x):
    x1, x2, x3, x4, x5 = x.T
    return (np.sin(x1) + _log1p_sq(x2) + np.sin(x1) * np.cos(x3) + np.exp(x4) + x4 * x5) / 2.0


def _nonlinear_mu0_5(x):
    x1, x2, x3, x4, x5 = x.T
    return (np.sin(x1) - _log1p_sq(x2) + np.sin(x1) * np.cos(x3) - np.exp(x4) + x4 * x5) / 2.0


def _nonlinear_mu1_5(x):
    x1, x2, x3, x4, x5 = x.T
    return (
        0.4 * np.sin(x1)
        + 0.6 * _log1p_sq(x2)
        + 0.4 * np.sin(x1) * np.cos(x3)
        + 0.6 * np.exp(x4)
        + 0.4 * x4 * x5
        + 0.5
    )


def _case18_propensity(x):
    x1, x2, x3, x4, x5 = x.T
    return np.sin(x1) + _log1p_sq(x2) + np.sin(x3) ** 2 + np.cos(x2) * np.sin(x4) + x5


def _case19_mu0(x):
    x1, x2, x3, x4, x5 = x.T
    return (
        np.sin(x1)
        - _log1p_sq(x2)
        + np.sin(x3) ** 2
        - np.log(1.0 + np.abs(x5)) * np.cos(x4)
        + np.sin(x5)
    )


def _case19_mu1(x):
    x1, x2, x3, x4, x5 = x.T
    return (
        np.sin(x1)
        + _log1p_sq(x2)
        + np.sin(x3) ** 2
        + np.log(1.0 + np.abs(x5)) * np.cos(x4)
        + np.sin(x5)
        + 1.0
    )


def _base_cases() -> Dict[int, DgpSpec]:
    """Cases 1-10 and 17-19 as specified; 11-16 are derived from 5-10."""
    linear_mu0_2 = lambda x: (x[:, 0] - x[:, 1]) / 2.0
    linear_mu1_2 = lambda x: 0.4 * x[:, 0] + 0.6 * x[:, 1] + 0.5
    linear_mu1_5 = lambda x: x[:, :5] @ np.array([0.4, 0.6, 0.4, 0.6, 0.4]) + 0.5

    cases = [
        DgpSpec(
            1, 2, 4.0,
            propensity_fn=lambda x: _sum(x) / 8.0,
            mu0_fn=linear_mu0_2,
            mu1_fn=lambda x: (2.0 * x[:, 0] + 3.0 * x[:, 1]) / 3.0 + 0.5,
            monotonicity_adjust=True,
            formulas="e=(X1+X2)/8; mu0=(X1-X2)/2; mu1=(2X1+3X2)/3+1/2",
        ),
        DgpSpec(
            3, 5, 4.0,
            propensity_fn=lambda x: _sum(x) / 8.0,
            mu0_fn=lambda x: _alternating(x) / 2.0,
            mu1_fn=lambda x: x @ np.array([2.0, 3.0, 2.0, 3.0, 2.0]) / 3.0 + 0.5,
            monotonicity_adjust=True,
            formulas="e=sum(X)/8; mu0=(X1-X2+X3-X4+X5)/2; mu1=(2X1+3X2+2X3+3X4+2X5)/3+1/2",
        ),
        DgpSpec(
            5, 2, 1.0,
            propensity_fn=lambda x: _sum(x) / 2.0,
            mu0_fn=linear_mu0_2,
            mu1_fn=linear_mu1_2,
            monotonicity_adjust=True,
            formulas="e=(X1+X2)/2; mu0=(X1-X2)/2; mu1=(2/5)X1+(3/5)X2+1/2",
        ),
        DgpSpec(
            6, 2, 1.0,
            propensity_fn=_nonlinear_propensity_2,
            mu0_fn=linear_mu0_2,
            mu1_fn=linear_mu1_2,
            monotonicity_adjust=True,
            propensity_linear=False,
            formulas="e=(sinX1+log(1+X2^2))/2; mu0=(X1-X2)/2; mu1=(2/5)X1+(3/5)X2+1/2",
        ),
        DgpSpec(
            7, 2, 1.0,
            propensity_fn=lambda x: _sum(x) / 2.0,
            mu0_fn=lambda x: (np.sin(x[:, 0]) - _log1p_sq(x[:, 1])) / 2.0,
            mu1_fn=lambda x: 0.4 * np.sin(x[:, 0]) + 0.6 * _log1p_sq(x[:, 1]) + 0.5,
            monotonicity_adjust=True,
            outcome_linear=False,
            formulas="e=(X1+X2)/2; mu0=(sinX1-log(1+X2^2))/2; mu1=(2/5)sinX1+(3/5)log(1+X2^2)+1/2",
        ),
        DgpSpec(
            8, 5, 1.0,
            propensity_fn=lambda x: _sum(x[:, :5]) / 2.0,
            mu0_fn=linear_mu0_2,
            mu1_fn=linear_mu1_2,
            monotonicity_adjust=True,
            formulas="e=(X1+...+X5)/2; mu0=(X1-X2)/2; mu1=(2/5)X1+(3/5)X2+1/2",
            note=(
                "The design lists X as two-dimensional while the propensity "
                "uses X1..X5; default reading draws five covariates. "
                "get_case(8, variant='two-dim') gives the p=2 reading with e=(X1+X2)/2."
            ),
        ),
        DgpSpec(
            9, 5, 1.0,
            propensity_fn=_nonlinear_propensity_5,
            mu0_fn=lambda x: _alternating(x) / 2.0,
            mu1_fn=linear_mu1_5,
            monotonicity_adjust=True,
            propensity_linear=False,
            formulas=(
                "e=(sinX1+log(1+X2^2)+sinX1cosX3+expX4+X4X5)/2; "
                "mu0=(X1-X2+X3-X4+X5)/2; mu1=(2/5)X1+(3/5)X2+(2/5)X3+(3/5)X4+(2/5)X5+1/2"
            ),
        ),
        DgpSpec(
            10, 5, 1.0,
            propensity_fn=lambda x: _sum(x) / 2.0,
            mu0_fn=_nonlinear_mu0_5,
            mu1_fn=_nonlinear_mu1_5,
            monotonicity_adjust=True,
            outcome_linear=False,
            formulas=(
                "e=sum(X)/2; mu0=(sinX1-log(1+X2^2)+sinX1cosX3-expX4+X4X5)/2; "
                "mu1=(2/5)sinX1+(3/5)log(1+X2^2)+(2/5)sinX1cosX3+(3/5)expX4+(2/5)X4X5+1/2"
            ),
        ),
        DgpSpec(
            17, 5, 4.0,
            propensity_fn=lambda x: _sum(x) / 2.0,
            mu0_fn=lambda x: _alternating(x) / 5.0,
            mu1_fn=lambda x: x @ np.array([1.0, 2.0, 1.0, 2.0, 1.0]) / 5.0 + 0.5,
            monotonicity_adjust=True,
            formulas="e=sum(X)/2; mu0=(X1-X2+X3-X4+X5)/5; mu1=(X1+2X2+X3+2X4+X5)/5+1/2",
        ),
        DgpSpec(
            18, 5, 9.0,
            propensity_fn=_case18_propensity,
            mu0_fn=lambda x: _alternating(x) / 5.0,
            mu1_fn=lambda x: _sum(x) / 5.0 + 0.5,
            monotonicity_adjust=True,
            propensity_linear=False,
            formulas=(
                "e=sinX1+log(1+X2^2)+sin^2X3+cosX2 sinX4+X5; "
                "mu0=(X1-X2+X3-X4+X5)/5; mu1=sum(X)/5+1/2"
            ),
        ),
        DgpSpec(
            19, 5, 9.0,
            propensity_fn=lambda x: _sum(x) / 2.0,
            mu0_fn=_case19_mu0,
            mu1_fn=_case19_mu1,
            monotonicity_adjust=True,
            outcome_linear=False,
            formulas=(
                "e=sum(X)/2; mu0=sinX1-log(1+X2^2)+sin^2X3-log(1+|X5|)cosX4+sinX5; "
                "mu1=sinX1+log(1+X2^2)+sin^2X3+log(1+|X5|)cosX4+sinX5+1"
            ),
        ),
    ]
    registry = {spec.case_id: spec for spec in cases}

    # Unadjusted twins: 2 of 1, 4 of 3, and 11-16 of 5-10
    for source, target in ((1, 2), (3, 4), *((c, c + 6) for c in range(5, 11))):
        registry[target] = replace(
            registry[source], case_id=target, monotonicity_adjust=False
        )

    return dict(sorted(registry.items()))


CASES: Dict[int, DgpSpec] = _base_cases()

# Outside the standard grid; used to check the truth oracle
EXTENSION_CASES: Dict[int, DgpSpec] = {
    101: replace(
        CASES[1],
        case_id=101,
        mu0_fn=lambda x: np.full(x.shape[0], -20.0),
        formulas="as case 1 with mu0 index -20 (necessity forced)",
    ),
}

CASE_VARIANTS: Dict[tuple, DgpSpec] = {
    (8, "two-dim"): replace(
        CASES[8],
        p=2,
        propensity_fn=lambda x: _sum(x) / 2.0,
        formulas="e=(X1+X2)/2; mu0=(X1-X2)/2; mu1=(2/5)X1+(3/5)X2+1/2",
        variant="two-dim",
    ),
}
