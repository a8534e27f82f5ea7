"""Estimand, method and result types shared by every estimator."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np


# 97.5% standard normal quantile for Wald intervals
Z_975 = 1.959963984540054


class Estimand(Enum):
    """Probability of causation being estimated."""

    PN = "pn"  # necessity, beta
    PS = "ps"  # sufficiency, gamma


class Assumption(Enum):
    """Identifying assumption on the joint law of the potential outcomes."""

    MONOTONICITY = "mono"
    COND_INDEPENDENCE = "inde"


class Method(Enum):
    """Estimation strategy."""

    PROPOSED = "proposed"
    PROPOSED_KNOWN_E = "proposed-known-e"
    IPW = "ipw"
    OR = "or"
    PLUGIN = "plugin"


class PropensitySource(Enum):
    ESTIMATED = "estimated"
    KNOWN = "known"


class Flag(Enum):
    """Diagnostic flags attached to fits and estimates."""

    OUTSIDE_UNIT_INTERVAL = "outside-unit-interval"
    ARM_FALLBACK = "arm-fallback"
    SEPARATION = "separation"
    CONSTANT_TARGET = "constant-target"
    BOOTSTRAP_FAILURES = "bootstrap-failures"


@dataclass(frozen=True)
class InfluenceValues:
    """Per-unit plug-in influence values and the estimate they are centred at."""

    values: np.ndarray
    estimand_at_solution: float

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def sigma(self) -> float:
        """Root mean square of the centred values (the sqrt(n)-scale SE)."""
        return float(np.sqrt(np.mean((self.values - self.estimand_at_solution) ** 2)))

    @property
    def se(self) -> float:
        return self.sigma / np.sqrt(self.n)


@dataclass(frozen=True)
class Estimate:
    """Point estimate with Wald interval and two-sided test of a zero estimand."""

    value: float
    se: float
    ci_low: float
    ci_high: float
    p_value: float
    n: int
    estimand: Estimand
    method: Method
    assumption: Assumption
    propensity_source: PropensitySource
    warnings: Tuple[Flag, ...] = ()
    bootstrap_reps: Optional[int] = None  # set when se comes from the bootstrap
    bootstrap_failures: int = 0
    seed: Optional[int] = field(default=None, compare=False)

    @property
    def name(self) -> str:
        """Catalog name such as pn_mono or ps_inde_known_e."""
        if self.method in (Method.PROPOSED, Method.PROPOSED_KNOWN_E):
            suffix = "_known_e" if self.method == Method.PROPOSED_KNOWN_E else ""
            return f"{self.estimand.value}_{self.assumption.value}{suffix}"
        if self.method == Method.PLUGIN:
            return f"{self.estimand.value}_plugin_{self.assumption.value}"
        return f"{self.estimand.value}_{self.method.value}"
