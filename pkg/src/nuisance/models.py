"""Fitted nuisance models and the cross-fitted prediction table."""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.special import expit

from src.data.models import _frozen
from src.errors import ArgumentError
from src.estimation.types import Flag, PropensitySource


class NuisanceModel(Enum):
    """Learner used for e(X), mu0(X) and mu1(X)."""

    LOGISTIC = "logistic"
    LASSO = "lasso"


@dataclass(frozen=True)
class LogisticModel:
    """Main-effects logistic regression fitted by IRLS."""

    coefficients: np.ndarray  # length p + 1, intercept first
    converged: bool
    iterations: int
    final_log_likelihood: float  # penalized

    def linear_predictor(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(len(x), -1)
        return self.coefficients[0] + x @ self.coefficients[1:]

    def predict(self, x: np.ndarray) -> np.ndarray:
        return expit(self.linear_predictor(x))


@dataclass(frozen=True)
class LassoLogisticModel:
    """L1-penalized logistic regression with the penalty chosen by CV."""

    coefficients: np.ndarray  # original scale, intercept first and unpenalized
    lam: float
    cv_curve: List[Tuple[float, float]] = field(default_factory=list)  # (lambda, mean deviance)
    scales: Optional[np.ndarray] = None  # column standard deviations used for standardizing
    dropped_columns: Tuple[int, ...] = ()  # constant columns, coefficient fixed at 0

    def predict(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(len(x), -1)
        return expit(self.coefficients[0] + x @ self.coefficients[1:])


@dataclass(frozen=True)
class ConstantModel:
    """Predicts a fixed probability; used when a training target is constant."""

    probability: float

    def predict(self, x: np.ndarray) -> np.ndarray:
        return np.full(len(x), self.probability)


@dataclass(frozen=True)
class NuisanceFit:
    """Per-unit predictions of e(X), mu0(X), mu1(X)."""

    e_hat: np.ndarray
    mu0_hat: np.ndarray
    mu1_hat: np.ndarray
    propensity_source: PropensitySource = PropensitySource.ESTIMATED
    fold_id: Optional[np.ndarray] = None  # None for oracle tables
    warnings: Tuple[Flag, ...] = ()

    def __post_init__(self):
        n = len(self.e_hat)
        for name in ("e_hat", "mu0_hat", "mu1_hat"):
            values = np.asarray(getattr(self, name), dtype=float).ravel()
            if values.shape[0] != n:
                raise ArgumentError(f"{name} has {values.shape[0]} entries, expected {n}")
            if not np.isfinite(values).all():
                raise ArgumentError(f"{name} contains non-finite values")
            if values.min() < 0.0 or values.max() > 1.0:
                raise ArgumentError(f"{name} must lie in [0, 1]")
            object.__setattr__(self, name, _frozen(values, float))

        if self.propensity_source == PropensitySource.KNOWN:
            if self.e_hat.min() <= 0.0 or self.e_hat.max() >= 1.0:
                raise ArgumentError("Known propensities must lie strictly inside (0, 1)")

        if self.fold_id is None:
            object.__setattr__(self, "fold_id", _frozen(np.zeros(n, dtype=int), int))
        else:
            object.__setattr__(self, "fold_id", _frozen(self.fold_id, int))
        object.__setattr__(self, "warnings", tuple(self.warnings))

    @property
    def n(self) -> int:
        return self.e_hat.shape[0]

    def subset(self, rows: Sequence[int]) -> "NuisanceFit":
        rows = np.asarray(rows, dtype=int)
        return NuisanceFit(
            e_hat=self.e_hat[rows],
            mu0_hat=self.mu0_hat[rows],
            mu1_hat=self.mu1_hat[rows],
            propensity_source=self.propensity_source,
            fold_id=self.fold_id[rows],
            warnings=self.warnings,
        )

    def to_frame(self) -> pd.DataFrame:
        """Audit table with one row per unit."""
        return pd.DataFrame(
            {
                "unit_id": np.arange(self.n),
                "fold_id": self.fold_id,
                "e_hat": self.e_hat,
                "mu0_hat": self.mu0_hat,
                "mu1_hat": self.mu1_hat,
            }
        )
