"""Data containers shared by ingestion, estimation and simulation."""

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from src.errors import ArgumentError


def _frozen(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Dataset:
    """Observed units (X, A, Y): covariates, binary treatment, binary outcome."""

    x: np.ndarray  # n x p, float64
    a: np.ndarray  # n, 0/1
    y: np.ndarray  # n, 0/1
    column_names: Tuple[str, ...] = ()
    dropped_count: int = 0  # rows removed for missing tokens at ingestion

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        a = np.asarray(self.a, dtype=float).ravel()
        y = np.asarray(self.y, dtype=float).ravel()

        n = x.shape[0]
        if n < 1:
            raise ArgumentError("Dataset needs at least one row")
        if a.shape[0] != n or y.shape[0] != n:
            raise ArgumentError(
                f"Row mismatch: x has {n} rows, a has {a.shape[0]}, y has {y.shape[0]}"
            )
        if not np.isin(a, (0.0, 1.0)).all():
            raise ArgumentError("Treatment a must contain only 0/1 values")
        if not np.isin(y, (0.0, 1.0)).all():
            raise ArgumentError("Outcome y must contain only 0/1 values")
        if not np.isfinite(x).all():
            raise ArgumentError("Covariates x must be finite")

        names = tuple(self.column_names) or tuple(f"x{j + 1}" for j in range(x.shape[1]))
        if len(names) != x.shape[1]:
            raise ArgumentError(
                f"{len(names)} column names given for {x.shape[1]} covariates"
            )

        object.__setattr__(self, "x", _frozen(x, float))
        object.__setattr__(self, "a", _frozen(a, float))
        object.__setattr__(self, "y", _frozen(y, float))
        object.__setattr__(self, "column_names", names)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]

    def column(self, name: str) -> np.ndarray:
        """Covariate column by name."""
        try:
            return self.x[:, self.column_names.index(name)]
        except ValueError:
            raise ArgumentError(f"Unknown covariate column {name!r}")

    def subset(self, rows: Sequence[int]) -> "Dataset":
        """Rows in the given order (repeats allowed, as in a bootstrap resample)."""
        rows = np.asarray(rows, dtype=int)
        return Dataset(
            x=self.x[rows],
            a=self.a[rows],
            y=self.y[rows],
            column_names=self.column_names,
        )


@dataclass(frozen=True)
class PotentialOutcomeSample:
    """Simulated units with both potential outcomes; never observable in real data.

    Stored column-wise: entry i of every array belongs to unit i.
    """

    x: np.ndarray
    a: np.ndarray
    y0: np.ndarray
    y1: np.ndarray

    def __post_init__(self):
        for name in ("x", "a", "y0", "y1"):
            object.__setattr__(self, name, _frozen(getattr(self, name), float))

    @property
    def y(self) -> np.ndarray:
        """Observed outcome under consistency: Y = A*Y1 + (1 - A)*Y0."""
        return self.a * self.y1 + (1.0 - self.a) * self.y0

    @property
    def n(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True)
class MomentFunctionals:
    """Sample analogues of the identifying functionals of PN and PS."""

    mu0: float  # mean of e*mu0
    mu1: float  # mean of e*mu1
    mu: float  # mean of e*mu0*mu1
    bar_mu0: float  # mean of mu0*(1-e)
    bar_mu1: float  # mean of mu1*(1-e)
    bar_mu: float  # mean of mu0*mu1*(1-e)
    barbar_mu0: float  # mean of (1-mu0)*(1-e)
    barbar_mu1: float  # mean of (1-mu1)*(1-e)
    n: int = field(default=0, compare=False)
