"""Builders for small datasets and nuisance tables."""

from pathlib import Path

import numpy as np

from src.data.models import Dataset
from src.estimation.types import PropensitySource
from src.nuisance.models import NuisanceFit

DATA_DIR = Path(__file__).parent / "data"


def make_fit(e, mu0, mu1, known: bool = False) -> NuisanceFit:
    """Nuisance table from per-unit arrays or scalars broadcast to the array length."""
    n = max(np.size(v) for v in (e, mu0, mu1))
    return NuisanceFit(
        e_hat=np.broadcast_to(np.asarray(e, dtype=float), (n,)),
        mu0_hat=np.broadcast_to(np.asarray(mu0, dtype=float), (n,)),
        mu1_hat=np.broadcast_to(np.asarray(mu1, dtype=float), (n,)),
        propensity_source=PropensitySource.KNOWN if known else PropensitySource.ESTIMATED,
    )


def make_dataset(a, y, x=None) -> Dataset:
    a = np.asarray(a, dtype=float)
    if x is None:
        x = np.zeros((len(a), 1))
    return Dataset(x=x, a=a, y=np.asarray(y, dtype=float))


def random_table(seed: int, n: int, treated_case: bool = True, untreated_noncase: bool = True):
    """Random (Dataset, NuisanceFit) pair with propensities inside (0.05, 0.95).

    The first unit is a treated case and the last an untreated non-case when
    requested, so every ratio estimator has a non-zero denominator.
    """
    rng = np.random.default_rng(seed)
    a = (rng.random(n) < 0.5).astype(float)
    y = (rng.random(n) < 0.5).astype(float)
    if treated_case:
        a[0], y[0] = 1.0, 1.0
    if untreated_noncase:
        a[-1], y[-1] = 0.0, 0.0
    d = Dataset(x=rng.normal(size=(n, 2)), a=a, y=y)
    nf = make_fit(
        rng.uniform(0.05, 0.95, n),
        rng.uniform(0.0, 1.0, n),
        rng.uniform(0.0, 1.0, n),
    )
    return d, nf
