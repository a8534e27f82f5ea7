"""Draws from a registered case and the Monte-Carlo truth oracle."""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import expit

from src.config import config
from src.data.models import Dataset, PotentialOutcomeSample
from src.errors import ArgumentError, DegenerateTruthError
from src.estimation.types import Estimand, PropensitySource
from src.nuisance.models import NuisanceFit
from src.nuisance.streams import SeedKey, Stage, stream
from src.simulation.cases import DgpSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimulationDraw:
    """Observable data plus everything only the simulator knows."""

    dataset: Dataset
    potential: PotentialOutcomeSample
    e: np.ndarray  # true P(A=1|X)
    mu0: np.ndarray  # true P(Y=1|X, A=0) after any monotonicity adjustment
    mu1: np.ndarray  # true P(Y=1|X, A=1)

    def oracle_fit(self, known: bool = False) -> NuisanceFit:
        """Nuisance table holding the generating functions."""
        return NuisanceFit(
            e_hat=self.e,
            mu0_hat=self.mu0,
            mu1_hat=self.mu1,
            propensity_source=PropensitySource.KNOWN if known else PropensitySource.ESTIMATED,
        )


def generate_case(
    spec: DgpSpec, n: int, seed: SeedKey, stage: Stage = Stage.DATA
) -> SimulationDraw:
    """Draw n units from a case.

    Args:
        spec: Registered case
        n: Number of units
        seed: Stream key, e.g. (seed, case, n, replication)
        stage: Stream stage; the truth oracle draws from its own stage

    Returns:
        SimulationDraw
    """
    if n < 1:
        raise ArgumentError(f"n must be >= 1, got {n}")

    rng = stream(seed, stage)
    x = rng.normal(0.0, np.sqrt(spec.cov_scale), size=(n, spec.p))

    e = expit(spec.propensity_fn(x))
    p0 = expit(spec.mu0_fn(x))
    p1 = expit(spec.mu1_fn(x))

    a = (rng.random(n) < e).astype(float)
    y0 = (rng.random(n) < p0).astype(float)
    y1 = (rng.random(n) < p1).astype(float)

    if spec.monotonicity_adjust:
        y0 = np.where(y1 == 0.0, 0.0, y0)
        # Y0 and Y1 are drawn independently, so the adjusted Y0 has mean p0 * p1
        mu0 = p0 * p1
    else:
        mu0 = p0

    potential = PotentialOutcomeSample(x=x, a=a, y0=y0, y1=y1)
    dataset = Dataset(x=x, a=a, y=potential.y)
    return SimulationDraw(dataset=dataset, potential=potential, e=e, mu0=mu0, mu1=p1)


def true_value(
    spec: DgpSpec,
    estimand: Estimand,
    samples: Optional[int] = None,
    seed: Optional[SeedKey] = None,
) -> float:
    """Conditional frequency of the estimand over a large potential-outcome draw.

    PN: share of Y0=0 among units with A=1, Y1=1.
    PS: share of Y1=1 among units with A=0, Y0=0.
    """
    samples = config.truth_samples if samples is None else samples
    seed = config.seed if seed is None else seed

    draw = generate_case(spec, samples, seed, stage=Stage.TRUTH)
    po = draw.potential

    if estimand == Estimand.PN:
        condition = (po.a == 1.0) & (po.y1 == 1.0)
        event = po.y0 == 0.0
    else:
        condition = (po.a == 0.0) & (po.y0 == 0.0)
        event = po.y1 == 1.0

    count = int(condition.sum())
    if count == 0:
        raise DegenerateTruthError(
            f"Case {spec.key}: no units in the conditioning set for {estimand.value}"
        )

    value = float(np.sum(event & condition) / count)
    logger.info(
        f"True {estimand.value} for case {spec.key}: {value:.6f} "
        f"({count} conditioning units of {samples})"
    )
    return value
