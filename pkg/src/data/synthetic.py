"""Synthetic case-control data with the layout of a stroke risk-factor study.

The columns follow the indicator layout of a multinational stroke study so the application
runner can be exercised end to end without the original data. Risk-factor
effects are invented and only meant to give non-trivial estimates.
"""

import logging
from typing import Optional

import numpy as np
import pandas as pd
from scipy.special import expit

from src.errors import ArgumentError
from src.nuisance.streams import SeedKey, Stage, stream

logger = logging.getLogger(__name__)

OUTCOME = "case"
EXPOSURES = ("smoking", "stress", "exercise", "diabetes", "heart_disease", "hypertension")
CONTINUOUS = ("age", "whr")
DISCRETE = (
    "region", "smoking", "stress", "exercise", "diabetes", "heart_disease",
    "hypertension", "sex", "alcohol", "diet", "lipids", "education",
)
COLUMNS = (
    "case", "region", "smoking", "stress", "exercise", "diabetes", "heart_disease",
    "hypertension", "sex", "age", "whr", "alcohol", "diet", "lipids", "education",
)
DEFAULT_ROWS = 13712


def _population(rng: np.random.Generator, size: int) -> pd.DataFrame:
    """Draw covariates and disease status for a source population."""
    region = rng.integers(1, 8, size)
    sex = rng.integers(0, 2, size)
    age = np.clip(rng.normal(62.0, 13.0, size), 18.0, 100.0)
    whr = np.clip(rng.normal(0.93 + 0.04 * sex, 0.08, size), 0.6, 1.4)
    education = rng.integers(1, 5, size)
    alcohol = rng.choice([1, 2, 3], size=size, p=[0.6, 0.3, 0.1])

    age_z = (age - 62.0) / 13.0
    smoking = (rng.random(size) < expit(-1.2 + 0.8 * sex - 0.2 * education + 0.1 * region)).astype(int)
    stress = (rng.random(size) < expit(-1.5 + 0.15 * region - 0.1 * age_z)).astype(int)
    exercise = (rng.random(size) < expit(-1.0 + 0.25 * education - 0.3 * age_z)).astype(int)
    diabetes = (rng.random(size) < expit(-2.0 + 0.6 * age_z + 3.0 * (whr - 0.93))).astype(int)
    hypertension = (rng.random(size) < expit(-0.6 + 0.8 * age_z + 0.5 * diabetes)).astype(int)
    heart_disease = (rng.random(size) < expit(-2.8 + 0.7 * age_z + 0.6 * hypertension)).astype(int)
    diet = (rng.random(size) < expit(0.2 * education - 0.5)).astype(int)
    lipids = (rng.random(size) < expit(-0.8 + 0.3 * diabetes + 0.2 * sex)).astype(int)

    risk = (
        -2.2
        + 0.55 * smoking
        + 0.45 * stress
        - 0.35 * exercise
        + 0.40 * diabetes
        + 0.75 * heart_disease
        + 0.95 * hypertension
        + 0.30 * age_z
        + 2.0 * (whr - 0.93)
        + 0.25 * (alcohol == 3)
        - 0.20 * diet
        + 0.30 * lipids
        + 0.05 * (region - 4)
    )
    case = (rng.random(size) < expit(risk)).astype(int)

    return pd.DataFrame(
        {
            "case": case, "region": region, "smoking": smoking, "stress": stress,
            "exercise": exercise, "diabetes": diabetes, "heart_disease": heart_disease,
            "hypertension": hypertension, "sex": sex, "age": np.round(age, 1),
            "whr": np.round(whr, 3), "alcohol": alcohol, "diet": diet,
            "lipids": lipids, "education": education,
        },
        columns=list(COLUMNS),
    )


def generate_case_control(
    n: int = DEFAULT_ROWS,
    seed: SeedKey = 0,
    missing_rate: float = 0.0,
) -> pd.DataFrame:
    """Balanced case-control sample drawn from a synthetic population.

    Args:
        n: Rows in the output; half cases and half controls (n must be even)
        seed: Stream key
        missing_rate: Share of covariate cells blanked out, to exercise listwise deletion

    Returns:
        DataFrame with the fifteen indicator columns
    """
    if n < 2 or n % 2:
        raise ArgumentError(f"n must be a positive even number, got {n}")
    if not 0.0 <= missing_rate < 1.0:
        raise ArgumentError(f"missing_rate must lie in [0, 1), got {missing_rate}")

    rng = stream(seed, Stage.SYNTHETIC)
    half = n // 2

    population = _population(rng, 6 * n)
    cases = population[population["case"] == 1]
    controls = population[population["case"] == 0]
    if len(cases) < half or len(controls) < half:
        raise ArgumentError("Synthetic population too small for a balanced sample")

    sample = pd.concat(
        [
            cases.iloc[np.sort(rng.choice(len(cases), half, replace=False))],
            controls.iloc[np.sort(rng.choice(len(controls), half, replace=False))],
        ]
    )
    sample = sample.iloc[rng.permutation(n)].reset_index(drop=True)

    if missing_rate > 0.0:
        sample = sample.astype(object)
        covariates = [c for c in COLUMNS if c != OUTCOME]
        mask = rng.random((n, len(covariates))) < missing_rate
        for j, column in enumerate(covariates):
            sample.loc[mask[:, j], column] = None

    logger.info(f"Generated {n} synthetic case-control rows ({half} cases)")
    return sample


def write_case_control(path, n: int = DEFAULT_ROWS, seed: SeedKey = 0, missing_rate: float = 0.0) -> Optional[pd.DataFrame]:
    frame = generate_case_control(n, seed, missing_rate)
    frame.to_csv(path, index=False, na_rep="NA")
    logger.info(f"Synthetic data saved to {path}")
    return frame
