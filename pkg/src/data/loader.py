"""CSV ingestion, export and covariate expansion."""

import logging
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.data.models import Dataset
from src.errors import ArgumentError, EmptyInputError, ParseError, SchemaError

logger = logging.getLogger(__name__)

MISSING_TOKENS = ("", "NA")
BINARY_TOKENS = {"0": 0.0, "1": 1.0}


def read_table(path: Union[str, Path]) -> pd.DataFrame:
    """Read a CSV file as raw string tokens with missing values as NaN.

    Args:
        path: CSV file with a header row

    Returns:
        DataFrame of stripped string tokens
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise EmptyInputError(f"{path} is empty")

    if frame.empty:
        raise EmptyInputError(f"{path} has a header but no data rows")

    frame = frame.apply(lambda column: column.str.strip())
    return frame.replace(list(MISSING_TOKENS), np.nan)


def dataset_from_frame(
    frame: pd.DataFrame,
    treatment_col: str,
    outcome_col: str,
    covariate_cols: Optional[Sequence[str]] = None,
) -> Dataset:
    """Build a Dataset from a token frame, dropping rows with missing values.

    Args:
        frame: Token frame as returned by read_table
        treatment_col: Binary treatment column
        outcome_col: Binary outcome column
        covariate_cols: Covariates in order; defaults to every other column

    Returns:
        Dataset with dropped_count set to the number of removed rows
    """
    for column in (treatment_col, outcome_col, *(covariate_cols or ())):
        if column not in frame.columns:
            raise SchemaError(column)

    if covariate_cols is None:
        covariate_cols = [
            c for c in frame.columns if c not in (treatment_col, outcome_col)
        ]
    covariate_cols = list(covariate_cols)

    used = frame[[*covariate_cols, treatment_col, outcome_col]]
    complete = used.notna().all(axis=1)
    dropped = int((~complete).sum())
    if dropped:
        logger.warning(f"Dropped {dropped} rows with missing values")

    kept = used[complete]
    if kept.empty:
        raise EmptyInputError("No complete rows remain after dropping missing values")

    # Row numbers in messages are 1-based data rows of the original file
    row_numbers = kept.index.to_numpy() + 1

    a = _parse_binary(kept[treatment_col], treatment_col, row_numbers)
    y = _parse_binary(kept[outcome_col], outcome_col, row_numbers)

    columns = []
    for name in covariate_cols:
        values = pd.to_numeric(kept[name], errors="coerce").to_numpy(dtype=float)
        bad = ~np.isfinite(values)
        if bad.any():
            first = int(np.argmax(bad))
            raise ParseError(
                f"Non-numeric value {kept[name].iloc[first]!r} in column {name!r}",
                row=int(row_numbers[first]),
            )
        columns.append(values)

    x = np.column_stack(columns) if columns else np.empty((len(kept), 0))

    return Dataset(
        x=x,
        a=a,
        y=y,
        column_names=tuple(covariate_cols),
        dropped_count=dropped,
    )


def _parse_binary(tokens: pd.Series, name: str, row_numbers: np.ndarray) -> np.ndarray:
    """Map 0/1 tokens to floats, rejecting anything else."""
    mapped = tokens.map(BINARY_TOKENS)
    bad = mapped.isna().to_numpy()
    if bad.any():
        first = int(np.argmax(bad))
        raise ParseError(
            f"Column {name!r} must be 0/1, got {tokens.iloc[first]!r}",
            row=int(row_numbers[first]),
        )
    return mapped.to_numpy(dtype=float)


def load_csv(
    path: Union[str, Path],
    treatment_col: str,
    outcome_col: str,
    covariate_cols: Optional[Sequence[str]] = None,
) -> Dataset:
    """Load a Dataset from CSV.

    Args:
        path: CSV file with a header row
        treatment_col: Binary treatment column name
        outcome_col: Binary outcome column name
        covariate_cols: Covariate names in order (default: all other columns)

    Returns:
        Dataset; rows with any missing token are dropped and counted
    """
    frame = read_table(path)
    dataset = dataset_from_frame(frame, treatment_col, outcome_col, covariate_cols)
    logger.info(
        f"Loaded {dataset.n} rows, {dataset.p} covariates from {path} "
        f"({dataset.dropped_count} dropped)"
    )
    return dataset


def write_csv(
    dataset: Dataset,
    path: Union[str, Path],
    treatment_col: str = "a",
    outcome_col: str = "y",
):
    """Write a Dataset so that load_csv reads it back unchanged."""
    frame = pd.DataFrame(dataset.x, columns=list(dataset.column_names))
    frame[treatment_col] = dataset.a.astype(int)
    frame[outcome_col] = dataset.y.astype(int)
    frame.to_csv(path, index=False, float_format="%.17g")


def expand_interactions(
    dataset: Dataset,
    continuous_cols: Sequence[str],
    discrete_cols: Sequence[str],
) -> Dataset:
    """Append one product column per (continuous, discrete) pair.

    New columns are named "<continuous>:<discrete>" and appended in
    continuous-major order after the original columns.
    """
    overlap = set(continuous_cols) & set(discrete_cols)
    if overlap:
        raise ArgumentError(
            f"Columns listed as both continuous and discrete: {sorted(overlap)}"
        )
    for name in (*continuous_cols, *discrete_cols):
        if name not in dataset.column_names:
            raise SchemaError(name)

    products: List[np.ndarray] = []
    names: List[str] = []
    for cont in continuous_cols:
        for disc in discrete_cols:
            products.append(dataset.column(cont) * dataset.column(disc))
            names.append(f"{cont}:{disc}")

    if not products:
        return dataset

    return Dataset(
        x=np.column_stack([dataset.x, *products]),
        a=dataset.a,
        y=dataset.y,
        column_names=dataset.column_names + tuple(names),
        dropped_count=dataset.dropped_count,
    )


def parse_interaction_spec(spec: str) -> tuple:
    """Parse "cont=age,whr;disc=sex,smoking" into (continuous, discrete) lists."""
    continuous: List[str] = []
    discrete: List[str] = []
    for part in filter(None, (p.strip() for p in spec.split(";"))):
        key, _, value = part.partition("=")
        names = [v.strip() for v in value.split(",") if v.strip()]
        if key.strip() == "cont":
            continuous.extend(names)
        elif key.strip() == "disc":
            discrete.extend(names)
        else:
            raise ArgumentError(f"Unknown interaction key {key!r}; use cont= and disc=")
    return continuous, discrete


def dataset_with_propensity(
    frame: pd.DataFrame,
    treatment_col: str,
    outcome_col: str,
    propensity_col: str,
    covariate_cols: Optional[Sequence[str]] = None,
) -> Tuple[Dataset, np.ndarray]:
    """Dataset plus a column of known propensities, aligned row by row.

    The propensity column is excluded from the default covariates and takes
    part in the listwise deletion.
    """
    if propensity_col not in frame.columns:
        raise SchemaError(propensity_col)
    if covariate_cols is None:
        covariate_cols = [
            c for c in frame.columns if c not in (treatment_col, outcome_col, propensity_col)
        ]

    missing = frame[propensity_col].isna()
    kept = frame[~missing]
    if kept.empty:
        raise EmptyInputError(f"Column {propensity_col!r} has no values")

    dataset = dataset_from_frame(kept, treatment_col, outcome_col, covariate_cols)
    complete = kept[[*covariate_cols, treatment_col, outcome_col]].notna().all(axis=1)
    tokens = kept.loc[complete, propensity_col]

    e = pd.to_numeric(tokens, errors="coerce").to_numpy(dtype=float)
    bad = ~((e > 0.0) & (e < 1.0))
    if bad.any():
        first = int(np.argmax(bad))
        raise ParseError(
            f"Propensity {tokens.iloc[first]!r} in column {propensity_col!r} must lie in (0, 1)",
            row=int(tokens.index[first]) + 1,
        )

    dropped = int(missing.sum()) + dataset.dropped_count
    if missing.any():
        logger.warning(f"Dropped {int(missing.sum())} rows with a missing propensity")
    return replace(dataset, dropped_count=dropped), e
