"""JSON and CSV forms of estimates, efficiency reports and metric tables."""

import io
import json
import logging
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

import pandas as pd

from src.diagnostics.efficiency import EfficiencyReport
from src.errors import EmptyInputError, SchemaError
from src.estimation.types import Estimate
from src.nuisance.models import NuisanceFit
from src.simulation.study import MetricsRow

logger = logging.getLogger(__name__)

METRICS_COLUMNS = ["case", "estimator", "n", "reps", "bias", "sse", "ese", "cp95", "failures"]
FLOAT_FORMAT = "%.10g"


def estimate_to_dict(estimate: Estimate, seed: Optional[Any] = None) -> Dict[str, Any]:
    """Estimate as a JSON-ready dict.

    Args:
        estimate: Estimate to serialize
        seed: Seed echoed into the output metadata

    Returns:
        Dict with estimand, method, assumption, propensity_source, value,
        se, ci, p_value, n, warnings and seed
    """
    data = {
        "estimand": estimate.estimand.value,
        "estimator": estimate.name,
        "method": estimate.method.value,
        "assumption": estimate.assumption.value,
        "propensity_source": estimate.propensity_source.value,
        "value": estimate.value,
        "se": estimate.se,
        "ci": [estimate.ci_low, estimate.ci_high],
        "p_value": estimate.p_value,
        "n": estimate.n,
        "warnings": [flag.value for flag in estimate.warnings],
        "seed": seed if seed is not None else estimate.seed,
    }
    if estimate.bootstrap_reps is not None:
        data["bootstrap"] = {
            "reps": estimate.bootstrap_reps,
            "failures": estimate.bootstrap_failures,
        }
    return data


def estimate_to_json(
    estimate: Estimate,
    seed: Optional[Any] = None,
    efficiency: Optional[EfficiencyReport] = None,
) -> str:
    data = estimate_to_dict(estimate, seed)
    if efficiency is not None:
        data["efficiency"] = efficiency.to_dict()
    return json.dumps(data, indent=2)


def estimate_to_csv(estimate: Estimate, seed: Optional[Any] = None) -> str:
    """One-row CSV with the interval split into ci_low / ci_high."""
    data = estimate_to_dict(estimate, seed)
    data["ci_low"], data["ci_high"] = data.pop("ci")
    data["warnings"] = ";".join(data["warnings"])
    data.pop("bootstrap", None)
    return pd.DataFrame([data]).to_csv(index=False, float_format="%.17g")


def metrics_to_frame(rows: Sequence[MetricsRow]) -> pd.DataFrame:
    frame = pd.DataFrame([asdict(row) for row in rows])
    if frame.empty:
        return pd.DataFrame(columns=METRICS_COLUMNS + ["truth", "valid", "seed"])
    frame = frame.rename(columns={"case_id": "case"})
    return frame[METRICS_COLUMNS + ["truth", "valid", "seed"]]


def write_metrics_csv(rows: Sequence[MetricsRow], path: Optional[Union[str, Path]] = None) -> str:
    """Write the metrics table to path (or return it as text when path is None).

    Non-finite metrics of cells with no successful replication are written empty.
    """
    text = metrics_to_frame(rows).to_csv(index=False, float_format=FLOAT_FORMAT, na_rep="")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info(f"Metrics table saved to {path}")
    return text


def read_metrics_csv(path: Union[str, Path]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path)
    except pd.errors.EmptyDataError:
        raise EmptyInputError(f"{path} is empty")
    for column in METRICS_COLUMNS:
        if column not in frame.columns:
            raise SchemaError(column)
    return frame


def write_nuisance_csv(nf: NuisanceFit, path: Union[str, Path]):
    """Audit export: unit_id, fold_id, e_hat, mu0_hat, mu1_hat."""
    nf.to_frame().to_csv(path, index=False, float_format="%.17g")
    logger.info(f"Nuisance predictions for {nf.n} units saved to {path}")


def efficiency_to_json(report: EfficiencyReport) -> str:
    return json.dumps(report.to_dict(), indent=2)


def frame_to_text(frame: pd.DataFrame) -> str:
    """CSV text of a frame, used for application tables on stdout."""
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, na_rep="")
    return buffer.getvalue()

