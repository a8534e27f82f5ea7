"""Aligned text tables for simulation metrics and application results."""

import math
from typing import Dict, List, Sequence, Tuple

import pandas as pd

METRICS = ("bias", "sse", "ese", "cp95")
METRIC_LABELS = {"bias": "Bias", "sse": "SSE", "ese": "ESE", "cp95": "CP95"}
CELL_WIDTH = 7

METRICS_NOTE = (
    "Bias and SSE are the mean and standard deviation of the Monte Carlo point estimates. "
    "ESE is the mean of the estimated standard errors and CP95 the coverage proportion "
    "of 95% confidence intervals."
)


def _number(value, width: int = CELL_WIDTH, digits: int = 3) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "-".rjust(width)
    return f"{value:.{digits}f}".rjust(width)


def format_metrics_table(frame: pd.DataFrame) -> str:
    """Render a metrics frame with one row per (case, estimator) and one block per n.

    Args:
        frame: Metrics table as read from a simulate CSV

    Returns:
        Text table followed by the metric definitions
    """
    if frame.empty:
        return "No metrics rows.\n"

    n_values: List[int] = sorted(int(n) for n in frame["n"].unique())
    keys: List[Tuple[int, str]] = list(
        dict.fromkeys(zip(frame["case"].astype(int), frame["estimator"]))
    )
    cells: Dict[Tuple[int, str, int], pd.Series] = {
        (int(row["case"]), row["estimator"], int(row["n"])): row
        for _, row in frame.iterrows()
    }

    name_width = max(len("Estimator"), *(len(name) for _, name in keys))
    block_width = len(METRICS) * (CELL_WIDTH + 1) - 1

    header_top = f"{'Case':>4}  {'Estimator':<{name_width}}"
    header_sub = " " * (6 + name_width)
    for n in n_values:
        header_top += " | " + f"n = {n}".center(block_width)
        header_sub += " | " + " ".join(METRIC_LABELS[m].rjust(CELL_WIDTH) for m in METRICS)

    lines = [header_top, header_sub, "-" * len(header_sub)]
    flagged = False

    for case_id, name in keys:
        line = f"{case_id:>4}  {name:<{name_width}}"
        for n in n_values:
            row = cells.get((case_id, name, n))
            if row is None:
                line += " | " + " ".join("".rjust(CELL_WIDTH) for _ in METRICS)
                continue
            values = " ".join(_number(row[m]) for m in METRICS)
            if "valid" in row and not bool(row["valid"]):
                values = values[:-1] + "*"
                flagged = True
            line += " | " + values
        lines.append(line)

    lines.append("")
    lines.append(METRICS_NOTE)
    if flagged:
        lines.append("* more than 5% of replications failed; cell not reliable.")
    return "\n".join(lines) + "\n"


def format_application_table(rows: Sequence[dict]) -> str:
    """Exposure x method table with pn.est, ESE and p-value columns."""
    if not rows:
        return "No exposures analysed.\n"

    exposure_width = max(len("Exposure"), *(len(r["exposure"]) for r in rows))
    header = f"{'Exposure':<{exposure_width}}  {'Method':<10} {'pn.est':>8} {'ESE':>8} {'p-value':>9}"
    lines = [header, "-" * len(header)]

    for r in rows:
        if r.get("error"):
            lines.append(
                f"{r['exposure']:<{exposure_width}}  {r['method']:<10} failed: {r['error']}"
            )
            continue
        lines.append(
            f"{r['exposure']:<{exposure_width}}  {r['method']:<10} "
            f"{_number(r['pn.est'], 8)} {_number(r['ESE'], 8)} {_number(r['p-value'], 9, 4)}"
        )
    return "\n".join(lines) + "\n"


def format_subgroup_table(rows: Sequence[dict], method: str = "proposed") -> str:
    """Group x exposure table of pn.est and ESE for one method."""
    selected = [r for r in rows if r["method"] == method]
    if not selected:
        return f"No {method} subgroup results.\n"

    exposures = list(dict.fromkeys(r["exposure"] for r in selected))
    groups = list(dict.fromkeys(r["group"] for r in selected))
    lookup = {(r["group"], r["exposure"]): r for r in selected}
    width = max(15, *(len(e) + 2 for e in exposures))

    header = f"{'Group':<8}" + "".join(e.center(width) for e in exposures)
    sub = " " * 8 + "".join(f"{'pn.est':>7} {'ESE':>6} ".center(width) for _ in exposures)
    lines = [header, sub, "-" * len(header)]

    for group in groups:
        line = f"{str(group):<8}"
        for exposure in exposures:
            r = lookup.get((group, exposure))
            if r is None or r.get("error"):
                line += "failed".center(width)
            else:
                line += f"{_number(r['pn.est'], 7)} {_number(r['ESE'], 6)} ".center(width)
        lines.append(line)
    return "\n".join(lines) + "\n"
