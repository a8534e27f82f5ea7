"""Multi-exposure and subgroup application runner."""

import numpy as np
import pytest

from src.application import RESULT_COLUMNS, exposure_dataset, run_application
from src.data.loader import read_table
from src.data.synthetic import DEFAULT_ROWS, EXPOSURES, OUTCOME, write_case_control
from src.errors import ArgumentError, SchemaError
from src.nuisance.models import NuisanceModel


@pytest.fixture(scope="module")
def frame(tmp_path_factory):
    path = tmp_path_factory.mktemp("application") / "case_control.csv"
    write_case_control(path, n=800, seed=7)
    return read_table(path)


def _run(frame, **kwargs):
    options = dict(nuisance=NuisanceModel.LOGISTIC, folds=2, bootstrap_reps=5, seed=3)
    options.update(kwargs)
    return run_application(frame, OUTCOME, **options)


def test_every_other_column_is_a_covariate(frame):
    d = exposure_dataset(frame, OUTCOME, "smoking")
    assert d.p == 13
    assert "smoking" not in d.column_names and OUTCOME not in d.column_names


def test_interactions_skip_the_exposure(frame):
    d = exposure_dataset(frame, OUTCOME, "smoking", interactions=(["age", "whr"], ["sex", "smoking"]))
    assert d.column_names[13:] == ("age:sex", "whr:sex")


def test_overall_run(frame):
    results = _run(frame, exposures=["smoking", "hypertension"])

    assert list(results.columns) == RESULT_COLUMNS
    assert list(results["method"]) == ["proposed", "OR", "IPW"] * 2
    assert list(results["exposure"]) == ["smoking"] * 3 + ["hypertension"] * 3
    assert (results["group"] == "all").all()
    assert (results["error"] == "").all()
    assert np.isfinite(results["pn.est"].astype(float)).all()
    assert (results["ESE"].astype(float) > 0).all()


def test_runs_are_reproducible(frame):
    first = _run(frame, exposures=["stress"])
    second = _run(frame, exposures=["stress"])
    assert first.equals(second)


def test_groups_in_numeric_order(frame):
    results = _run(frame, exposures=["smoking"], group_col="region")
    groups = list(dict.fromkeys(results["group"]))
    assert groups == sorted(groups, key=int)
    assert len(results) == 3 * len(groups)


def test_failed_exposure_gives_error_rows(frame):
    constant = frame.assign(diabetes="1")
    results = _run(constant, exposures=["diabetes", "smoking"])

    failed = results[results["exposure"] == "diabetes"]
    assert list(failed["error"]) == ["unestimable-arm"] * 3
    assert failed["pn.est"].isna().all()
    assert (results.loc[results["exposure"] == "smoking", "error"] == "").all()


def test_argument_checks(frame):
    with pytest.raises(ArgumentError):
        _run(frame, exposures=[])
    with pytest.raises(SchemaError):
        _run(frame, exposures=["coffee"])
    with pytest.raises(SchemaError):
        _run(frame, exposures=["smoking"], group_col="country")


@pytest.mark.slow
def test_lasso_nuisances(frame):
    results = run_application(frame, OUTCOME, ["smoking"], folds=5, bootstrap_reps=50, seed=1)
    assert (results["error"] == "").all()
    proposed = results[results["method"] == "proposed"].iloc[0]
    assert 0.0 < proposed["pn.est"] < 1.0


@pytest.mark.slow
def test_full_size_run_over_every_exposure(tmp_path):
    path = tmp_path / "full.csv"
    write_case_control(path, seed=11)
    full = read_table(path)

    results = run_application(
        full, OUTCOME, list(EXPOSURES), bootstrap_reps=200, seed=20240101, workers=-1
    )

    assert len(full) == DEFAULT_ROWS
    assert list(results.columns) == RESULT_COLUMNS
    assert list(dict.fromkeys(results["exposure"])) == list(EXPOSURES)
    assert len(results) == 3 * len(EXPOSURES)
    assert (results["error"] == "").all()
    assert np.isfinite(results["p-value"].astype(float)).all()
    assert np.isfinite(results["ESE"].astype(float)).all()
