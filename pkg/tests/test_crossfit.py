"""Fold assignment and cross-fitted nuisance predictions."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.data.models import Dataset
from src.errors import ArgumentError, UnestimableArmError
from src.estimation.types import Flag, PropensitySource
from src.nuisance.crossfit import assign_folds, cross_fit, fold_sizes, training_indices
from src.nuisance.logistic import fit_logistic
from src.nuisance.models import NuisanceModel
from src.simulation.generator import generate_case
from src.simulation.registry import get_case


def _dataset(seed: int, n: int) -> Dataset:
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, 2))
    a = (rng.random(n) < 0.5).astype(float)
    a[:2] = [0.0, 1.0]
    y = (rng.random(n) < 0.4).astype(float)
    return Dataset(x=x, a=a, y=y)


@given(n=st.integers(2, 500), k=st.integers(2, 10), seed=st.integers(0, 2**32 - 1))
def test_folds_partition_units(n, k, seed):
    fold_id = assign_folds(n, k, seed)

    sizes = np.bincount(fold_id, minlength=k)
    assert fold_id.shape == (n,)
    assert sizes.sum() == n
    assert sizes.max() - sizes.min() <= 1
    # Remainder units go to the lowest fold ids
    assert np.all(np.diff(sizes) <= 0)


def test_training_indices_exclude_the_fold():
    fold_id = np.array([0, 1, 0, 1])
    np.testing.assert_array_equal(training_indices(fold_id, 0), [1, 3])


def test_four_units_two_folds():
    d = Dataset(x=np.array([[0.1], [0.5], [-0.3], [0.8]]), a=[1, 0, 1, 0], y=[1, 0, 0, 1])
    nf = cross_fit(d, k=2, seed=1)
    assert fold_sizes(nf) == [2, 2]


def test_predictions_come_from_out_of_fold_models():
    d = _dataset(4, 60)
    nf = cross_fit(d, k=3, seed=11)

    for fold in range(3):
        test = nf.fold_id == fold
        train = training_indices(nf.fold_id, fold)
        assert not np.intersect1d(train, np.flatnonzero(test)).size
        e_model = fit_logistic(d.x[train], d.a[train])
        np.testing.assert_allclose(
            nf.e_hat[test], np.clip(e_model.predict(d.x[test]), 1e-3, 1 - 1e-3), rtol=0, atol=1e-12
        )
        treated = train[d.a[train] == 1.0]
        mu1_model = fit_logistic(d.x[treated], d.y[treated])
        np.testing.assert_allclose(nf.mu1_hat[test], mu1_model.predict(d.x[test]), atol=1e-12)


@settings(max_examples=25)
@given(seed=st.integers(0, 2**32 - 1), unit=st.integers(0, 39))
def test_own_outcome_never_affects_own_prediction(seed, unit):
    d = _dataset(seed, 40)
    flipped_y = d.y.copy()
    flipped_y[unit] = 1.0 - flipped_y[unit]
    flipped = Dataset(x=d.x, a=d.a, y=flipped_y)

    before = cross_fit(d, k=4, seed=seed)
    after = cross_fit(flipped, k=4, seed=seed)

    assert before.e_hat[unit] == after.e_hat[unit]
    assert before.mu0_hat[unit] == after.mu0_hat[unit]
    assert before.mu1_hat[unit] == after.mu1_hat[unit]


def test_known_propensity_passes_through():
    d = _dataset(2, 30)
    nf = cross_fit(d, k=3, known_e=np.full(30, 0.5), seed=0)
    assert nf.propensity_source == PropensitySource.KNOWN
    np.testing.assert_array_equal(nf.e_hat, 0.5)


def test_known_propensity_must_be_inside_unit_interval():
    d = _dataset(2, 30)
    with pytest.raises(ArgumentError):
        cross_fit(d, k=3, known_e=np.r_[np.full(29, 0.5), 1.0])


def test_estimated_propensity_is_clipped(rng):
    x = rng.normal(size=(200, 1))
    a = (x[:, 0] > 0).astype(float)  # separation pushes fitted e to 0 and 1
    d = Dataset(x=x, a=a, y=(rng.random(200) < 0.5))

    nf = cross_fit(d, k=2, seed=0, clip_eps=0.01)

    assert nf.e_hat.min() >= 0.01
    assert nf.e_hat.max() <= 0.99
    assert {0.01, 0.99} <= set(np.round(nf.e_hat, 12))


def test_arm_missing_from_a_complement_falls_back(caplog):
    a = np.ones(10)
    a[3] = 0.0
    rng = np.random.default_rng(0)
    d = Dataset(x=rng.normal(size=(10, 1)), a=a, y=(rng.random(10) < 0.5))

    nf = cross_fit(d, k=2, seed=5)

    assert Flag.ARM_FALLBACK in nf.warnings
    assert "fitting mu0 on all A=0 units" in caplog.text


def test_arm_absent_everywhere_is_unestimable():
    d = Dataset(x=np.zeros((10, 1)), a=np.ones(10), y=[0, 1] * 5)
    with pytest.raises(UnestimableArmError):
        cross_fit(d, k=2)


@pytest.mark.parametrize("k, n", [(1, 10), (5, 9)])
def test_fold_count_checked(k, n):
    with pytest.raises(ArgumentError):
        cross_fit(_dataset(0, n), k=k)


def test_identical_inputs_identical_fit():
    d = _dataset(8, 50)
    first = cross_fit(d, k=5, seed=(1, 2))
    second = cross_fit(d, k=5, seed=(1, 2))
    np.testing.assert_array_equal(first.e_hat, second.e_hat)
    np.testing.assert_array_equal(first.mu0_hat, second.mu0_hat)
    np.testing.assert_array_equal(first.fold_id, second.fold_id)


def test_lasso_nuisances_run(rng):
    d = _dataset(3, 80)
    nf = cross_fit(d, k=2, model=NuisanceModel.LASSO, seed=4)
    assert nf.n == 80
    assert np.all((nf.mu1_hat >= 0) & (nf.mu1_hat <= 1))


def test_propensity_close_to_generating_one_in_case_1():
    draw = generate_case(get_case(1), 2000, (20240101, 1, 2000, 0))
    nf = cross_fit(draw.dataset, k=5, seed=1)
    assert np.mean(np.abs(nf.e_hat - draw.e)) < 0.05
