"""IRLS logistic regression."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize
from scipy.special import expit

from src.errors import DivergedError
from src.nuisance.logistic import design_matrix, fit_logistic, penalized_log_likelihood


def _intercept_only(t):
    return np.empty((len(t), 0)), np.asarray(t, dtype=float)


def test_balanced_targets_give_zero_intercept():
    model = fit_logistic(*_intercept_only([1, 0, 1, 0]))
    assert model.converged
    assert model.coefficients[0] == pytest.approx(0.0, abs=1e-8)


def test_intercept_matches_closed_form():
    model = fit_logistic(*_intercept_only([1, 1, 1, 0]))
    assert model.coefficients[0] == pytest.approx(np.log(3.0), abs=1e-6)


def test_matches_independent_likelihood_maximizer(rng):
    x = rng.normal(0.0, 2.0, size=(200, 2))
    t = (rng.random(200) < expit(x.sum(axis=1) / 8.0)).astype(float)
    z = design_matrix(x)

    model = fit_logistic(x, t)
    oracle = minimize(
        lambda b: -penalized_log_likelihood(b, z, t, 0.0),
        np.zeros(3),
        jac=lambda b: -(z.T @ (t - expit(z @ b))),
        method="BFGS",
        options={"gtol": 1e-10},
    )

    fitted_ll = penalized_log_likelihood(model.coefficients, z, t, 0.0)
    assert fitted_ll == pytest.approx(-oracle.fun, abs=1e-6)
    np.testing.assert_allclose(model.coefficients, oracle.x, atol=1e-4)


def test_converged_gradient_is_small(rng):
    x = rng.normal(size=(300, 3))
    t = (rng.random(300) < expit(x @ np.array([0.5, -1.0, 0.25]))).astype(float)

    model = fit_logistic(x, t)

    z = design_matrix(x)
    gradient = z.T @ (t - model.predict(x)) - 1e-8 * model.coefficients
    assert np.max(np.abs(gradient)) < 1e-4


def test_constant_target_without_ridge_diverges():
    with pytest.raises(DivergedError) as info:
        fit_logistic(*_intercept_only([1, 1, 1]), ridge=0.0)
    assert info.value.coefficients is not None


def test_iteration_cap_raises_with_last_iterate(rng):
    x = rng.normal(size=(50, 1))
    t = (x[:, 0] > 0).astype(float)  # perfectly separated
    with pytest.raises(DivergedError) as info:
        fit_logistic(x, t, ridge=0.0, max_iter=3)
    assert info.value.coefficients.shape == (2,)


@settings(max_examples=30)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(10, 80))
def test_fitted_likelihood_not_below_start(seed, n):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, 2))
    t = (rng.random(n) < 0.5).astype(float)
    z = design_matrix(x)
    try:
        model = fit_logistic(x, t)
    except DivergedError:
        return
    start = penalized_log_likelihood(np.zeros(3), z, t, 1e-8)
    assert model.final_log_likelihood >= start


def test_ridge_keeps_constant_target_finite():
    # the intercept is penalized, so an all-ones target has a stationary point
    x, t = _intercept_only([1, 1, 1])
    model = fit_logistic(x, t, ridge=1e-2)

    intercept = model.coefficients[0]
    assert np.isfinite(intercept) and intercept > 0.0
    assert 3.0 * (1.0 - expit(intercept)) == pytest.approx(1e-2 * intercept, abs=1e-6)
