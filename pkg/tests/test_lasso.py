"""Coordinate-descent LASSO logistic regression."""

import numpy as np
import pytest
from scipy.special import expit, logit

from src.errors import DegenerateTargetError
from src.nuisance.lasso import fit_lasso_logistic, lambda_max, soft_threshold
from src.nuisance.logistic import fit_logistic


@pytest.fixture
def sparse_design(rng):
    n, p = 1000, 20
    x = rng.normal(size=(n, p))
    beta = np.zeros(p)
    beta[:5] = [1.0, -0.8, 0.6, -0.5, 0.4]
    t = (rng.random(n) < expit(0.3 + x @ beta)).astype(float)
    return x, t


def _standardized(x):
    return (x - x.mean(axis=0)) / x.std(axis=0)


def test_soft_threshold():
    assert soft_threshold(3.0, 1.0) == 2.0
    assert soft_threshold(-3.0, 1.0) == -2.0
    assert soft_threshold(0.5, 1.0) == 0.0


def test_full_shrinkage_at_lambda_max(sparse_design):
    x, t = sparse_design
    lam = lambda_max(_standardized(x), t)

    model = fit_lasso_logistic(x, t, lam=1.01 * lam)

    assert np.all(model.coefficients[1:] == 0.0)
    assert model.coefficients[0] == pytest.approx(logit(t.mean()), abs=1e-12)


def test_zero_penalty_matches_logistic(rng):
    x = rng.normal(size=(400, 3))
    t = (rng.random(400) < expit(x @ np.array([0.7, -0.4, 0.2]))).astype(float)

    lasso = fit_lasso_logistic(x, t, lam=0.0, n_lambdas=20)
    irls = fit_logistic(x, t)

    np.testing.assert_allclose(lasso.coefficients, irls.coefficients, atol=1e-4)


def test_solution_satisfies_kkt_conditions(sparse_design):
    x, t = sparse_design
    n = len(t)

    model = fit_lasso_logistic(x, t, lam=0.02)

    residual = t - model.predict(x)
    assert abs(residual.mean()) < 1e-5
    # On the original scale the standardized condition reads |x_j'(t-p)/n| <= lam * sd_j
    score = x.T @ residual / n
    bound = model.lam * model.scales
    active = model.coefficients[1:] != 0.0
    assert active[:5].all()
    assert np.all(np.abs(score[~active]) <= bound[~active] + 1e-6)
    np.testing.assert_allclose(
        score[active], bound[active] * np.sign(model.coefficients[1:][active]), atol=1e-4
    )


def test_cross_validation_picks_grid_minimum(sparse_design):
    x, t = sparse_design

    model = fit_lasso_logistic(x, t, n_lambdas=15, seed=3)

    assert len(model.cv_curve) == 15
    lambdas, deviances = zip(*model.cv_curve)
    assert model.lam == lambdas[int(np.argmin(deviances))]
    assert model.lam < lambdas[0]


def test_cross_validation_is_seeded(sparse_design):
    x, t = sparse_design
    first = fit_lasso_logistic(x[:300], t[:300], n_lambdas=10, seed=9)
    second = fit_lasso_logistic(x[:300], t[:300], n_lambdas=10, seed=9)
    np.testing.assert_array_equal(first.coefficients, second.coefficients)


def test_constant_target_raises(rng):
    with pytest.raises(DegenerateTargetError):
        fit_lasso_logistic(rng.normal(size=(20, 2)), np.ones(20))


def test_constant_column_dropped(rng, caplog):
    x = np.column_stack([rng.normal(size=100), np.full(100, 3.0)])
    t = (rng.random(100) < expit(x[:, 0])).astype(float)

    model = fit_lasso_logistic(x, t, lam=0.01)

    assert model.dropped_columns == (1,)
    assert model.coefficients[2] == 0.0
    assert "constant columns" in caplog.text
