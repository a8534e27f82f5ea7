"""PS estimators, the PN/PS symmetry and known-propensity variants."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.data.models import Dataset
from src.errors import DegenerateDenominatorError, WrongVariantError
from src.estimation.bootstrap import BootstrapPlan
from src.estimation.pn import pn_inde, pn_mono
from src.estimation.ps import (
    ps_inde,
    ps_inde_known_e,
    ps_influence_values,
    ps_mono,
    ps_mono_known_e,
    ps_terms,
    ps_value,
)
from src.estimation.types import Assumption, Estimand, Method
from tests.helpers import make_dataset, make_fit, random_table

MONO, INDE = Assumption.MONOTONICITY, Assumption.COND_INDEPENDENCE


def test_certain_sufficiency():
    d = make_dataset([1, 0, 0], [1, 0, 0])
    assert ps_mono(d, make_fit(np.full(3, 0.5), 0.3, 1.0)).value == pytest.approx(1.0)


def test_mono_hand_computed_value():
    d = make_dataset([1, 0, 0], [0, 0, 0])
    nf = make_fit(np.full(3, 0.5), 0.2, [0.6, 0.5, 0.4])

    estimate = ps_mono(d, nf)

    assert estimate.value == pytest.approx(0.15, abs=1e-12)
    assert estimate.estimand == Estimand.PS


def test_inde_limits():
    d = make_dataset([1, 0, 0], [1, 0, 1])
    assert ps_inde(d, make_fit(np.full(3, 0.5), 0.3, 1.0)).value == pytest.approx(1.0)

    d = make_dataset([1, 0, 0], [0, 0, 1])
    assert ps_inde(d, make_fit(np.full(3, 0.5), 0.3, 0.0)).value == pytest.approx(0.0)


def test_inde_matches_term_by_term_arithmetic():
    a, y = [1, 0, 0], [0, 0, 0]
    e, mu1, mu0 = 0.5, [0.6, 0.5, 0.4], 0.2
    num = sum(
        mu1[i] * (1 - y[i]) * (a[i] - 1) - a[i] / e * (1 - e) * (y[i] - mu1[i]) * (1 - mu0)
        for i in range(3)
    )
    den = sum((1 - y[i]) * (a[i] - 1) for i in range(3))

    estimate = ps_inde(make_dataset(a, y), make_fit(np.full(3, e), mu0, mu1))

    assert estimate.value == pytest.approx(num / den, abs=1e-12)


def test_denominator_is_minus_share_of_untreated_noncases():
    d, nf = random_table(4, 100)
    _, denominator = ps_terms(d, nf, MONO)
    assert denominator == pytest.approx(-np.mean((1 - d.a) * (1 - d.y)), abs=1e-15)


def test_no_untreated_noncases():
    d = make_dataset([1, 0, 0], [0, 1, 1])
    for estimator in (ps_mono, ps_inde):
        with pytest.raises(DegenerateDenominatorError):
            estimator(d, make_fit(np.full(3, 0.5), 0.2, 0.4))


def _mirror(d: Dataset, nf):
    """Swap the roles of treatment levels and outcome levels."""
    mirrored = Dataset(x=d.x, a=1.0 - d.a, y=1.0 - d.y)
    return mirrored, make_fit(1.0 - nf.e_hat, 1.0 - nf.mu1_hat, 1.0 - nf.mu0_hat)


@settings(max_examples=200)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 60))
def test_ps_on_mirrored_data_equals_pn(seed, n):
    d, nf = random_table(seed, n)
    md, mnf = _mirror(d, nf)
    assert ps_mono(md, mnf).value == pytest.approx(pn_mono(d, nf).value, abs=1e-12)
    assert ps_inde(md, mnf).value == pytest.approx(pn_inde(d, nf).value, abs=1e-12)


@settings(max_examples=300)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 60), assumption=st.sampled_from([MONO, INDE]))
def test_influence_values_have_mean_zero_at_the_solution(seed, n, assumption):
    d, nf = random_table(seed, n, treated_case=False)

    gamma_hat = ps_value(d, nf, assumption)
    iv = ps_influence_values(d, nf, gamma_hat, assumption)

    assert abs(np.mean(iv.values - gamma_hat)) <= 1e-10 * max(1.0, np.max(np.abs(iv.values)))


def test_plug_in_se_is_consistent_with_influence_values():
    d, nf = random_table(8, 120)
    estimate = ps_inde(d, nf)
    iv = ps_influence_values(d, nf, estimate.value, INDE)
    assert estimate.se == pytest.approx(iv.se, rel=1e-12)


def test_known_e_certain_sufficiency():
    d = make_dataset([1, 1, 0, 0], [1, 1, 0, 0])
    nf = make_fit(np.full(4, 0.5), 0.0, 1.0, known=True)
    assert ps_value(d, nf, MONO, known_e=True) == pytest.approx(1.0)
    assert ps_value(d, nf, INDE, known_e=True) == pytest.approx(1.0)


def test_known_e_zero_effect_under_monotonicity():
    d = make_dataset([1, 1, 0, 0], [1, 0, 1, 0])
    mu = np.array([1.0, 0.0, 1.0, 0.0])
    assert ps_value(d, make_fit(np.full(4, 0.5), mu, mu, known=True), MONO, known_e=True) == pytest.approx(0.0)


def test_known_e_matches_term_by_term_arithmetic():
    rng = np.random.default_rng(6)
    a = [1, 1, 1, 0, 0, 0]
    y = [1, 0, 1, 0, 0, 1]
    mu0, mu1, e = rng.random(6), rng.random(6), 0.3
    d, nf = make_dataset(a, y), make_fit(np.full(6, e), mu0, mu1, known=True)

    den = sum((1 - mu0[i]) * (1 - e) - (1 - a[i]) * (y[i] - mu0[i]) for i in range(6))
    mono = sum(
        a[i] / e * (1 - e) * (y[i] - mu1[i]) - (1 - a[i]) * (y[i] - mu0[i]) + (mu1[i] - mu0[i]) * (1 - e)
        for i in range(6)
    )
    inde = sum(
        a[i] / e * (1 - e) * (y[i] - mu1[i]) * (1 - mu0[i])
        - (1 - a[i]) * (y[i] - mu0[i]) * mu1[i]
        + mu1[i] * (1 - mu0[i]) * (1 - e)
        for i in range(6)
    )

    assert ps_value(d, nf, MONO, known_e=True) == pytest.approx(mono / den, abs=1e-12)
    assert ps_value(d, nf, INDE, known_e=True) == pytest.approx(inde / den, abs=1e-12)


def test_known_e_estimates_carry_bootstrap_se():
    d, nf = random_table(2, 150)
    known = make_fit(nf.e_hat, nf.mu0_hat, nf.mu1_hat, known=True)
    plan = BootstrapPlan(reps=30, seed=4, folds=2)

    for estimator in (ps_mono_known_e, ps_inde_known_e):
        estimate = estimator(d, known, plan)
        assert estimate.method == Method.PROPOSED_KNOWN_E
        assert estimate.bootstrap_reps == 30
        assert estimate.se > 0.0


def test_known_e_needs_known_source():
    d, nf = random_table(2, 20)
    with pytest.raises(WrongVariantError):
        ps_mono_known_e(d, nf, BootstrapPlan(reps=5))
