"""Registered data-generating cases."""

import numpy as np
import pytest

from src.errors import RegistryError
from src.simulation.registry import CASES, get_case, parse_case_ids

ADJUSTED = {1, 3, 5, 6, 7, 8, 9, 10, 17, 18, 19}


def test_cases_1_to_19_registered():
    assert sorted(CASES) == list(range(1, 20))


def test_monotonicity_adjustment_flags():
    assert {c for c, spec in CASES.items() if spec.monotonicity_adjust} == ADJUSTED


@pytest.mark.parametrize(
    "case_id, p, cov_scale",
    [(1, 2, 4.0), (3, 5, 4.0), (5, 2, 1.0), (8, 5, 1.0), (9, 5, 1.0), (17, 5, 4.0), (18, 5, 9.0)],
)
def test_dimensions_and_scales(case_id, p, cov_scale):
    spec = get_case(case_id)
    assert (spec.p, spec.cov_scale) == (p, cov_scale)


def test_unadjusted_twins_share_their_models():
    for source, target in ((1, 2), (3, 4), (5, 11), (10, 16)):
        a, b = CASES[source], CASES[target]
        assert b.propensity_fn is a.propensity_fn
        assert b.mu0_fn is a.mu0_fn
        assert b.mu1_fn is a.mu1_fn
        assert (b.p, b.cov_scale) == (a.p, a.cov_scale)


def test_misspecified_models():
    assert {c for c, s in CASES.items() if not s.propensity_linear} == {6, 9, 12, 15, 18}
    assert {c for c, s in CASES.items() if not s.outcome_linear} == {7, 10, 13, 16, 19}


def test_case_1_index_functions():
    x = np.array([[1.0, 2.0], [-4.0, 0.5]])
    spec = get_case(1)
    np.testing.assert_allclose(spec.propensity_fn(x), [3.0 / 8.0, -3.5 / 8.0])
    np.testing.assert_allclose(spec.mu0_fn(x), [-0.5, -2.25])
    np.testing.assert_allclose(spec.mu1_fn(x), [8.0 / 3.0 + 0.5, (-8.0 + 1.5) / 3.0 + 0.5])


def test_case_19_outcome_indices():
    x = np.zeros((1, 5))
    assert get_case(19).mu0_fn(x)[0] == pytest.approx(0.0)
    assert get_case(19).mu1_fn(x)[0] == pytest.approx(1.0)


def test_case_8_variant():
    default, two_dim = get_case(8), get_case(8, "two-dim")
    assert default.p == 5 and default.key == "8"
    assert two_dim.p == 2 and two_dim.key == "8-two-dim"
    np.testing.assert_allclose(two_dim.propensity_fn(np.array([[1.0, 3.0]])), [2.0])


def test_unknown_variant():
    with pytest.raises(RegistryError):
        get_case(1, "two-dim")


def test_extension_case_is_outside_the_standard_grid():
    assert 101 not in CASES
    assert get_case(101).monotonicity_adjust


@pytest.mark.parametrize("text, expected", [("1,2,5-7", [1, 2, 5, 6, 7]), (" 19 ", [19]), ("3,3", [3, 3])])
def test_parse_case_ids(text, expected):
    assert parse_case_ids(text) == expected


@pytest.mark.parametrize("text", ["99", "0", "a", "", "1-x", "18-20"])
def test_parse_case_ids_rejects(text):
    with pytest.raises(RegistryError):
        parse_case_ids(text)
