"""Error codes and the machine-readable error form."""

import numpy as np
import pytest

from src import errors


@pytest.mark.parametrize(
    "error, code",
    [
        (errors.SchemaError("x1"), "schema-error"),
        (errors.ParseError("bad token"), "parse-error"),
        (errors.EmptyInputError("empty"), "empty-input"),
        (errors.ArgumentError("bad"), "argument-error"),
        (errors.DivergedError("no"), "diverged"),
        (errors.DegenerateTargetError("const"), "degenerate-target"),
        (errors.UnestimableArmError("arm"), "unestimable-arm"),
        (errors.NoTreatedCasesError("none"), "no-treated-cases"),
        (errors.DegenerateDenominatorError("zero"), "degenerate-denominator"),
        (errors.WrongVariantError("variant"), "wrong-variant"),
        (errors.RegistryError("case"), "registry-error"),
        (errors.DegenerateTruthError("truth"), "degenerate-truth"),
        (errors.BootstrapError("boot"), "bootstrap-failed"),
    ],
)
def test_codes_are_stable(error, code):
    assert isinstance(error, errors.AttributionError)
    assert error.to_dict()["error"] == code


def test_schema_error_names_column():
    error = errors.SchemaError("smoking")
    assert error.column == "smoking"
    assert "smoking" in error.to_dict()["message"]


def test_parse_error_prefixes_row():
    error = errors.ParseError("Column 'a' must be 0/1, got '2'", row=3)
    assert error.message.startswith("Row 3: ")
    assert error.row == 3


def test_diverged_error_keeps_coefficients():
    error = errors.DivergedError("stuck", np.array([1.0, 2.0]))
    np.testing.assert_array_equal(error.coefficients, [1.0, 2.0])
