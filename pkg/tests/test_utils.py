import warnings
from fractions import Fraction

import pytest

from ntlab import utils


@pytest.mark.parametrize(
    "value,expected",
    [
        ("1e4", 10000),
        ("2.5", 2.5),
        (7, 7),
        (7.0, 7),
        ("-3", -3),
        ("1e30", 1e30),
    ],
)
def test_parse_number(value, expected):
    result = utils.parse_number(value)
    assert result == expected
    assert type(result) is type(expected)


@pytest.mark.parametrize("value", ["nan", "inf", "x", True])
def test_parse_number__rejects(value):
    with pytest.raises((TypeError, ValueError)):
        utils.parse_number(value)


@pytest.mark.parametrize(
    "value,expected",
    [
        (3, Fraction(3)),
        ("3/5", Fraction(3, 5)),
        (Fraction(108, 55), Fraction(108, 55)),
        ((6, 7), Fraction(6, 7)),
        ([10, 4], Fraction(5, 2)),
    ],
)
def test_as_fraction(value, expected):
    assert utils.as_fraction(value) == expected


def test_rel_diff():
    assert utils.rel_diff(1.0, 1.0) == 0
    assert utils.rel_diff(100.0, 101.0) == pytest.approx(1 / 101)
    assert utils.rel_diff(1e-12, 2e-12) == pytest.approx(1e-12)
    assert utils.rel_diff(1e-12, 2e-12, floor=0) == pytest.approx(0.5)
    assert utils.rel_diff(1j, -1j) == 2


def test_warn():
    with pytest.warns(utils.LabWarning, match="clamped"):
        utils.warn("U clamped to 4")


def test_warn__can_be_silenced():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        warnings.simplefilter("ignore", utils.LabWarning)
        utils.warn("ignored")


def test_invariant_violation_is_assertion_error():
    assert issubclass(utils.InvariantViolation, AssertionError)


def test_append_docstring_text():
    def with_doc():
        """
        Summary.
        """

    def without_doc():
        pass

    utils._append_docstring_text(with_doc, "More.")
    utils._append_docstring_text(without_doc, "More.")
    assert with_doc.__doc__.rstrip().endswith("More.")
    assert without_doc.__doc__ is None
