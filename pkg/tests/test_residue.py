import math
from types import SimpleNamespace

import pytest

from ntlab import residue
from ntlab.arith import li
from ntlab.characters import build_table
from ntlab.primes import pi, pi_class
from ntlab.testing import brute_count_P, brute_mean_numerator, primes_below
from ntlab.utils import LabWarning

#: Multiple of the recorded error scale that S1 may stray from π(x)/2.
S1_ERROR_CONSTANT = 1


def test_is_dth_power_residue():
    assert residue.is_dth_power_residue(2, 31, 3)
    assert not residue.is_dth_power_residue(2, 7, 3)
    assert residue.is_dth_power_residue(2, 7, 2)
    with pytest.raises(ValueError):
        residue.is_dth_power_residue(7, 7, 2)
    with pytest.raises(ValueError):
        residue.is_dth_power_residue(2, 7, 4)


@pytest.mark.parametrize(
    "a,d,x,expected",
    [
        (2, 2, 100, 11),
        (2, 3, 100, 2),
        (3, 2, 1, 0),
    ],
)
def test_count_P(a, d, x, expected):
    assert residue.count_P(a, d, x) == expected


@pytest.mark.parametrize("a", [2, 3, 5, 7, 10, 12])
@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_count_P__matches_brute_force(a, d):
    assert residue.count_P(a, d, 500) == brute_count_P(a, d, 500)


def test_power_class_counts():
    assert residue.power_class_counts(7, 3, range(1, 7)).tolist() == [2, 2, 2]
    assert residue.power_class_counts(7, 2, [7, 14, 1, 2]).tolist() == [2, 0]


def test_hooley_main_term():
    assert residue.hooley_main_term(5, 10, 100) == pytest.approx(2 * li(100) / 40)
    assert residue.hooley_main_term(2, 2, 100) == pytest.approx(li(100) / 2)


def test_index_class_engine():
    engine = residue.IndexClassEngine(80)
    for p, d in [(31, 3), (13, 4), (7, 6), (5, 2)]:
        table = build_table(p, d)
        expected = [-1] + [table.class_of(v) for v in range(1, 81)]
        assert engine.classes(p, d).tolist() == expected


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_mean_value__matches_brute_force(d):
    result = residue.mean_value(d, 300, 30)
    numerator = result.S1_numerator + result.S2_numerator
    assert numerator == d * brute_mean_numerator(d, 300, 30)
    assert result.S == pytest.approx(numerator / (d * 30))
    assert result.S == pytest.approx(result.S1 + result.S2)
    assert result.a_count == 29


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_mean_value__character_equals_direct(d):
    character = residue.mean_value(d, 500, 50, mode="character")
    direct = residue.mean_value(d, 500, 50, mode="direct")
    assert character.mode == "character"
    assert direct.mode == "direct"
    assert character.S1_numerator == direct.S1_numerator
    assert character.S2_numerator == direct.S2_numerator
    assert character.S2_l2 is not None
    assert direct.S2_l2 is None


def test_mean_value__bounds_and_main_term():
    result = residue.mean_value(2, 1000, 100)
    assert result.pi_x == pi(1000) == 168
    assert result.main_term == 84
    assert result.abs_error == pytest.approx(abs(result.S - 84))
    assert abs(result.S2) <= result.s2_cauchy_bound
    assert abs(result.S2) <= result.s2_polya_bound
    assert result.s1_error_scale == pytest.approx(math.log(math.log(1000)) + 168 / 100)


def test_mean_value__s1_near_main_term():
    result = residue.mean_value(2, 10**4, 10**3)
    assert result.pi_x == 1229
    # Σ over odd p <= 10^4 of #{2 <= a <= 1000 : p ∤ a}
    assert result.S1_numerator == 1225146
    assert result.s1_error_scale == pytest.approx(math.log(math.log(10**4)) + 1.229)
    assert abs(result.S1 - 614.5) <= S1_ERROR_CONSTANT * result.s1_error_scale


def test_mean_value__main_term_for_higher_orders():
    result = residue.mean_value(3, 1000, 100)
    assert result.pi_class_x == pi_class(1000, 3) == 80
    assert result.main_term == pytest.approx(80 / 3)


def test_mean_value__s1_counts_coprime_pairs():
    d, x, y = 4, 400, 60
    result = residue.mean_value(d, x, y)
    expected = sum(
        sum(1 for a in range(2, y + 1) if a % p)
        for p in primes_below(x + 1)
        if p > 2 and p % d == 1
    )
    assert result.S1_numerator == expected


def test_mean_value__nonsquare_a():
    result = residue.mean_value(2, 300, 30, a_mode="nonsquare")
    assert result.a_count == 25
    squares = {4, 9, 16, 25}
    expected = sum(
        brute_count_P(a, 2, 300) for a in range(2, 31) if a not in squares
    )
    assert result.S1_numerator + result.S2_numerator == 2 * expected


def test_mean_value__direct_mode_for_other_orders():
    with pytest.warns(LabWarning):
        result = residue.mean_value(5, 300, 20)
    assert result.mode == "direct"
    assert result.S1_numerator + result.S2_numerator == 5 * brute_mean_numerator(5, 300, 20)


def test_mean_value__workers():
    serial = residue.mean_value(3, 2000, 40)
    sharded = residue.mean_value(3, 2000, 40, workers=2)
    assert sharded.S1_numerator == serial.S1_numerator
    assert sharded.S2_numerator == serial.S2_numerator
    assert sharded.S2_l2 == serial.S2_l2
    assert sharded.S == serial.S


@pytest.mark.parametrize(
    "kwargs",
    [
        {"d": 2, "x": 100, "y": 1},
        {"d": 2, "x": 2, "y": 10},
        {"d": 1, "x": 100, "y": 10},
        {"d": 5, "x": 100, "y": 10, "mode": "character"},
        {"d": 2, "x": 100, "y": 10, "mode": "fast"},
        {"d": 2, "x": 100, "y": 10, "a_mode": "odd"},
    ],
)
def test_mean_value__rejects(kwargs):
    with pytest.raises(ValueError):
        residue.mean_value(**kwargs)


@pytest.mark.parametrize("d", [2, 3, 4, 6])
@pytest.mark.parametrize("a_mode", ["all", "nonsquare"])
def test_square_split_numerator(d, a_mode):
    result = residue.mean_value(d, 800, 120, a_mode=a_mode)
    assert residue.square_split_numerator(d, 800, 120, a_mode) == result.S2_numerator


def test_square_split_numerator__rejects():
    with pytest.raises(ValueError):
        residue.square_split_numerator(5, 100, 10)


def test_verify_residue_definitions():
    check = residue.verify_residue_definitions(300)
    assert check.failures == []
    assert check.failure_count == 0
    assert check.ds == [2, 3, 4, 6]
    expected_primes = sum(
        1 for d in (2, 3, 4, 6) for p in primes_below(301) if p > 2 and p % d == 1
    )
    assert check.primes == expected_primes
    assert check.checked == sum(
        p - 1 for d in (2, 3, 4, 6) for p in primes_below(301) if p > 2 and p % d == 1
    )


@pytest.mark.slow
def test_verify_residue_definitions__full_range():
    check = residue.verify_residue_definitions(10**4)
    assert check.failure_count == 0
    assert check.failures == []


def test_verify_residue_definitions__counts_every_failure(monkeypatch):
    def shifted_table(p, d):
        table = build_table(p, d)
        classes = table.classes.copy()
        classes[1:] = (classes[1:] + 1) % d
        return SimpleNamespace(classes=classes, unit_root_pairs=table.unit_root_pairs)

    monkeypatch.setattr(residue, "build_table", shifted_table)
    check = residue.verify_residue_definitions(30, ds=(2,))
    assert check.failure_count == sum(p - 1 for p in primes_below(31) if p > 2) == 118
    assert len(check.failures) == residue.MAX_LISTED_FAILURES
    assert check.failures[:2] == [(3, 2, 1), (3, 2, 2)]


def test_verify_residue_definitions__rejects_inexact_orders():
    with pytest.raises(ValueError):
        residue.verify_residue_definitions(30, ds=(5,))


@pytest.mark.slow
@pytest.mark.parametrize("d", [2, 3, 4, 6])
@pytest.mark.parametrize("x", [500, 2000])
@pytest.mark.parametrize("y", [50, 200])
def test_mean_value__character_equals_direct__grid(d, x, y):
    character = residue.mean_value(d, x, y, mode="character")
    direct = residue.mean_value(d, x, y, mode="direct")
    assert (character.S1_numerator, character.S2_numerator) == (
        direct.S1_numerator,
        direct.S2_numerator,
    )


@pytest.mark.slow
@pytest.mark.parametrize("x", [10**4, 10**5, 10**6])
@pytest.mark.parametrize("y", [10**2, 10**3, 10**4])
def test_mean_value__quadratic_error_envelope(x, y):
    result = residue.mean_value(2, x, y, workers=4)
    envelope = min(x * math.sqrt(math.log(x) / y), math.sqrt(x) * math.log(x))
    assert result.abs_error / envelope <= 5
