import math
from fractions import Fraction

import pytest

from ntlab.lab import envelopes
from ntlab.lab.envelopes import CUBQUARSEX, LIBOUND, RESD2, ErrorEnvelope
from ntlab.utils import InvariantViolation


def test_check_continuity():
    assert envelopes.check_continuity(CUBQUARSEX) == {
        Fraction(3, 5): Fraction(1, 2),
        Fraction(6, 7): Fraction(3, 4),
        Fraction(6, 5): Fraction(3, 4),
        Fraction(3, 2): Fraction(5, 6),
        Fraction(9, 5): Fraction(5, 6),
        Fraction(108, 55): Fraction(185, 216),
        Fraction(11, 5): Fraction(9, 11),
        Fraction(5, 2): Fraction(4, 5),
    }


def test_check_continuity__libound_jumps():
    assert envelopes.exponent_at_boundary(LIBOUND, 0) == (Fraction(5, 6), Fraction(61, 63))
    with pytest.raises(InvariantViolation):
        envelopes.check_continuity(LIBOUND)


def test_check_continuity__detects_mismatch():
    broken = ErrorEnvelope(
        theorem="cubquarsex",
        pieces=[
            envelopes._piece("1", "1"),
            envelopes._piece(None, "1/2"),
        ],
    )
    with pytest.raises(InvariantViolation):
        envelopes.check_continuity(broken)


def test_breakpoints():
    assert [str(theta) for theta in CUBQUARSEX.breakpoints] == [
        "3/5",
        "6/7",
        "6/5",
        "3/2",
        "9/5",
        "108/55",
        "11/5",
        "5/2",
    ]
    assert RESD2.breakpoints == []


@pytest.mark.parametrize(
    "x_exp,y_exp,expected",
    [
        (3, 10, 10**1.5),
        (7, 10, 10 ** (28 / 3 - 5)),
        (10, 10, 10**7.5),
        (6, 5, 10**4.5),
        (7, 4, 10 ** (35 / 6)),
        (19, 10, 10 ** (190 / 9 - 5)),
        (21, 10, 10**17.5),
        (12, 5, 10 ** (8 + 5 / 3)),
        (16, 2, 10**16 / 10),
    ],
)
def test_cubquarsex_pieces(x_exp, y_exp, expected):
    value = envelopes.envelope_eval("cubquarsex", 10.0**x_exp, 10.0**y_exp)
    assert value == pytest.approx(expected, rel=1e-9)


def test_resd2():
    x = 1e4
    assert envelopes.envelope_eval("resd2", x, 1e3) == pytest.approx(x * math.sqrt(math.log(x) / 1e3))
    assert envelopes.envelope_eval("resd2", x, 2e3) == pytest.approx(math.sqrt(x) * math.log(x))
    # the switch happens where x / log x crosses y
    crossover = x / math.log(x)
    assert RESD2.piece_at(x, crossover * 0.999) is RESD2.pieces[0]
    assert RESD2.piece_at(x, crossover * 1.001) is RESD2.pieces[1]


def test_libound():
    x, y = 1e6, 1e2
    expected = x * y ** (-1 / 21) / math.log(x) / 2
    assert envelopes.envelope_eval("libound", x, y, d=3) == pytest.approx(expected)
    assert envelopes.envelope_eval("libound", 1e4, 1e8, d=2) == pytest.approx(1e4 ** (5 / 6))


def test_resd2smooth():
    x, Y = 1e4, 1e6
    expected = math.log(math.log(x)) + (x ** (7 / 8) / Y**0.25 + x / 1e3) * math.log(x * Y)
    assert envelopes.envelope_eval("resd2smooth", x, Y) == pytest.approx(expected)


@pytest.mark.parametrize("x,y", [(1, 10), (10, 1), (0.5, 0.5)])
def test_envelope_eval__rejects_small_arguments(x, y):
    with pytest.raises(ValueError):
        envelopes.envelope_eval("resd2", x, y)


def test_envelope_eval__rejects_unknown_theorem():
    with pytest.raises(ValueError):
        envelopes.envelope_eval("hooley", 100, 100)


def test_eps_factor():
    assert envelopes.eps_factor(100, 100, 0.5) == pytest.approx(100)
    assert envelopes.eps_factor(100, 100) == pytest.approx(1e4**envelopes.DEFAULT_EPS)


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_dominance(d):
    for x_exp in range(2, 13):
        for y_exp in range(2, 9):
            for half in (0, 0.5):
                x, y = 10.0 ** (x_exp + half), 10.0 ** (y_exp + half)
                result = envelopes.dominance(x, y, d)
                assert result.holds, (x, y, result)
                assert result.new <= result.libound


def test_dominance__rejects_other_orders():
    with pytest.raises(ValueError):
        envelopes.dominance(1e4, 1e3, 5)
