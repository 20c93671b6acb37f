import cmath
import math

import pytest

from ntlab import testing as T


@pytest.mark.parametrize(
    "funcname,args,expected",
    [
        ("is_prime_trial", (97,), True),
        ("is_prime_trial", (91,), False),
        ("is_prime_trial", (1,), False),
        ("primes_below", (20,), [2, 3, 5, 7, 11, 13, 17, 19]),
        ("dth_powers", (13, 4), {1, 3, 9}),
        ("dth_powers", (7, 3), {1, 6}),
        ("brute_count_P", (2, 2, 100), 11),
        ("brute_count_P", (2, 3, 100), 2),
        ("brute_index", (7, 3, 2), 2),
        ("brute_index", (13, 2, 5), 9),
        ("brute_fundamental_discriminants", (10,), [-8, -7, -4, -3, 5, 8]),
        ("brute_jutila", (2, 1), 0),
    ],
)
def test_oracles(funcname, args, expected):
    func = getattr(T, funcname)
    assert func(*args) == expected


def test_brute_mean_numerator():
    assert T.brute_mean_numerator(2, 100, 2) == T.brute_count_P(2, 2, 100) == 11


def test_brute_tau():
    assert cmath.isclose(T.brute_tau(3, 1), 1j * math.sqrt(3), abs_tol=1e-12)
    assert cmath.isclose(T.brute_tau(5, 1), math.sqrt(5), abs_tol=1e-12)


def test_brute_index__rejects_non_power():
    with pytest.raises(ValueError):
        T.brute_index(7, 2, 3)


def test_brute_large_sieve__no_moduli():
    assert T.brute_large_sieve(2, 2, 3, {3: 1}) == 0
