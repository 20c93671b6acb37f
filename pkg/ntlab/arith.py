"""
Exact multiplicative-arithmetic kernels shared by every other module.

Scalar functions work on Python integers and never overflow. The ``*_table``
and ``*_array`` functions are their numpy counterparts for bulk ranges.
"""
import math
from functools import lru_cache
from typing import Dict, List, Tuple

import mpmath
import numpy as np

from ntlab.models import SquarePartDecomposition

#: Trial division gives up above this bound; larger cofactors must be prime.
TRIAL_DIVISION_LIMIT = 10**6

#: Full index arrays are built for primes up to this bound, BSGS is used above it.
INDEX_TABLE_LIMIT = 1 << 20

#: Largest modulus for which ``(n - 1)**2`` fits in a signed 64-bit integer.
INT64_MODULUS_LIMIT = 3_037_000_499

#: li(2), the constant offset between li and the integral from 2.
LI2 = 1.0451637801174927848445888891946131365226155781512

#: The Meissel–Mertens constant M in Σ_{p≤x} 1/p = log log x + M + o(1).
MERTENS_CONSTANT = 0.2614972128476427837554268386086958590516

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def powmod(a: int, e: int, n: int) -> int:
    """
    Compute ``a**e mod n`` by square-and-multiply.

    >>> powmod(2, 6, 13)
    12
    """
    if n < 1:
        raise ValueError(f"modulus must be positive; got {n}")
    if e < 0:
        raise ValueError(f"exponent must be non-negative; got {e}")
    return pow(a % n, e, n)


def powmod_array(values: np.ndarray, e: int, n: int) -> np.ndarray:
    """
    Vectorised :func:`powmod` over an integer array.

    Uses int64 arithmetic while ``(n - 1)**2`` fits, and Python integers
    (object arrays) above that.
    """
    if n < 1:
        raise ValueError(f"modulus must be positive; got {n}")
    if e < 0:
        raise ValueError(f"exponent must be non-negative; got {e}")
    dtype = np.int64 if n <= INT64_MODULUS_LIMIT else object
    base = np.mod(np.asarray(values, dtype=dtype), n)
    result = np.ones_like(base)
    if n == 1:
        return np.zeros_like(base)
    while e:
        if e & 1:
            result = result * base % n
        e >>= 1
        if e:
            base = base * base % n
    return result


def kronecker(a: int, n: int) -> int:
    """
    Kronecker symbol ``(a/n)`` for any integers ``a`` and ``n``.

    Conventions: ``(a/0)`` is 1 for ``a = ±1`` and 0 otherwise;
    ``(a/-1)`` is -1 for ``a < 0`` and 1 otherwise; ``(a/2)`` is 0 for even
    ``a``, 1 for ``a ≡ ±1 (mod 8)`` and -1 for ``a ≡ ±3 (mod 8)``.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        twos = (n & -n).bit_length() - 1
        n >>= twos
        if twos & 1 and a % 8 in (3, 5):
            result = -result
    return result * _jacobi_odd(a, n)


def jacobi(a: int, n: int, *, strict: bool = True) -> int:
    """
    Jacobi symbol ``(a/n)`` for odd positive ``n``.

    With ``strict=False`` any ``n`` is accepted and the Kronecker extension
    (see :func:`kronecker`) is used.

    >>> jacobi(2, 7)
    1
    >>> jacobi(3, 9)
    0
    """
    if n < 1 or n % 2 == 0:
        if strict:
            raise ValueError(f"Jacobi symbol needs an odd positive modulus; got {n}")
        return kronecker(a, n)
    return _jacobi_odd(a, n)


def _jacobi_odd(a: int, n: int) -> int:
    acc = 1
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                acc = -acc
        if a % 4 == 3 and n % 4 == 3:
            acc = -acc
        a, n = n % a, a
    return acc if n == 1 else 0


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_prime(n: int) -> bool:
    """
    Deterministic Miller–Rabin, exact for ``n < 3.3·10**24``.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def _factorize(n: int, limit: int) -> Tuple[Tuple[int, int], ...]:
    factors: List[Tuple[int, int]] = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    p, step = 5, 2
    while p * p <= n:
        if p > limit:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        if p * p <= n and not is_prime(n):
            raise ValueError(
                f"cofactor {n} is composite and beyond the trial-division bound {limit}"
            )
        factors.append((n, 1))
    return tuple(factors)


def factorize(n: int, *, limit: int = TRIAL_DIVISION_LIMIT) -> List[Tuple[int, int]]:
    """
    Factor ``n >= 1`` into ``[(prime, exponent), ...]`` in ascending order.

    Raises:
        ValueError: if a composite cofactor survives trial division up to ``limit``.
    """
    if n < 1:
        raise ValueError(f"can only factor positive integers; got {n}")
    return list(_factorize(n, limit))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def mobius(a: int) -> int:
    """
    Möbius function: ``(-1)**k`` for a product of ``k`` distinct primes, 0 otherwise.
    """
    factors = factorize(a)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def is_squarefree(a: int) -> bool:
    return mobius(a) != 0


def square_part(a: int) -> SquarePartDecomposition:
    """
    Decompose ``a = l_sf · sq²`` with ``l_sf`` squarefree.

    The second decomposition ``a = core_l² · core_m`` with ``core_m``
    squarefree is the same factorisation read the other way round, so
    ``core_l == sq`` and ``core_m == l_sf``.

    >>> square_part(12)
    SquarePartDecomposition(a=12, l_sf=3, sq=2, core_l=2, core_m=3)
    """
    if a < 1:
        raise ValueError(f"square_part needs a positive integer; got {a}")
    l_sf = sq = 1
    for p, e in factorize(a):
        l_sf *= p ** (e % 2)
        sq *= p ** (e // 2)
    return SquarePartDecomposition(a=a, l_sf=l_sf, sq=sq, core_l=sq, core_m=l_sf)


def squarefree_part(a: int) -> int:
    """
    Signed squarefree part: ``a = l·m²`` with ``l`` squarefree and of the sign of ``a``.
    """
    if a == 0:
        raise ValueError("0 has no squarefree part")
    sign = -1 if a < 0 else 1
    return sign * square_part(abs(a)).l_sf


def epsilon_d(a: int, d: int) -> int:
    """
    Hooley's correction factor: 2 if ``l ≡ 1 (mod 4)`` and ``2l | d``, else 1,
    where ``l`` is the squarefree part of ``a``.

    Raises:
        ValueError: if ``a`` is a square or ``-1``, or ``d`` is not squarefree.

    >>> epsilon_d(5, 10)
    2
    """
    if a == -1 or is_square(a):
        raise ValueError(f"a must not be -1 or a square; got {a}")
    if d < 1 or not is_squarefree(d):
        raise ValueError(f"d must be a squarefree positive integer; got {d}")
    l = squarefree_part(a)
    if l % 4 == 1 and d % (2 * abs(l)) == 0:
        return 2
    return 1


@lru_cache(maxsize=65536)
def primitive_root(p: int) -> int:
    """
    Smallest positive primitive root modulo the prime ``p``.

    >>> primitive_root(41)
    6
    """
    if not is_prime(p):
        raise ValueError(f"primitive_root needs a prime; got {p}")
    if p == 2:
        return 1
    cofactors = [(p - 1) // q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, c, p) != 1 for c in cofactors):
            return g
    raise AssertionError(f"no primitive root found mod {p}")  # pragma: no cover


@lru_cache(maxsize=64)
def index_table(p: int, g: int) -> np.ndarray:
    """
    Discrete logarithms to base ``g`` for every residue mod ``p``.

    ``table[a]`` is the ``k`` in ``[0, p-1)`` with ``g**k ≡ a``, and
    ``table[0] == -1``. Built from ``√p`` baby steps and giant steps so that
    the work is vectorised.
    """
    if p > INDEX_TABLE_LIMIT:
        raise ValueError(f"index tables are limited to p <= {INDEX_TABLE_LIMIT}; got {p}")
    order = p - 1
    block = math.isqrt(order) + 1
    small = np.empty(block, dtype=np.int64)
    value = 1
    for s in range(block):
        small[s] = value
        value = value * g % p
    giant_count = -(-order // block)
    giants = np.empty(giant_count, dtype=np.int64)
    step, value = value, 1
    for t in range(giant_count):
        giants[t] = value
        value = value * step % p
    powers = (giants[:, None] * small[None, :] % p).ravel()[:order]
    table = np.full(p, -1, dtype=np.int64)
    table[powers] = np.arange(order, dtype=np.int64)
    if np.count_nonzero(table[1:] < 0):
        raise ValueError(f"{g} is not a primitive root mod {p}")
    return table


def bsgs_log(p: int, g: int, a: int) -> int:
    """
    Baby-step giant-step discrete logarithm of ``a`` to base ``g`` mod ``p``.
    """
    m = math.isqrt(p - 1) + 1
    baby: Dict[int, int] = {}
    value = 1
    for j in range(m):
        baby.setdefault(value, j)
        value = value * g % p
    factor = pow(g, -m, p)
    gamma = a % p
    for i in range(m):
        if gamma in baby:
            return (i * m + baby[gamma]) % (p - 1)
        gamma = gamma * factor % p
    raise ValueError(f"{a} is not a power of {g} mod {p}")


def discrete_log(p: int, g: int, a: int) -> int:
    """
    The exponent ``k`` in ``[0, p-1)`` with ``g**k ≡ a (mod p)``.

    Uses a cached :func:`index_table` for ``p <= INDEX_TABLE_LIMIT`` and
    :func:`bsgs_log` above it.

    >>> discrete_log(7, 3, 6)
    3
    """
    a %= p
    if a == 0:
        raise ValueError(f"discrete_log is undefined for a ≡ 0 (mod {p})")
    if p <= INDEX_TABLE_LIMIT:
        return int(index_table(p, g)[a])
    return bsgs_log(p, g, a)


def li_series(x: float) -> float:
    """
    Logarithmic integral by Ramanujan's series, for ``x > 1``.
    """
    if x <= 1:
        raise ValueError(f"li series needs x > 1; got {x}")
    log_x = math.log(x)
    terms: List[float] = []
    power = 1.0
    inner = 0.0
    n = 0
    while True:
        n += 1
        power *= log_x / n / (2 if n > 1 else 1)
        if n % 2:
            inner += 1.0 / n
        term = power * inner
        terms.append(term if n % 2 else -term)
        if n > 2 * log_x and abs(term) < 1e-17 * max(1.0, abs(math.fsum(terms))):
            break
    return float(np.euler_gamma) + math.log(log_x) + math.sqrt(x) * math.fsum(terms)


def li_quadrature(x: float) -> float:
    """
    Logarithmic integral as ``li(2) + ∫_2^x dt/log t`` by adaptive quadrature, for ``x >= 2``.
    """
    if x < 2:
        raise ValueError(f"li quadrature needs x >= 2; got {x}")
    with mpmath.workdps(30):
        tail = mpmath.quad(lambda t: 1 / mpmath.log(t), [2, x])
    return LI2 + float(tail)


def li(x: float) -> float:
    """
    Logarithmic integral li(x), principal value of ``∫_0^x dt/log t``.

    The series is used up to ``1e15``; above it cancellation costs too many
    digits and quadrature takes over.

    >>> round(li(100), 3)
    30.126
    """
    if x <= 1:
        raise ValueError(f"li is only evaluated for x > 1; got {x}")
    if x <= 1e15:
        return li_series(x)
    return li_quadrature(x)


def mertens_sum(x: float) -> float:
    """
    Correctly rounded ``Σ_{p≤x} 1/p``.

    >>> mertens_sum(2)
    0.5
    """
    from ntlab.primes import primes_up_to

    if x < 2:
        raise ValueError(f"mertens_sum needs x >= 2; got {x}")
    return math.fsum((1.0 / primes_up_to(int(x))).tolist())


def hooley_error_scale(d: int, x: float) -> float:
    """
    ``√x · log(dx)``, the size of the conditional error next to Hooley's main term.
    """
    return math.sqrt(x) * math.log(d * x)


def smallest_prime_factor_table(n: int) -> np.ndarray:
    """
    ``spf[k]`` is the smallest prime factor of ``k`` for ``2 <= k <= n``; ``spf[0] == spf[1] == 0``.
    """
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == 0:
            multiples = spf[p * p :: p]
            multiples[multiples == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest[rest >= 2]] = rest[rest >= 2]
    return spf


def square_part_table(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Arrays ``(l_sf, sq)`` indexed by ``a`` in ``[0, n]`` with ``a = l_sf · sq²``.

    Index 0 is filled with zeros.
    """
    sq = np.ones(n + 1, dtype=np.int64)
    for k in range(2, math.isqrt(n) + 1):
        sq[k * k :: k * k] = k
    a = np.arange(n + 1, dtype=np.int64)
    l_sf = a // (sq * sq)
    sq[0] = 0
    return l_sf, sq


def mobius_table(lo: int, hi: int) -> np.ndarray:
    """
    Möbius function on ``[lo, hi)``, segmented so that only ``√hi`` primes are needed.
    """
    from ntlab.primes import primes_up_to

    if lo < 1 or hi < lo:
        raise ValueError(f"mobius_table needs 1 <= lo <= hi; got [{lo}, {hi})")
    size = hi - lo
    mu = np.ones(size, dtype=np.int64)
    rest = np.arange(lo, hi, dtype=np.int64)
    for p in primes_up_to(math.isqrt(max(hi - 1, 1))).tolist():
        start = (-lo) % p
        mu[start::p] *= -1
        rest[start::p] //= p
        pp = p * p
        mu[(-lo) % pp :: pp] = 0
    mu[rest > 1] *= -1
    return mu
