"""
Brute-force oracles for writing tests against ntlab.

Each helper recomputes something ntlab computes, using the most literal
definition available and no shared tables, so that agreement means
something. They are slow; keep arguments small.
"""
import cmath
import math
from typing import Dict, List, Mapping, Set

from ntlab.arith import is_squarefree, kronecker


def is_prime_trial(n: int) -> bool:
    """
    >>> [n for n in range(20) if is_prime_trial(n)]
    [2, 3, 5, 7, 11, 13, 17, 19]
    """
    if n < 2:
        return False
    return all(n % q for q in range(2, math.isqrt(n) + 1))


def primes_below(limit: int) -> List[int]:
    """
    Primes ``p < limit`` by trial division.
    """
    return [n for n in range(2, limit) if is_prime_trial(n)]


def dth_powers(p: int, d: int) -> Set[int]:
    """
    ``{b^d mod p : 1 <= b < p}``, the non-zero ``d``-th powers mod ``p``.

    >>> sorted(dth_powers(7, 2))
    [1, 2, 4]
    """
    return {pow(b, d, p) for b in range(1, p)}


def brute_count_P(a: int, d: int, x: float) -> int:
    """
    Primes ``p <= x``, ``p ≡ 1 (mod d)``, ``p ∤ a``, with ``a`` a ``d``-th power mod ``p``.
    """
    return sum(
        1
        for p in primes_below(math.floor(x) + 1)
        if p > 2 and p % d == 1 and a % p and a % p in dth_powers(p, d)
    )


def brute_mean_numerator(d: int, x: float, y: float) -> int:
    """
    ``Σ_{2<=a<=y} P_{(a,d)}(x)``, the integer that ``mean_value`` divides by ``y``.
    """
    return sum(brute_count_P(a, d, x) for a in range(2, math.floor(y) + 1))


def brute_index(p: int, g: int, a: int) -> int:
    """
    The ``e`` with ``g^e ≡ a (mod p)``, by stepping through powers of ``g``.
    """
    value = 1
    for e in range(p - 1):
        if value == a % p:
            return e
        value = value * g % p
    raise ValueError(f"{a} is not a power of {g} mod {p}")


def brute_tau(k: int, m: int) -> complex:
    """
    ``Σ_{a mod k} (a/k)·e(am/k)`` term by term.
    """
    return sum(
        (kronecker(a, k) * cmath.exp(2j * math.pi * a * m / k) for a in range(k)),
        0j,
    )


def brute_fundamental_discriminants(X: int) -> List[int]:
    """
    Fundamental discriminants ``D != 1`` with ``|D| <= X``.
    """
    found = []
    for D in range(-X, X + 1):
        if D in (0, 1):
            continue
        if D % 4 == 1 and is_squarefree(abs(D)):
            found.append(D)
        elif D % 4 == 0 and (D // 4) % 4 in (2, 3) and is_squarefree(abs(D // 4)):
            found.append(D)
    return found


def brute_jutila(X: int, Y: int) -> int:
    """
    ``Σ_D (Σ_{n<=Y} (D/n))²`` over fundamental discriminants, one symbol at a time.
    """
    return sum(
        sum(kronecker(D, n) for n in range(1, Y + 1)) ** 2
        for D in brute_fundamental_discriminants(X)
    )


def brute_large_sieve(Q: int, M: int, k: int, coeffs: Mapping[int, int]) -> int:
    """
    ``Σ_q Σ_{χ^k=χ₀, χ≠χ₀} |Σ_m a_m χ(m)|²`` over primes ``q ∈ (Q, 2Q]``, ``q ≡ 1 (mod k)``.

    Characters are built from a generator found by search and indices found by
    stepping; the result is rounded to the integer it must be.
    """
    total = 0.0
    for q in primes_below(2 * Q + 1):
        if q <= Q or q % k != 1:
            continue
        g = next(c for c in range(2, q) if len({pow(c, e, q) for e in range(q - 1)}) == q - 1)
        indices: Dict[int, int] = {m: brute_index(q, g, m) for m in coeffs if m % q}
        for j in range(1, k):
            inner = sum(
                coeffs[m] * cmath.exp(2j * math.pi * j * e / k) for m, e in indices.items()
            )
            total += abs(inner) ** 2
    return round(total)
