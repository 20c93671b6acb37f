"""
Odd-only segmented sieve of Eratosthenes.

:func:`iter_prime_segments` is the bulk interface and yields one numpy array
of primes per segment. :func:`stream_primes` pushes the same primes one at a
time into a visitor. Memory use is bounded by ``segment_size`` regardless of
how far the range extends.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Callable, Iterator, List, Optional

import numpy as np

from ntlab.models import PrimeRange

logger = logging.getLogger(__name__)


def simple_sieve(limit: int) -> np.ndarray:
    """
    All primes ``<= limit`` from a single unsegmented sieve.
    """
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


@lru_cache(maxsize=8)
def _base_primes(limit: int) -> np.ndarray:
    # odd base primes only; 2 is handled separately
    return simple_sieve(limit)[1:]


def _apply_filter(primes: np.ndarray, prime_range: PrimeRange) -> np.ndarray:
    if prime_range.modulus_filter is None:
        return primes
    d, r = prime_range.modulus_filter
    return primes[primes % d == r % d]


def iter_prime_segments(prime_range: PrimeRange) -> Iterator[np.ndarray]:
    """
    Yield the primes of ``prime_range`` as ascending int64 arrays, one per sieve segment.

    Empty segments are skipped.
    """
    lo, hi = prime_range.lo, prime_range.hi
    if lo <= 2 < hi:
        head = _apply_filter(np.array([2], dtype=np.int64), prime_range)
        if head.size:
            yield head
    low = max(lo, 3)
    if low % 2 == 0:
        low += 1
    if low >= hi:
        return
    base = _base_primes(math.isqrt(hi - 1))
    span = 2 * prime_range.segment_size
    while low < hi:
        high = min(low + span, hi)
        mask = np.ones((high - low + 1) // 2, dtype=bool)
        for p in base.tolist():
            p2 = p * p
            if p2 >= high:
                break
            start = max(p2, -(-low // p) * p)
            if start % 2 == 0:
                start += p
            if start < high:
                mask[(start - low) // 2 :: p] = False
        segment = low + 2 * np.flatnonzero(mask).astype(np.int64)
        segment = _apply_filter(segment, prime_range)
        logger.debug("sieved [%d, %d): %d primes", low, high, segment.size)
        if segment.size:
            yield segment
        low = high if high % 2 else high + 1


def stream_primes(prime_range: PrimeRange, visitor: Callable[[int], None]) -> int:
    """
    Call ``visitor(p)`` for each prime in ``prime_range`` in ascending order.

    Returns:
        The number of primes visited.

    >>> stream_primes(PrimeRange(lo=2, hi=101), lambda p: None)
    25
    """
    count = 0
    for segment in iter_prime_segments(prime_range):
        for p in segment.tolist():
            visitor(p)
        count += segment.size
    return count


def count_primes(prime_range: PrimeRange) -> int:
    return sum(int(segment.size) for segment in iter_prime_segments(prime_range))


def primes_up_to(x: float) -> np.ndarray:
    """
    All primes ``p <= x`` as one int64 array.
    """
    limit = math.floor(x)
    if limit < 2:
        return np.array([], dtype=np.int64)
    segments = list(iter_prime_segments(PrimeRange(lo=2, hi=limit + 1)))
    return np.concatenate(segments)


@lru_cache(maxsize=256)
def _pi_class(limit: int, d: int) -> int:
    modulus_filter = None if d == 1 else (d, 1)
    return count_primes(PrimeRange(lo=2, hi=limit + 1, modulus_filter=modulus_filter))


def pi(x: float) -> int:
    """
    Number of primes ``p <= x``.

    >>> pi(10)
    4
    """
    if x < 2:
        raise ValueError(f"pi needs x >= 2; got {x}")
    return _pi_class(math.floor(x), 1)


def pi_class(x: float, d: int) -> int:
    """
    Number of primes ``p <= x`` with ``p ≡ 1 (mod d)``.

    >>> pi_class(100, 4)
    11
    """
    if x < 2:
        raise ValueError(f"pi_class needs x >= 2; got {x}")
    if d < 1:
        raise ValueError(f"pi_class needs d >= 1; got {d}")
    return _pi_class(math.floor(x), d)


def split_range(prime_range: PrimeRange, shards: int) -> List[PrimeRange]:
    """
    Cut ``prime_range`` into ``shards`` consecutive sub-ranges that cover it exactly.
    """
    if shards < 1:
        raise ValueError(f"shards must be positive; got {shards}")
    edges = np.linspace(prime_range.lo, prime_range.hi, shards + 1).astype(np.int64).tolist()
    edges[0], edges[-1] = prime_range.lo, prime_range.hi
    return [
        prime_range.copy(update={"lo": a, "hi": b})
        for a, b in zip(edges, edges[1:])
        if b > a
    ]


def count_primes_sharded(
    prime_range: PrimeRange,
    shards: int = 4,
    workers: Optional[int] = None,
) -> int:
    """
    Count the primes of ``prime_range`` by sieving ``shards`` sub-ranges, in
    separate processes when ``workers`` is more than 1.

    The result does not depend on where the shard boundaries fall.
    """
    parts = split_range(prime_range, shards)
    if workers is not None and workers <= 1:
        return sum(count_primes(part) for part in parts)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(count_primes, parts))
