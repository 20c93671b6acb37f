"""
Counts of primes at which ``a`` is a ``d``-th power residue, and their averages over ``a``.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ntlab.arith import (
    epsilon_d,
    euler_phi,
    li,
    powmod_array,
    smallest_prime_factor_table,
    square_part_table,
)
from ntlab.characters import (
    CyclotomicInt,
    build_table,
    class_sum,
    index_classes,
    ring_for,
)
from ntlab.models import MeanValueResult, PrimeRange, ResidueCheck
from ntlab.primes import iter_prime_segments, pi, pi_class, primes_up_to, split_range
from ntlab.types import AMode, MeanMode
from ntlab.utils import InvariantViolation, warn

logger = logging.getLogger(__name__)

#: Orders for which the character decomposition is evaluated exactly.
CHARACTER_ORDERS = (2, 3, 4, 6)

#: Every failure is counted; only this many are listed.
MAX_LISTED_FAILURES = 20


def is_dth_power_residue(a: int, p: int, d: int) -> bool:
    """
    Whether ``a`` is a ``d``-th power modulo the prime ``p ≡ 1 (mod d)``.

    >>> is_dth_power_residue(2, 31, 3)
    True

    Raises:
        ValueError: if ``p | a``; the principal-character case is the caller's to handle.
    """
    if d < 1 or (p - 1) % d:
        raise ValueError(f"need p ≡ 1 (mod d); got p={p}, d={d}")
    if a % p == 0:
        raise ValueError(f"p divides a (a={a}, p={p})")
    return pow(a, (p - 1) // d, p) == 1


def count_P(a: int, d: int, x: float) -> int:
    """
    ``P_{(a,d)}(x)``: primes ``p <= x`` with ``p ≡ 1 (mod d)``, ``p ∤ a`` and
    ``a`` a ``d``-th power residue mod ``p``.

    >>> count_P(2, 2, 100)
    11
    """
    if x < 2:
        return 0
    count = 0
    primes = PrimeRange(lo=3, hi=math.floor(x) + 1, modulus_filter=(d, 1))
    for segment in iter_prime_segments(primes):
        for p in segment.tolist():
            if a % p and pow(a, (p - 1) // d, p) == 1:
                count += 1
    return count


def power_class_counts(p: int, d: int, a_values: Sequence[int]) -> np.ndarray:
    """
    How many of ``a_values`` fall in each index class ``ind(a) mod d``; multiples of ``p`` are left out.
    """
    cls = index_classes(p, d, a_values)
    return np.bincount(cls[cls >= 0], minlength=d)


def hooley_main_term(a: int, d: int, x: float) -> float:
    """
    ``ε(d)/(d·φ(d))·li(x)``, the conditional main term for ``P_{(a,d)}(x)``.

    >>> round(hooley_main_term(5, 10, 100), 3)
    1.506
    """
    return epsilon_d(a, d) / (d * euler_phi(d)) * li(x)


class IndexClassEngine:
    """
    Index classes mod ``d`` of every integer in ``[0, n]`` for one prime at a time.

    Each ``1 <= v <= n`` is factored once into primes ``q <= n``. For a given
    prime ``p`` only the classes of those ``q`` are computed; the class of
    ``v`` is then the exponent-weighted sum by complete multiplicativity.
    """

    def __init__(self, n: int):
        self.n = n
        self.small_primes = primes_up_to(n)
        spf = smallest_prime_factor_table(max(n, 2))
        rows: List[np.ndarray] = []
        cols: List[np.ndarray] = []
        rest = np.arange(n + 1, dtype=np.int64)
        index = np.arange(n + 1, dtype=np.int64)
        while True:
            live = rest > 1
            if not live.any():
                break
            q = spf[rest[live]]
            rows.append(index[live])
            cols.append(np.searchsorted(self.small_primes, q))
            rest[live] //= q
        self.rows = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
        self.cols = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)

    def classes(self, p: int, d: int) -> np.ndarray:
        """
        ``ind(v) mod d`` for ``0 <= v <= n``, with ``-1`` where ``p | v``.
        """
        size = self.n + 1
        q_classes = index_classes(p, d, self.small_primes)
        divides = q_classes < 0
        weights = np.where(divides, 0, q_classes)[self.cols]
        sums = np.bincount(self.rows, weights=weights, minlength=size)
        out = np.rint(sums).astype(np.int64) % d
        if divides.any():
            hit = np.bincount(self.rows, weights=divides[self.cols], minlength=size) > 0
            out[hit] = -1
        out[0] = -1
        return out


@lru_cache(maxsize=4)
def _engine(n: int) -> IndexClassEngine:
    return IndexClassEngine(n)


def _a_values(y: float, a_mode: AMode) -> np.ndarray:
    a = np.arange(2, math.floor(y) + 1, dtype=np.int64)
    if a_mode == "nonsquare":
        roots = np.sqrt(a).astype(np.int64)
        a = a[(roots * roots != a) & ((roots + 1) * (roots + 1) != a)]
    elif a_mode != "all":
        raise ValueError(f"unknown a_mode {a_mode!r}")
    return a


_Task = Tuple[PrimeRange, int, float, AMode]


class _Partial(NamedTuple):
    s1: int
    s2: int
    l2: int
    pv: float
    primes: int


def _character_partial(args: _Task) -> _Partial:
    prime_range, d, y, a_mode = args
    a = _a_values(y, a_mode)
    engine = _engine(math.floor(y))
    s1 = s2 = l2 = primes = 0
    pv = 0.0
    for segment in iter_prime_segments(prime_range):
        for p in segment.tolist():
            cls = engine.classes(p, d)[a]
            counts = np.bincount(cls[cls >= 0], minlength=d)
            coprime = int(counts.sum())
            chi_total = sum(
                (class_sum(counts, d, j) for j in range(1, d)), CyclotomicInt(0, ring=ring_for(d))
            )
            if chi_total.b or chi_total.a != d * int(counts[0]) - coprime:
                raise InvariantViolation(
                    f"non-principal character sums mod {p} add up to {chi_total!r}, "
                    f"expected {d * int(counts[0]) - coprime}"
                )
            s1 += coprime
            s2 += chi_total.a
            l2 += d * int(np.dot(counts, counts)) - coprime * coprime
            pv += 6 * math.sqrt(p) * math.log(p)
            primes += 1
    return _Partial(s1, s2, l2, pv, primes)


def _direct_partial(args: _Task) -> _Partial:
    prime_range, d, y, a_mode = args
    a = _a_values(y, a_mode)
    s1 = total = primes = 0
    pv = 0.0
    for segment in iter_prime_segments(prime_range):
        for p in segment.tolist():
            coprime = int(np.count_nonzero(a % p))
            residues = int(np.count_nonzero(powmod_array(a, (p - 1) // d, p) == 1))
            s1 += coprime
            total += d * residues
            pv += 6 * math.sqrt(p) * math.log(p)
            primes += 1
    return _Partial(s1, total - s1, 0, pv, primes)


def _run_partials(
    worker: Callable[[_Task], _Partial],
    prime_range: PrimeRange,
    d: int,
    y: float,
    a_mode: AMode,
    workers: Optional[int],
) -> _Partial:
    if workers is None or workers <= 1:
        return worker((prime_range, d, y, a_mode))
    tasks = [(part, d, y, a_mode) for part in split_range(prime_range, workers * 4)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(worker, tasks))
    # exact integer reduction; only pv is a float and it is summed in shard order
    return _Partial(
        sum(part.s1 for part in parts),
        sum(part.s2 for part in parts),
        sum(part.l2 for part in parts),
        math.fsum(part.pv for part in parts),
        sum(part.primes for part in parts),
    )


def mean_value(
    d: int,
    x: float,
    y: float,
    a_mode: AMode = "all",
    mode: MeanMode = "auto",
    workers: Optional[int] = None,
) -> MeanValueResult:
    """
    ``S = (1/y)·Σ_{2≤a≤y} P_{(a,d)}(x)`` split as ``S = S1 + S2``.

    ``S1`` counts, for each prime ``p ≤ x`` with ``p ≡ 1 (mod d)``, the ``a``
    not divisible by ``p``; ``S2`` adds the non-principal character sums
    ``Σ_{χ^d=χ₀, χ≠χ₀} Σ_a χ(a)``. Both are exact integers over ``d·y``.

    Args:
        d: The power. Character mode handles ``d`` in 2, 3, 4, 6.
        x: Prime bound.
        y: Upper end of the ``a`` range.
        a_mode: ``"all"`` averages over every ``a``; ``"nonsquare"`` skips perfect squares.
        mode: ``"character"``, ``"direct"`` (one power test per ``a`` and ``p``),
            or ``"auto"`` which picks character mode when it can.
        workers: Processes to spread prime shards over.
    """
    if y < 2:
        raise ValueError(f"mean_value needs y >= 2; got {y}")
    if x < 3:
        raise ValueError(f"mean_value needs x >= 3; got {x}")
    if d < 2:
        raise ValueError(f"mean_value needs d >= 2; got {d}")
    if mode == "auto":
        if d in CHARACTER_ORDERS:
            mode = "character"
        else:
            warn(f"d={d} has no exact character decomposition; using direct mode")
            mode = "direct"
    if mode == "character" and d not in CHARACTER_ORDERS:
        raise ValueError(f"character mode needs d in {CHARACTER_ORDERS}; got {d}")
    if mode not in ("character", "direct"):
        raise ValueError(f"unknown mode {mode!r}")

    prime_range = PrimeRange(lo=3, hi=math.floor(x) + 1, modulus_filter=(d, 1))
    worker = _character_partial if mode == "character" else _direct_partial
    partial = _run_partials(worker, prime_range, d, y, a_mode, workers)

    denominator = d * y
    S1 = partial.s1 / denominator
    S2 = partial.s2 / denominator
    S = (partial.s1 + partial.s2) / denominator
    pi_x = pi(x)
    pi_class_x = pi_class(x, d)
    main_term = pi_x / 2 if d == 2 else pi_class_x / d

    s2_polya_bound = (d - 1) * partial.pv / denominator
    if abs(S2) > s2_polya_bound * (1 + 1e-12):
        raise InvariantViolation(
            f"|S2| = {abs(S2)} exceeds the Pólya–Vinogradov bound {s2_polya_bound}"
        )
    S2_l2 = partial.l2 if mode == "character" else None
    s2_cauchy_bound = None
    if S2_l2 is not None:
        s2_cauchy_bound = math.sqrt((d - 1) * partial.primes) * math.sqrt(S2_l2) / denominator
        if abs(S2) > s2_cauchy_bound * (1 + 1e-12):
            raise InvariantViolation(f"|S2| = {abs(S2)} exceeds the Cauchy–Schwarz bound {s2_cauchy_bound}")

    logger.info("mean_value d=%d x=%s y=%s mode=%s: S=%.6g main=%.6g", d, x, y, mode, S, main_term)
    return MeanValueResult(
        d=d,
        x=x,
        y=y,
        a_mode=a_mode,
        mode=mode,
        S=S,
        S1=S1,
        S2=S2,
        main_term=main_term,
        abs_error=abs(S - main_term),
        S1_numerator=partial.s1,
        S2_numerator=partial.s2,
        a_count=int(_a_values(y, a_mode).size),
        pi_x=pi_x,
        pi_class_x=pi_class_x,
        s1_error_scale=math.log(math.log(x)) + pi_x / y,
        s2_polya_bound=s2_polya_bound,
        S2_l2=S2_l2,
        s2_cauchy_bound=s2_cauchy_bound,
    )


def square_split_numerator(d: int, x: float, y: float, a_mode: AMode = "all") -> int:
    """
    The integer numerator of ``S2`` recomputed through ``a = l²·m`` with ``m`` squarefree.

    Writing ``χ(a) = χ(l)²·χ(m)``, the class of ``a`` is ``2·ind(l) + ind(m)
    (mod d)``. The result must equal :attr:`MeanValueResult.S2_numerator`.
    """
    if d not in CHARACTER_ORDERS:
        raise ValueError(f"square_split_numerator needs d in {CHARACTER_ORDERS}; got {d}")
    a = _a_values(y, a_mode)
    l_sf, sq = square_part_table(math.floor(y))
    l_values, m_values = sq[a], l_sf[a]
    engine = _engine(math.floor(y))
    total = 0
    for segment in iter_prime_segments(PrimeRange(lo=3, hi=math.floor(x) + 1, modulus_filter=(d, 1))):
        for p in segment.tolist():
            cls = engine.classes(p, d)
            cls_l, cls_m = cls[l_values], cls[m_values]
            units = (cls_l >= 0) & (cls_m >= 0)
            combined = (2 * cls_l[units] + cls_m[units]) % d
            counts = np.bincount(combined, minlength=d)
            total += d * int(counts[0]) - int(counts.sum())
    return total


def verify_residue_definitions(p_max: int, ds: Sequence[int] = CHARACTER_ORDERS) -> ResidueCheck:
    """
    For every prime ``p <= p_max`` with ``p ≡ 1 (mod d)`` and every ``1 <= a < p``,
    check that the power test, a search over ``d``-th powers and the character
    orthogonality sum all say the same thing.
    """
    failures: List[Tuple[int, int, int]] = []
    checked = primes = failure_count = 0
    for d in ds:
        for p in primes_up_to(p_max).tolist():
            if p < 3 or (p - 1) % d:
                continue
            primes += 1
            a = np.arange(1, p, dtype=np.int64)
            by_power_test = powmod_array(a, (p - 1) // d, p) == 1
            by_search = np.zeros(p, dtype=bool)
            by_search[powmod_array(a, d, p)] = True
            table = build_table(p, d)
            if table.unit_root_pairs is None:
                raise ValueError(f"d={d}: character values are only exact for d in {CHARACTER_ORDERS}")
            pairs = np.array([root.pair for root in table.unit_root_pairs], dtype=np.int64)
            cls = table.classes[1:]
            orthogonality = sum(pairs[(j * cls) % d] for j in range(d))
            if (orthogonality[:, 1] != 0).any() or (orthogonality[:, 0] % d != 0).any():
                raise InvariantViolation(f"character orthogonality sums mod {p} are not multiples of {d}")
            by_characters = orthogonality[:, 0] // d == 1
            bad = np.flatnonzero((by_power_test != by_search[1:]) | (by_power_test != by_characters))
            failure_count += bad.size
            if bad.size and len(failures) < MAX_LISTED_FAILURES:
                failures.extend((p, d, int(a[i])) for i in bad[: MAX_LISTED_FAILURES - len(failures)])
            checked += a.size
    logger.info("residue definitions: %d primes, %d residues, %d failures", primes, checked, failure_count)
    return ResidueCheck(
        p_max=p_max,
        ds=list(ds),
        primes=primes,
        checked=checked,
        failure_count=failure_count,
        failures=failures,
    )


__all__ = [
    "IndexClassEngine",
    "count_P",
    "hooley_main_term",
    "is_dth_power_residue",
    "mean_value",
    "power_class_counts",
    "square_split_numerator",
    "verify_residue_definitions",
]
