"""
Dirichlet characters of order dividing ``d`` to a prime modulus ``p``.

With ``g`` a primitive root mod ``p`` and ``ζ = e(1/d)``, the ``d`` characters
are ``χ_j(a) = ζ^(j·ind_g(a))``. Since ``χ_j(a)`` only depends on
``ind_g(a) mod d``, most work here is done on *index classes*: the residue of
the discrete logarithm modulo ``d``.

For ``d`` in :data:`EXACT_ORDERS` character values live in ℤ, ℤ[i] or ℤ[ω]
and are kept as :class:`CyclotomicInt` pairs so that sums are exact.
"""
import logging
import math
from functools import cached_property, lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ntlab.arith import (
    INDEX_TABLE_LIMIT,
    discrete_log,
    index_table,
    is_prime,
    mobius_table,
    powmod_array,
    primitive_root,
    smallest_prime_factor_table,
)
from ntlab.models import (
    JutilaReport,
    LargeSieveReport,
    PolyaVinogradovReport,
    PrimeCharSumReport,
    PrimeRange,
)
from ntlab.primes import iter_prime_segments
from ntlab.types import IntPair, JutilaConvention
from ntlab.utils import InvariantViolation, rel_diff, warn

logger = logging.getLogger(__name__)

#: Orders whose roots of unity have exact integer-pair representations.
EXACT_ORDERS = (1, 2, 3, 4, 6)

#: Largest prime :func:`polya_vinogradov_check` will scan exhaustively by default.
PV_PRIME_CAP = 2000

#: Pólya–Vinogradov constant: ``|Σ_{M<n≤M+N} χ(n)| ≤ PV_CONSTANT·√q·log q``.
PV_CONSTANT = 6

#: ``grh_ratio`` above this is unusual enough to warn about.
GRH_RATIO_WARN = 1.0

# ζ_d^k as a + bθ, with θ = i for d = 4 and θ = ω = e(1/3) for d = 3, 6
_UNIT_ROOT_PAIRS: Dict[int, List[IntPair]] = {
    1: [(1, 0)],
    2: [(1, 0), (-1, 0)],
    3: [(1, 0), (0, 1), (-1, -1)],
    4: [(1, 0), (0, 1), (-1, 0), (0, -1)],
    6: [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
}

_RINGS = {1: "Z", 2: "Z", 3: "omega", 4: "i", 6: "omega"}


def ring_for(d: int) -> str:
    """
    Name of the ring holding the ``d``-th roots of unity: ``"Z"``, ``"i"`` or ``"omega"``.
    """
    try:
        return _RINGS[d]
    except KeyError:
        raise ValueError(f"no exact representation for order {d}; expected one of {EXACT_ORDERS}")


class CyclotomicInt:
    """
    An exact element ``a + b·θ`` of ℤ, ℤ[i] (``θ = i``) or ℤ[ω] (``θ = ω``).

    >>> z = CyclotomicInt(1, 1, ring="omega")   # 1 + ω, a primitive sixth root of unity
    >>> z ** 6
    CyclotomicInt(1, 0, ring='omega')
    >>> CyclotomicInt(3, 4, ring="i").norm()
    25
    """

    __slots__ = ("a", "b", "ring")

    def __init__(self, a: int, b: int = 0, *, ring: str = "Z") -> None:
        if ring not in ("Z", "i", "omega"):
            raise ValueError(f"unknown ring {ring!r}")
        if ring == "Z" and b:
            raise ValueError("elements of Z have no θ component")
        self.a = int(a)
        self.b = int(b)
        self.ring = ring

    @classmethod
    def root_of_unity(cls, d: int, k: int) -> "CyclotomicInt":
        """
        ``e(k/d)`` as an exact element.
        """
        ring = ring_for(d)
        a, b = _UNIT_ROOT_PAIRS[d][k % d]
        return cls(a, b, ring=ring)

    @property
    def pair(self) -> IntPair:
        return (self.a, self.b)

    def _coerce(self, other: Union["CyclotomicInt", int]) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt(other, ring=self.ring)
        if not isinstance(other, CyclotomicInt):
            raise TypeError(f"cannot combine CyclotomicInt with {type(other).__name__}")
        if other.ring == self.ring or other.ring == "Z":
            return other
        if self.ring == "Z":
            return other
        raise ValueError(f"cannot mix rings {self.ring!r} and {other.ring!r}")

    def _result_ring(self, other: "CyclotomicInt") -> str:
        return other.ring if self.ring == "Z" else self.ring

    def __add__(self, other: Union["CyclotomicInt", int]) -> "CyclotomicInt":
        other = self._coerce(other)
        return CyclotomicInt(self.a + other.a, self.b + other.b, ring=self._result_ring(other))

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(-self.a, -self.b, ring=self.ring)

    def __sub__(self, other: Union["CyclotomicInt", int]) -> "CyclotomicInt":
        return self + (-self._coerce(other))

    def __mul__(self, other: Union["CyclotomicInt", int]) -> "CyclotomicInt":
        other = self._coerce(other)
        ring = self._result_ring(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        if ring == "omega":
            # ω² = -1 - ω
            return CyclotomicInt(a * c - b * d, a * d + b * c - b * d, ring=ring)
        return CyclotomicInt(a * c - b * d, a * d + b * c, ring=ring)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "CyclotomicInt":
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = CyclotomicInt(1, ring=self.ring)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> "CyclotomicInt":
        if self.ring == "omega":
            # conj(ω) = ω² = -1 - ω
            return CyclotomicInt(self.a - self.b, -self.b, ring=self.ring)
        return CyclotomicInt(self.a, -self.b, ring=self.ring)

    def norm(self) -> int:
        """
        ``|z|²``, an exact non-negative integer.
        """
        return pair_norm(self.a, self.b, self.ring)

    def __complex__(self) -> complex:
        if self.ring == "omega":
            return complex(self.a - self.b / 2, self.b * math.sqrt(3) / 2)
        return complex(self.a, self.b)

    def __abs__(self) -> float:
        return math.sqrt(self.norm())

    def _key(self) -> Tuple[int, int, str]:
        return (self.a, self.b, self.ring if self.b else "Z")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._key() == (other, 0, "Z")
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"CyclotomicInt({self.a}, {self.b}, ring={self.ring!r})"


def pair_norm(a, b, ring: str):  # type: ignore[no-untyped-def]
    """
    ``|a + bθ|²`` for scalars or numpy arrays.
    """
    if ring == "omega":
        return a * a - a * b + b * b
    return a * a + b * b


def class_sum(counts: Sequence[int], d: int, j: int) -> CyclotomicInt:
    """
    ``Σ_r counts[r]·ζ_d^(j·r)`` as an exact element.

    This is the value of ``Σ χ_j(a)`` over a multiset of ``a`` whose index
    classes have the given ``counts``.
    """
    pairs = np.array(_UNIT_ROOT_PAIRS[d], dtype=np.int64)[(j * np.arange(d)) % d]
    totals = np.asarray(counts, dtype=np.int64) @ pairs
    return CyclotomicInt(int(totals[0]), int(totals[1]), ring=ring_for(d))


def index_classes(
    p: int, d: int, values: Union[Sequence[int], np.ndarray], g: Optional[int] = None
) -> np.ndarray:
    """
    Vectorised ``ind_g(v) mod d``; ``g`` defaults to the smallest primitive root mod ``p``.

    Entries divisible by ``p`` map to ``-1``. Uses ``v^((p-1)/d)`` and the
    ``d`` powers of ``g^((p-1)/d)`` so no discrete logarithms are needed.
    """
    if (p - 1) % d:
        raise ValueError(f"d must divide p - 1; got p={p}, d={d}")
    values = np.mod(np.asarray(values, dtype=np.int64), p)
    classes = np.full(values.shape, -1, dtype=np.int64)
    units = values != 0
    if d == 1:
        classes[units] = 0
        return classes
    e = (p - 1) // d
    z = pow(primitive_root(p) if g is None else g, e, p)
    roots = np.array([pow(z, k, p) for k in range(d)], dtype=np.int64)
    order = np.argsort(roots)
    lifted = powmod_array(values[units], e, p).astype(np.int64)
    classes[units] = order[np.searchsorted(roots[order], lifted)]
    return classes


class CharacterTable:
    """
    The ``d`` characters mod ``p`` whose ``d``-th power is principal.

    Usage:
        >>> table = build_table(7, 3)
        >>> table.chi(1, 2)
        (-0.5-0.866...j)
        >>> table.chi_pair(1, 2)
        CyclotomicInt(-1, -1, ring='omega')
    """

    def __init__(self, p: int, d: int, g: int):
        #: The prime modulus.
        self.p = p
        #: Order parameter; every character satisfies ``χ^d = χ₀``.
        self.d = d
        #: Primitive root defining the index.
        self.g = g
        #: The ``d`` complex ``d``-th roots of unity, ``unit_roots[k] = e(k/d)``.
        self.unit_roots = np.exp(2j * np.pi * np.arange(d) / d)

    def __repr__(self) -> str:
        return f"<CharacterTable p={self.p} d={self.d} g={self.g}>"

    @property
    def exact(self) -> bool:
        return self.d in EXACT_ORDERS

    @cached_property
    def unit_root_pairs(self) -> Optional[List[CyclotomicInt]]:
        if not self.exact:
            return None
        return [CyclotomicInt.root_of_unity(self.d, k) for k in range(self.d)]

    def ind(self, a: int) -> int:
        return discrete_log(self.p, self.g, a)

    def class_of(self, a: int) -> int:
        """
        ``ind(a) mod d``, or ``-1`` when ``p | a``.
        """
        if a % self.p == 0:
            return -1
        return self.ind(a) % self.d

    @cached_property
    def classes(self) -> np.ndarray:
        """
        :meth:`class_of` for every residue ``0 <= a < p``.
        """
        if self.p <= INDEX_TABLE_LIMIT:
            idx = index_table(self.p, self.g)
            return np.where(idx < 0, -1, idx % self.d)
        return index_classes(self.p, self.d, np.arange(self.p), self.g)

    def chi(self, j: int, a: int) -> complex:
        r = self.class_of(a)
        if r < 0:
            return 0j
        return complex(self.unit_roots[(j * r) % self.d])

    def chi_pair(self, j: int, a: int) -> CyclotomicInt:
        if not self.exact:
            raise ValueError(f"order {self.d} has no exact representation")
        r = self.class_of(a)
        if r < 0:
            return CyclotomicInt(0, ring=ring_for(self.d))
        return CyclotomicInt.root_of_unity(self.d, j * r)

    def values(self, j: int) -> np.ndarray:
        """
        ``χ_j(a)`` for ``0 <= a < p`` as a complex array.
        """
        cls = self.classes
        out = self.unit_roots[(j * np.maximum(cls, 0)) % self.d]
        out[cls < 0] = 0
        return out

    def value_pairs(self, j: int) -> np.ndarray:
        """
        ``χ_j(a)`` for ``0 <= a < p`` as an ``(p, 2)`` integer array of exact pairs.
        """
        cls = self.classes
        pairs = np.array(_UNIT_ROOT_PAIRS[self.d], dtype=np.int64)
        out = pairs[(j * np.maximum(cls, 0)) % self.d]
        out[cls < 0] = 0
        return out


@lru_cache(maxsize=512)
def build_table(p: int, d: int) -> CharacterTable:
    """
    Build the table of characters mod ``p`` with ``χ^d = χ₀``.

    Raises:
        ValueError: if ``p`` is not prime or ``d`` does not divide ``p - 1``.
    """
    if not is_prime(p):
        raise ValueError(f"character tables need a prime modulus; got {p}")
    if d < 1 or (p - 1) % d:
        raise ValueError(f"d must divide p - 1; got p={p}, d={d}")
    return CharacterTable(p, d, primitive_root(p))


def orthogonality_indicator(table: CharacterTable, a: int) -> int:
    """
    ``(1/d)·Σ_{χ^d=χ₀} χ(a)``: 1 when ``a`` is a ``d``-th power residue mod ``p``, else 0.
    """
    if a % table.p == 0:
        raise ValueError(f"orthogonality_indicator needs p ∤ a; got a={a}, p={table.p}")
    if table.exact:
        total = sum((table.chi_pair(j, a) for j in range(table.d)), CyclotomicInt(0))
        value, rest = divmod(total.a, table.d)
        if rest or total.b:
            raise InvariantViolation(f"character sum at a={a} mod {table.p} is {total!r}")
        return value
    return round(sum(table.chi(j, a) for j in range(table.d)).real / table.d)


def char_partial_sum(
    table: CharacterTable, j: int, M: int, N: int
) -> Union[CyclotomicInt, complex]:
    """
    ``Σ_{M < n ≤ M+N} χ_j(n)``, exact for orders in :data:`EXACT_ORDERS`.

    Full periods are counted in closed form so ``N`` may exceed ``p``.
    """
    if M < 0 or N < 1:
        raise ValueError(f"need M >= 0 and N >= 1; got M={M}, N={N}")
    p, d = table.p, table.d
    full, rest = divmod(N, p)
    positions = np.arange(M + 1, M + 1 + rest, dtype=np.int64) % p
    cls = table.classes[positions]
    counts = np.bincount(cls[cls >= 0], minlength=d) + full * ((p - 1) // d)
    if table.exact:
        return class_sum(counts, d, j)
    return complex(counts @ table.unit_roots[(j * np.arange(d)) % d])


def polya_vinogradov_check(p: int, d: int, cap: int = PV_PRIME_CAP) -> PolyaVinogradovReport:
    """
    Scan every partial sum ``Σ_{M<n≤M+N} χ(n)`` with ``0 <= M < p``,
    ``1 <= N <= p`` for every non-principal ``χ`` with ``χ^d = χ₀`` and compare the
    largest with ``6√p·log p``.

    Prefix sums ``P_n`` are periodic with ``P_p = P_0 = 0``, so the partial sums
    are exactly the differences ``P_u - P_v`` and the search reduces to the
    diameter of the prefix-sum set. Only ``j <= d/2`` is scanned since
    ``χ̄`` gives the same moduli.

    >>> polya_vinogradov_check(3, 2).max_ratio
    0.0876...
    """
    if p < 3:
        raise ValueError(f"polya_vinogradov_check needs an odd prime; got {p}")
    if p > cap:
        raise ValueError(f"p={p} exceeds the exhaustive scan cap {cap}")
    table = build_table(p, d)
    ring = ring_for(d)
    best_norm, witness = -1, (1, 0, 1)
    chunk = max(1, (1 << 22) // p)
    for j in range(1, d // 2 + 1):
        prefix = np.cumsum(table.value_pairs(j), axis=0)
        pa, pb = prefix[:, 0], prefix[:, 1]
        for start in range(0, p, chunk):
            da = pa[start : start + chunk, None] - pa[None, :]
            db = pb[start : start + chunk, None] - pb[None, :]
            norms = pair_norm(da, db, ring)
            flat = int(np.argmax(norms))
            value = int(norms.flat[flat])
            if value > best_norm:
                u, v = divmod(flat, p)
                u += start
                best_norm = value
                witness = (j, v, (u - v) % p or p)
    scale = PV_CONSTANT * math.sqrt(p) * math.log(p)
    logger.debug("polya-vinogradov p=%d d=%d max_norm=%d", p, d, best_norm)
    return PolyaVinogradovReport(
        p=p,
        d=d,
        max_ratio=math.sqrt(best_norm) / scale,
        max_norm=best_norm,
        witness=witness,
    )


def discriminants(X: int, convention: JutilaConvention = "fundamental") -> np.ndarray:
    """
    The ``D`` with ``|D| <= X`` whose Kronecker symbols ``(D/·)`` are summed by
    :func:`jutila_statistic`.

    ``"fundamental"`` keeps fundamental discriminants other than 1;
    ``"nonsquare"`` keeps every non-zero ``D`` that is not a perfect square.
    """
    D = np.concatenate([np.arange(-X, 0), np.arange(1, X + 1)]).astype(np.int64)
    if convention == "nonsquare":
        roots = np.sqrt(np.maximum(D, 0)).astype(np.int64)
        return D[(D < 0) | (roots * roots != D)]
    if convention != "fundamental":
        raise ValueError(f"unknown discriminant convention {convention!r}")
    squarefree = np.zeros(X + 1, dtype=bool)
    squarefree[1:] = mobius_table(1, X + 1) != 0
    odd_case = (D % 4 == 1) & squarefree[np.abs(D)]
    m = D // 4
    even_case = (D % 4 == 0) & np.isin(m % 4, (2, 3)) & squarefree[np.abs(m)]
    return D[(odd_case | even_case) & (D != 1)]


def kronecker_prime_column(D: np.ndarray, q: int) -> np.ndarray:
    """
    Kronecker symbols ``(D/q)`` for a prime ``q``, vectorised over ``D``.
    """
    if q == 2:
        r = D % 8
        return np.where(D % 2 == 0, 0, np.where((r == 1) | (r == 7), 1, -1)).astype(np.int64)
    lifted = powmod_array(D, (q - 1) // 2, q).astype(np.int64)
    return np.where(lifted == q - 1, -1, lifted)


def jutila_statistic(
    X: int, Y: int, convention: JutilaConvention = "fundamental"
) -> JutilaReport:
    """
    ``Σ_D |Σ_{n≤Y} (D/n)|²`` over the discriminants of :func:`discriminants`,
    and its ratio to ``X·Y·log²X``.

    The symbols are built column by column from the smallest prime factor of
    ``n``, using complete multiplicativity in ``n``.
    """
    if X < 2 or Y < 1:
        raise ValueError(f"need X >= 2 and Y >= 1; got X={X}, Y={Y}")
    D_all = discriminants(X, convention)
    spf = smallest_prime_factor_table(max(Y, 2))
    lhs = 0
    chunk = max(1, (1 << 24) // max(Y, 1))
    for start in range(0, D_all.size, chunk):
        D = D_all[start : start + chunk]
        chi = np.zeros((Y + 1, D.size), dtype=np.int8)
        chi[1] = 1
        for n in range(2, Y + 1):
            q = int(spf[n])
            if q == n:
                chi[n] = kronecker_prime_column(D, q)
            else:
                chi[n] = chi[q] * chi[n // q]
        sums = chi[1:].sum(axis=0, dtype=np.int64)
        lhs += int(np.dot(sums, sums))
    logger.debug("jutila X=%d Y=%d characters=%d lhs=%d", X, Y, D_all.size, lhs)
    return JutilaReport(
        X=X,
        Y=Y,
        convention=convention,
        characters=int(D_all.size),
        lhs=lhs,
        bound_ratio=lhs / (X * Y * math.log(X) ** 2),
    )


def large_sieve_envelope(Q: float, M: float, coefficient_norm: float) -> float:
    """
    ``min{Q^{5/3}+M, Q^{4/3}+Q^{1/2}M, Q^{11/9}+Q^{2/3}M, Q+Q^{1/3}M^{5/3}+M^{12/5}}·Σ|a_m|²``.
    """
    return coefficient_norm * min(
        Q ** (5 / 3) + M,
        Q ** (4 / 3) + Q**0.5 * M,
        Q ** (11 / 9) + Q ** (2 / 3) * M,
        Q + Q ** (1 / 3) * M ** (5 / 3) + M ** (12 / 5),
    )


def _coefficient_arrays(
    M: int, coeffs: Union[Sequence[complex], Mapping[int, complex]]
) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(coeffs, Mapping):
        ms = np.array(sorted(coeffs), dtype=np.int64)
        values = [coeffs[int(m)] for m in ms]
    else:
        if len(coeffs) != M:
            raise ValueError(
                f"expected {M} coefficients for m in ({M}, {2 * M}]; got {len(coeffs)}"
            )
        ms = np.arange(M + 1, 2 * M + 1, dtype=np.int64)
        values = list(coeffs)
    if ms.size and (ms.min() <= M or ms.max() > 2 * M):
        raise ValueError(f"coefficients must be supported on ({M}, {2 * M}]")
    integral = all(isinstance(v, (int, np.integer)) for v in values)
    a = np.array(values, dtype=np.int64 if integral else np.complex128)
    mu = mobius_table(M + 1, 2 * M + 1) if M >= 1 else np.zeros(0, dtype=np.int64)
    bad = ms[(a != 0) & (mu[ms - M - 1] == 0)]
    if bad.size:
        raise ValueError(f"m must be squarefree; got non-zero coefficient at m={int(bad[0])}")
    return ms, a


def large_sieve_statistic(
    Q: int,
    M: int,
    k: int,
    coeffs: Union[Sequence[complex], Mapping[int, complex]],
) -> LargeSieveReport:
    """
    Left side of the large sieve for characters of order dividing ``k`` to
    prime moduli ``q ∈ (Q, 2Q]``, ``q ≡ 1 (mod k)``:
    ``Σ_q Σ_{χ^k=χ₀, χ≠χ₀} |Σ_{M<m≤2M} a_m χ(m)|²``.

    With ``A_r`` the sum of ``a_m`` over the index class ``r``, Parseval gives
    the inner sum as ``k·Σ|A_r|² - |Σ A_r|²``, which is exact for integer
    coefficients. The same quantity is also evaluated character by character
    and the two must agree.

    Args:
        coeffs: ``M`` values for ``m = M+1 .. 2M``, or a mapping ``m -> a_m``.
    """
    if k not in (3, 4, 6):
        raise ValueError(f"k must be 3, 4 or 6; got {k}")
    ms, a = _coefficient_arrays(M, coeffs)
    integral = a.dtype == np.int64
    lhs_exact = 0
    lhs = 0.0
    moduli = 0
    roots = np.exp(2j * np.pi * np.outer(np.arange(1, k), np.arange(k)) / k)
    for segment in iter_prime_segments(PrimeRange(lo=Q + 1, hi=2 * Q + 1, modulus_filter=(k, 1))):
        for q in segment.tolist():
            moduli += 1
            cls = index_classes(q, k, ms)
            units = cls >= 0
            A = np.zeros(k, dtype=a.dtype)
            np.add.at(A, cls[units], a[units])
            if integral:
                A_int = [int(v) for v in A]
                value = k * sum(v * v for v in A_int) - sum(A_int) ** 2
                lhs_exact += value
                parseval = float(value)
            else:
                parseval = float(k * np.sum(np.abs(A) ** 2) - abs(A.sum()) ** 2)
            direct = float(np.sum(np.abs(roots @ A) ** 2))
            if rel_diff(parseval, direct) > 1e-9:
                raise InvariantViolation(
                    f"large sieve Parseval mismatch at q={q}: {parseval} != {direct}"
                )
            lhs += parseval
    if integral:
        lhs = float(lhs_exact)
    norm = float(np.sum(np.abs(a) ** 2))
    envelope = large_sieve_envelope(Q, M, norm)
    return LargeSieveReport(
        Q=Q,
        M=M,
        k=k,
        moduli=moduli,
        lhs=lhs,
        lhs_exact=lhs_exact if integral else None,
        coefficient_norm=norm,
        envelope=envelope,
        ratio=lhs / envelope if envelope else 0.0,
    )


def prime_char_sum_statistic(table: CharacterTable, j: int, X: float) -> PrimeCharSumReport:
    """
    ``Σ_{p≤X} χ_j(p)`` and its size relative to ``X^{1/2}·log(qX)``.

    The ratio is only reported; the bound behind it is conditional.
    """
    if j % table.d == 0:
        raise ValueError(f"j={j} gives the principal character")
    if not table.exact:
        raise ValueError(f"order {table.d} has no exact representation")
    q, d = table.p, table.d
    counts = np.zeros(d, dtype=np.int64)
    if X >= 2:
        for segment in iter_prime_segments(PrimeRange(lo=2, hi=math.floor(X) + 1)):
            cls = index_classes(q, d, segment)
            counts += np.bincount(cls[cls >= 0], minlength=d)
    total = class_sum(counts, d, j)
    value = complex(total)
    ratio = abs(value) / (math.sqrt(X) * math.log(q * X)) if X >= 2 else 0.0
    if ratio > GRH_RATIO_WARN:
        warn(f"prime character sum mod {q} at X={X} has grh_ratio {ratio:.3f}")
    return PrimeCharSumReport(
        q=q,
        d=d,
        j=j,
        X=X,
        sum_pair=total.pair,
        sum=(value.real, value.imag),
        grh_ratio=ratio,
    )


__all__ = [
    "CharacterTable",
    "CyclotomicInt",
    "EXACT_ORDERS",
    "build_table",
    "char_partial_sum",
    "class_sum",
    "discriminants",
    "index_classes",
    "jutila_statistic",
    "large_sieve_envelope",
    "large_sieve_statistic",
    "orthogonality_indicator",
    "polya_vinogradov_check",
    "prime_char_sum_statistic",
    "ring_for",
]
