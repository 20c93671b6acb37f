from typing import List, Optional, Tuple

from ntlab._compat import pydantic
from ntlab.types import AMode, JutilaConvention

from ._base import ExactModel, LabModel


class SquarePartDecomposition(LabModel):
    """
    Both square-part decompositions of a positive integer.

    >>> square_part(12)
    SquarePartDecomposition(a=12, l_sf=3, sq=2, core_l=2, core_m=3)
    """

    #: The integer being decomposed.
    a: int

    #: Squarefree part, with ``a == l_sf * sq**2``.
    l_sf: int

    #: Square root of the square part.
    sq: int

    #: The ``l`` in ``a == core_l**2 * core_m``.
    core_l: int

    #: Squarefree ``m`` in ``a == core_l**2 * core_m``.
    core_m: int

    @pydantic.root_validator(skip_on_failure=True)
    def _check_products(cls, values):  # type: ignore[no-untyped-def]
        a = values["a"]
        if values["l_sf"] * values["sq"] ** 2 != a:
            raise ValueError(f"l_sf * sq**2 != {a}")
        if values["core_l"] ** 2 * values["core_m"] != a:
            raise ValueError(f"core_l**2 * core_m != {a}")
        return values


class PrimeRange(LabModel):
    """
    A half-open range ``[lo, hi)`` of primes, optionally restricted to one residue class.

    >>> PrimeRange(lo=2, hi=101, modulus_filter=(3, 1))
    """

    lo: int
    hi: int

    #: ``(d, r)`` keeps only primes ``p ≡ r (mod d)``.
    modulus_filter: Optional[Tuple[int, int]] = None

    #: Odd numbers (bytes of sieve buffer) per segment.
    segment_size: int = 1 << 18

    @pydantic.validator("lo")
    def _check_lo(cls, lo: int) -> int:
        if lo < 0:
            raise ValueError(f"lo must be non-negative; got {lo}")
        return lo

    @pydantic.validator("hi")
    def _check_hi(cls, hi: int, values: dict) -> int:  # type: ignore[type-arg]
        if hi > 2**63:
            raise ValueError(f"hi must be at most 2**63; got {hi}")
        if "lo" in values and hi < values["lo"]:
            raise ValueError(f"hi < lo ({hi} < {values['lo']})")
        return hi

    @pydantic.validator("segment_size")
    def _check_segment_size(cls, size: int) -> int:
        if size < 2**14:
            raise ValueError(f"segment_size must be at least 2**14; got {size}")
        return size

    @pydantic.validator("modulus_filter")
    def _check_filter(cls, value: Optional[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
        if value is not None and value[0] < 1:
            raise ValueError(f"filter modulus must be positive; got {value[0]}")
        return value


class MeanValueResult(
    ExactModel,
    exact=["S1_numerator", "S2_numerator"],
):
    """
    The averaged count ``S = (1/y) Σ_{2≤a≤y} P_{(a,d)}(x)`` and its split ``S = S1 + S2``.

    ``S1`` is the principal-character part and ``S2`` the sum over the
    non-principal characters of order dividing ``d``. Both are stored as
    exact integer numerators over the common denominator ``d·y``.
    """

    d: int
    x: float
    y: float
    a_mode: AMode
    mode: str

    S: float
    S1: float
    S2: float

    #: ``π(x)/2`` when ``d == 2``, else ``π(x;1,d)/d``.
    main_term: float
    abs_error: float

    S1_numerator: int
    S2_numerator: int

    #: Number of ``a`` that took part in the average.
    a_count: int
    pi_x: int
    pi_class_x: int

    #: ``log log x + π(x)/y``, the size of the error in the ``S1`` estimate.
    s1_error_scale: float

    #: Unconditional bound on ``|S2|`` from Pólya–Vinogradov with constant 6.
    s2_polya_bound: float

    #: ``Σ_p Σ_χ |Σ_a χ(a)|²``, only available in character mode.
    S2_l2: Optional[int] = None

    #: Cauchy–Schwarz bound on ``|S2|`` built from ``S2_l2``.
    s2_cauchy_bound: Optional[float] = None


class SmoothedMeanResult(LabModel):
    """
    The smoothed average over odd squarefree ``a`` and its decomposition.

    ``S = S1 + S2`` and ``S2 = S21 + S22``. When the Poisson expansion was
    requested, ``S_sq + S_nonsq`` is a second evaluation of ``S21``.
    """

    x: float
    Y: float
    U: float
    z: float

    #: ``#D(Y)``, odd squarefree integers in ``[Y, 2Y]``.
    D_count: int

    S: float
    S1: float
    S2: float
    S21: float
    S22: float

    #: ``S`` computed directly from ``count_P``; ``None`` when skipped.
    S_direct: Optional[float] = None

    S_sq: Optional[float] = None
    S_nonsq: Optional[float] = None

    main: float
    abs_error: float
    pi_x: int

    #: ``(Y/#D(Y))·log log x + π(x)/U``.
    s1_error_scale: float


class PolyaVinogradovReport(LabModel):
    """
    Largest character partial sum mod ``p`` relative to ``6√p log p``.
    """

    p: int
    d: int
    max_ratio: float

    #: Exact squared modulus of the largest partial sum.
    max_norm: int

    #: ``(j, M, N)`` attaining the maximum.
    witness: Tuple[int, int, int]


class JutilaReport(LabModel):
    """
    ``Σ_χ |Σ_{n≤Y} χ(n)|²`` over real characters ``(D/·)`` with ``|D| ≤ X``.
    """

    X: int
    Y: int
    convention: JutilaConvention
    characters: int
    lhs: int
    bound_ratio: float


class LargeSieveReport(LabModel):
    """
    Left side of the large sieve inequality for order-``k`` characters and its envelope.
    """

    Q: int
    M: int
    k: int
    moduli: int
    lhs: float

    #: Exact left side when every coefficient is an integer.
    lhs_exact: Optional[int] = None

    coefficient_norm: float
    envelope: float
    ratio: float


class PrimeCharSumReport(LabModel):
    """
    ``Σ_{p≤X} χ(p)`` for one character and its size against ``X^{1/2} log(qX)``.
    """

    q: int
    d: int
    j: int
    X: float

    #: The exact sum as an integer pair in ℤ[i] or ℤ[ω].
    sum_pair: Tuple[int, int]

    #: The sum as ``(real, imag)``.
    sum: Tuple[float, float]
    grh_ratio: float


class PoissonCheck(LabModel):
    """
    Both sides of the Poisson identity for one odd modulus.
    """

    k: int
    X: float
    z: float
    U: float
    m_cap: int
    lhs: float
    rhs: float
    rel_err: float


class GaussCheck(LabModel):
    """
    Agreement of the direct and factorised Gauss-type sums over a range of moduli.
    """

    k_max: int
    m_max: int
    checked: int
    max_rel_err: float
    failures: List[Tuple[int, int]] = []
    multiplicativity_pairs: int
    multiplicativity_failures: List[Tuple[int, int, int]] = []


class ResidueCheck(LabModel):
    """
    Agreement of the three descriptions of ``d``-th power residues.
    """

    p_max: int
    ds: List[int]
    primes: int
    checked: int
    #: Every disagreement found, of which ``failures`` lists the first few.
    failure_count: int = 0
    failures: List[Tuple[int, int, int]] = []
