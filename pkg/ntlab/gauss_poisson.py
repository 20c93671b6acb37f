"""
Gauss-type sums, the plateau window and its transform, and the smoothed mean value.

For odd ``k`` and any integer ``m``::

    τ_m(k) = Σ_{a mod k} (a/k)·e(am/k) = ((1+i)/2 + (-1/k)·(1-i)/2)·G_m(k)

and Poisson summation turns a window-weighted sum of ``(d/k)`` over odd
``d`` into a sum of ``G_m(k)`` against the transform
``Φ̃(ξ) = ∫ (cos 2πξt + sin 2πξt)·Φ(t) dt``.
"""
import logging
import math
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

import mpmath
import numpy as np
import sympy
from numpy.polynomial.legendre import leggauss

from ntlab.arith import factorize, jacobi, mobius, mobius_table, powmod_array, square_part
from ntlab.models import GaussCheck, PoissonCheck, PrimeRange, SmoothedMeanResult
from ntlab.primes import iter_prime_segments, pi
from ntlab.utils import InvariantViolation, rel_diff, warn

logger = logging.getLogger(__name__)

# numpy 2 renamed trapz
_trapezoid = getattr(np, "trapezoid", None) or np.trapz

#: Highest derivative order whose bound constant is published on a window.
J_MAX = 4

#: Highest integration-by-parts order used when bounding transform tails.
J_TAIL = 6

#: Transition derivatives are treated as zero within this distance of 0 and 1.
EDGE_CLIP = 1e-3

#: Points in the grid on which transition constants are certified.
CERTIFY_POINTS = 20001

#: Safety factor applied to grid maxima and grid integrals.
CERTIFY_MARGIN = 1.05

#: Neglected tail of the Poisson side, relative to ``max(1, |lhs|)``.
POISSON_TAIL_TOL = 1e-9

#: Agreement required between the two sides of the Poisson identity.
POISSON_REL_TOL = 1e-6

#: Agreement required between the direct and factored Gauss-type sums.
GAUSS_REL_TOL = 1e-6

#: Agreement required between independently evaluated smoothed sums.
SMOOTH_REL_TOL = 1e-9


# -- Gauss-type sums ---------------------------------------------------------


@lru_cache(maxsize=1024)
def legendre_table(p: int) -> np.ndarray:
    """
    ``(a/p)`` for ``0 <= a < p`` and an odd prime ``p``.
    """
    lifted = powmod_array(np.arange(p, dtype=np.int64), (p - 1) // 2, p).astype(np.int64)
    return np.where(lifted == p - 1, -1, lifted).astype(np.int8)


@lru_cache(maxsize=256)
def jacobi_table(k: int) -> np.ndarray:
    """
    Jacobi symbols ``(a/k)`` for ``0 <= a < k``, from Legendre tables of the prime factors of ``k``.

    >>> jacobi_table(9).tolist()
    [0, 1, 1, 0, 1, 1, 0, 1, 1]
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"jacobi_table needs an odd positive modulus; got {k}")
    a = np.arange(k, dtype=np.int64)
    result = np.ones(k, dtype=np.int8)
    for p, e in factorize(k):
        column = legendre_table(p)[a % p]
        result *= column if e % 2 else column * column
    return result


def _unit_factor(k: int) -> complex:
    # (1+i)/2 + (-1/k)(1-i)/2
    return 1 if k % 4 == 1 else 1j


def tau_m(k: int, m: int) -> complex:
    """
    ``τ_m(k) = Σ_{a mod k} (a/k)·e(am/k)`` by direct summation.

    >>> abs(tau_m(3, 1) - 1j * 3 ** 0.5) < 1e-12
    True
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"tau_m needs an odd positive modulus; got {k}")
    a = np.arange(k, dtype=np.int64)
    phases = np.exp(2j * np.pi * ((a * (m % k)) % k) / k)
    return complex(np.dot(jacobi_table(k), phases))


@lru_cache(maxsize=64)
def tau_table(k: int) -> np.ndarray:
    """
    ``τ_m(k)`` for every ``0 <= m < k`` from one inverse FFT of the Jacobi table.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"tau_table needs an odd positive modulus; got {k}")
    return np.fft.ifft(jacobi_table(k).astype(np.float64)) * k


def G_direct(k: int, m: int) -> complex:
    """
    ``G_m(k)`` recovered from :func:`tau_m` by dividing out the unit factor.
    """
    return tau_m(k, m) / _unit_factor(k)


def G_table(k: int) -> np.ndarray:
    """
    ``G_m(k)`` for ``0 <= m < k``; ``G`` only depends on ``m mod k``.
    """
    return tau_table(k) / _unit_factor(k)


def G_prime_power(p: int, b: int, m: int) -> float:
    """
    ``G_m(p^b)`` from the prime-power evaluation table, with ``p^a || m`` (``a = ∞`` for ``m = 0``).
    """
    if b < 1:
        return 1.0
    a = math.inf
    if m:
        a, rest = 0, m
        while rest % p == 0:
            rest //= p
            a += 1
    if b <= a:
        return 0.0 if b % 2 else float((p - 1) * p ** (b - 1))
    if b == a + 1:
        pa = p ** int(a)
        if b % 2 == 0:
            return float(-pa)
        return jacobi(m // pa, p) * pa * math.sqrt(p)
    return 0.0


def G_formula(k: int, m: int) -> complex:
    """
    ``G_m(k)`` as the product of :func:`G_prime_power` over the factorisation of ``k``.

    >>> G_formula(9, 3)
    (-3+0j)
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"G_formula needs an odd positive modulus; got {k}")
    value = 1.0
    for p, b in factorize(k):
        value *= G_prime_power(p, b, m)
        if value == 0:
            break
    return complex(value)


def verify_gauss_sums(
    k_max: int, m_max: int, pairs: int = 200, seed: int = 0
) -> GaussCheck:
    """
    Compare :func:`G_table` with :func:`G_formula` for every odd ``k <= k_max``
    and ``|m| <= m_max``, then test multiplicativity on ``pairs`` random
    coprime odd pairs.
    """
    failures: List[Tuple[int, int]] = []
    worst = 0.0
    checked = 0
    for k in range(1, k_max + 1, 2):
        table = G_table(k)
        for m in range(-m_max, m_max + 1):
            direct = table[m % k]
            formula = G_formula(k, m)
            err = abs(direct - formula) / max(1.0, abs(formula))
            worst = max(worst, err)
            if err > GAUSS_REL_TOL:
                failures.append((k, m))
            checked += 1
    rng = np.random.default_rng(seed)
    bound = max(3, math.isqrt(k_max))
    multiplicative_failures: List[Tuple[int, int, int]] = []
    done = 0
    while done < pairs:
        k1, k2 = (2 * rng.integers(0, bound // 2 + 1, size=2) + 1).tolist()
        if math.gcd(k1, k2) != 1:
            continue
        m = int(rng.integers(-m_max, m_max + 1))
        product = G_table(k1 * k2)[m % (k1 * k2)]
        split = G_table(k1)[m % k1] * G_table(k2)[m % k2]
        if abs(product - split) > GAUSS_REL_TOL * max(1.0, abs(product)):
            multiplicative_failures.append((k1, k2, m))
        done += 1
    logger.info("gauss sums: %d checked, max rel err %.3g", checked, worst)
    return GaussCheck(
        k_max=k_max,
        m_max=m_max,
        checked=checked,
        max_rel_err=worst,
        failures=failures,
        multiplicativity_pairs=pairs,
        multiplicativity_failures=multiplicative_failures,
    )


# -- the plateau window ------------------------------------------------------


@lru_cache(maxsize=None)
def _transition_polynomials(j_max: int) -> Tuple[Callable[..., np.ndarray], ...]:
    """
    Lambdified ``Q_j(u, h)`` with ``r^(j)(u) = -(1/2)·(1 - h²)·Q_j(u, h)``, where
    ``h = tanh(g(u)/2)`` and ``g(u) = 1/u - 1/(1-u)``.

    From ``h' = (g'/2)(1 - h²)``: ``Q_1 = g'/2`` and
    ``Q_{j+1} = ∂_u Q_j + (g'/2)·(-2h·Q_j + (1 - h²)·∂_h Q_j)``.
    """
    u, h = sympy.symbols("u h")
    half_g_prime = sympy.diff(1 / u - 1 / (1 - u), u) / 2
    q = half_g_prime
    funcs = []
    for _ in range(j_max):
        funcs.append(sympy.lambdify((u, h), q, modules="numpy", cse=True))
        q = sympy.diff(q, u) + half_g_prime * (-2 * h * q + (1 - h**2) * sympy.diff(q, h))
    return tuple(funcs)


def transition(u: np.ndarray, j: int = 0) -> np.ndarray:
    """
    The smooth step ``r(u) = s(u)/(s(u) + s(1-u))``, ``s(u) = exp(-1/u)``, or its ``j``-th derivative.

    ``r`` is 0 for ``u <= 0`` and 1 for ``u >= 1``.
    """
    u = np.asarray(u, dtype=np.float64)
    if j == 0:
        out = np.where(u >= 1, 1.0, 0.0)
        inside = (u > 0) & (u < 1)
        ui = u[inside]
        with np.errstate(over="ignore", divide="ignore"):
            g = 1 / ui - 1 / (1 - ui)
            out[inside] = 0.5 * (1 - np.tanh(g / 2))
        return out
    if j > J_TAIL:
        raise ValueError(f"derivatives are available up to order {J_TAIL}; got {j}")
    out = np.zeros_like(u)
    band = (u >= EDGE_CLIP) & (u <= 1 - EDGE_CLIP)
    ub = u[band]
    with np.errstate(over="ignore"):
        g = 1 / ub - 1 / (1 - ub)
        h = np.tanh(g / 2)
        sech2 = 1 / np.cosh(g / 2) ** 2
    q = _transition_polynomials(J_TAIL)[j - 1](ub, h)
    out[band] = -0.5 * sech2 * q
    return out


@lru_cache(maxsize=1)
def transition_constants() -> Tuple[Dict[int, float], Dict[int, float]]:
    """
    Certified ``C_j = max|r^(j)|`` and ``L_j = ∫_0^1 |r^(j)|`` for ``1 <= j <= J_TAIL``.

    Both come from a dense grid and are inflated by :data:`CERTIFY_MARGIN`.
    """
    u = np.linspace(0.0, 1.0, CERTIFY_POINTS)
    sup: Dict[int, float] = {0: 1.0}
    l1: Dict[int, float] = {}
    for j in range(1, J_TAIL + 1):
        values = np.abs(transition(u, j))
        sup[j] = CERTIFY_MARGIN * float(values.max())
        l1[j] = CERTIFY_MARGIN * float(_trapezoid(values, u))
    return sup, l1


class SmoothWindow:
    """
    A C^∞ bump supported on ``(1, 2)``, equal to 1 on ``[1 + 1/U, 2 - 1/U]``:
    ``Φ(t) = r(U(t-1))·r(U(2-t))``.

    Usage:
        >>> window = make_window(8)
        >>> window.phi(1.5)
        1.0
        >>> window.phi(1 + 1 / 16)
        0.5
    """

    def __init__(self, U: float):
        self.U = float(U)
        sup, l1 = transition_constants()
        #: ``C_j`` with ``|Φ^(j)(t)| <= C_j·U^j`` for ``j <= J_MAX``.
        self.derivative_bound_consts = {j: sup[j] for j in range(J_MAX + 1)}
        #: ``L_j = ∫|r^(j)|``, used by the transform tail bound.
        self.l1_norms = dict(l1)

    def __repr__(self) -> str:
        return f"<SmoothWindow U={self.U:g}>"

    @property
    def plateau(self) -> Tuple[float, float]:
        return (1 + 1 / self.U, 2 - 1 / self.U)

    def phi(self, t):  # type: ignore[no-untyped-def]
        t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
        value = transition(self.U * (t_arr - 1)) * transition(self.U * (2 - t_arr))
        return float(value[0]) if np.ndim(t) == 0 else value

    def derivative(self, t, j: int = 1):  # type: ignore[no-untyped-def]
        """
        ``Φ^(j)(t)``: ``U^j·r^(j)(U(t-1))`` on the left edge, ``(-U)^j·r^(j)(U(2-t))``
        on the right, 0 elsewhere.
        """
        if j == 0:
            return self.phi(t)
        t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
        out = np.zeros_like(t_arr)
        left = (t_arr > 1) & (t_arr < 1 + 1 / self.U)
        right = (t_arr > 2 - 1 / self.U) & (t_arr < 2)
        out[left] = self.U**j * transition(self.U * (t_arr[left] - 1), j)
        out[right] = (-self.U) ** j * transition(self.U * (2 - t_arr[right]), j)
        return float(out[0]) if np.ndim(t) == 0 else out

    def dphi(self, t):  # type: ignore[no-untyped-def]
        return self.derivative(t, 1)

    def tail_constant(self, j: int) -> float:
        """
        ``B_j`` with ``|Φ̃(ξ)| <= B_j/(2π|ξ|)^j``.
        """
        return math.sqrt(2) * 2 * self.U ** (j - 1) * self.l1_norms[j]


def make_window(U: float) -> SmoothWindow:
    """
    Build the plateau window for edge parameter ``U``.

    Raises:
        ValueError: if ``U < 4``.
    """
    if not U >= 4:
        raise ValueError(f"U must be at least 4; got {U}")
    return SmoothWindow(U)


# -- the transform -----------------------------------------------------------


def _plateau_integral(xi: np.ndarray, U: float) -> np.ndarray:
    a, b = 1 + 1 / U, 2 - 1 / U
    w = 2 * np.pi * xi
    out = np.full(xi.shape, b - a)
    nz = xi != 0
    wn = w[nz]
    out[nz] = (np.sin(wn * b) - np.cos(wn * b) - np.sin(wn * a) + np.cos(wn * a)) / wn
    return out


def _mp_transition(u):  # type: ignore[no-untyped-def]
    if u <= 0:
        return mpmath.mpf(0)
    if u >= 1:
        return mpmath.mpf(1)
    return 1 / (1 + mpmath.exp(1 / u - 1 / (1 - u)))


def tilde_transform(window: SmoothWindow, xi: float) -> float:
    """
    ``Φ̃(ξ) = ∫ (cos 2πξt + sin 2πξt)·Φ(t) dt`` by adaptive quadrature.

    The plateau is integrated in closed form; each edge is mapped onto
    ``[0, 1]`` and split into pieces of about one oscillation.

    >>> tilde_transform(make_window(8), 0)
    0.875
    """
    if not math.isfinite(xi):
        raise ValueError(f"xi must be finite; got {xi}")
    U = window.U
    plateau = float(_plateau_integral(np.array([float(xi)]), U)[0])
    w = 2 * mpmath.pi * xi

    def edges(u):  # type: ignore[no-untyped-def]
        left = w * (1 + u / U)
        right = w * (2 - u / U)
        waves = mpmath.cos(left) + mpmath.sin(left) + mpmath.cos(right) + mpmath.sin(right)
        return waves * _mp_transition(u)

    pieces = max(1, math.ceil(abs(xi) / U))
    with mpmath.workdps(20):
        edge = mpmath.quad(edges, mpmath.linspace(0, 1, pieces + 1))
    return plateau + float(edge) / U


def tilde_transform_many(
    window: SmoothWindow, xis: np.ndarray, nodes_per_panel: int = 16
) -> np.ndarray:
    """
    Vectorised :func:`tilde_transform` by composite Gauss–Legendre on the edges.

    Both edges share one matrix of exponentials ``e(ξu/U)``: the left edge is
    ``e(ξ)·Σ w_n r(u_n) e(ξu_n/U)/U`` and the right edge uses the conjugate.
    """
    xis = np.asarray(xis, dtype=np.float64)
    flat = xis.ravel()
    U = window.U
    out = _plateau_integral(flat, U)
    if not flat.size:
        return out.reshape(xis.shape)
    panels = math.ceil(float(np.abs(flat).max()) / U) + 32
    x_gl, w_gl = leggauss(nodes_per_panel)
    step = 1.0 / panels
    starts = np.arange(panels) * step
    u = (starts[:, None] + (x_gl[None, :] + 1) * step / 2).ravel()
    weights = np.tile(w_gl * step / 2, panels) * transition(u) / U
    chunk = max(1, (1 << 21) // u.size)
    for start in range(0, flat.size, chunk):
        xi = flat[start : start + chunk]
        phases = np.exp(2j * np.pi * np.outer(xi, u) / U)
        left = np.exp(2j * np.pi * xi) * (phases @ weights)
        right = np.exp(4j * np.pi * xi) * (phases.conj() @ weights)
        total = left + right
        out[start : start + chunk] += total.real + total.imag
    return out.reshape(xis.shape)


def tilde_decay_constants(window: SmoothWindow) -> Tuple[float, float]:
    """
    ``(C, C')`` with ``|Φ̃(ξ)| <= min(C, C'/|ξ|)``.

    ``C = √2·∫Φ`` and ``C' = √2·2·L_1/(2π)``; ``L_1 = 1`` because ``r`` is monotone.
    """
    return (math.sqrt(2) * (1 - 1 / window.U), window.tail_constant(1) / (2 * math.pi))


def tilde_tail_bound(window: SmoothWindow, c: float, M: int) -> float:
    """
    Bound on ``Σ_{|m|>M} |Φ̃(mc)|`` from ``j``-fold integration by parts, best over ``2 <= j <= J_TAIL``.
    """
    if M < 1 or c <= 0:
        return math.inf
    return min(
        2 * window.tail_constant(j) / ((2 * math.pi * c) ** j * (j - 1) * M ** (j - 1))
        for j in range(2, J_TAIL + 1)
    )


def poisson_alphas(k: int, z: float) -> List[int]:
    """
    Squarefree ``α <= z`` coprime to ``2k``: the ``α`` with a non-zero term on the Poisson side.
    """
    return [
        alpha
        for alpha in range(1, math.floor(z) + 1)
        if math.gcd(alpha, 2 * k) == 1 and mobius(alpha) != 0
    ]


def choose_m_cap(
    window: SmoothWindow, k: int, X: float, z: float, tolerance: float
) -> Dict[int, int]:
    """
    Per-``α`` truncation points so that the neglected part of the Poisson side is at most ``tolerance``.

    Uses ``|G_m(k)| <= k`` and :func:`tilde_tail_bound`, with the tolerance
    split evenly over the ``α``.
    """
    alphas = poisson_alphas(k, z)
    if not alphas:
        return {}
    budget = tolerance / len(alphas)
    caps: Dict[int, int] = {}
    for alpha in alphas:
        c = X / (2 * alpha**2 * k)
        scale = X / (2 * k) / alpha**2 * k
        best = math.inf
        for j in range(2, J_TAIL + 1):
            unit = 2 * window.tail_constant(j) / ((2 * math.pi * c) ** j * (j - 1))
            best = min(best, math.ceil((scale * unit / budget) ** (1 / (j - 1))))
        caps[alpha] = max(1, int(best))
    return caps


# -- square-part weights -----------------------------------------------------


def _squarefree_divisors(n: int) -> List[Tuple[int, int]]:
    divisors = [(1, 1)]
    for p, _ in factorize(n):
        divisors += [(d * p, -mu) for d, mu in divisors]
    return divisors


def M_z(a: int, z: float) -> int:
    """
    ``Σ_{l²|a, l<=z} μ(l)``.

    >>> M_z(12, 1)
    1
    """
    if a < 1:
        raise ValueError(f"M_z needs a >= 1; got {a}")
    return sum(mu for l, mu in _squarefree_divisors(square_part(a).sq) if l <= z)


def R_z(a: int, z: float) -> int:
    """
    ``Σ_{l²|a, l>z} μ(l)``; ``M_z(a) + R_z(a) = μ²(a)``.

    >>> R_z(12, 1)
    -1
    """
    if a < 1:
        raise ValueError(f"R_z needs a >= 1; got {a}")
    return sum(mu for l, mu in _squarefree_divisors(square_part(a).sq) if l > z)


def _square_divisor_sum(lo: int, hi: int, l_from: int, l_to: int) -> np.ndarray:
    out = np.zeros(hi - lo, dtype=np.int64)
    for l in range(l_from, l_to + 1):
        mu = mobius(l)
        if mu:
            step = l * l
            out[(-lo) % step :: step] += mu
    return out


def M_z_range(lo: int, hi: int, z: float) -> np.ndarray:
    """
    :func:`M_z` for every ``a`` in ``[lo, hi)``.
    """
    return _square_divisor_sum(lo, hi, 1, min(math.floor(z), math.isqrt(max(hi - 1, 1))))


def R_z_range(lo: int, hi: int, z: float) -> np.ndarray:
    """
    :func:`R_z` for every ``a`` in ``[lo, hi)``.
    """
    return _square_divisor_sum(lo, hi, math.floor(z) + 1, math.isqrt(max(hi - 1, 1)))


def enumerate_DY(Y: float) -> Tuple[np.ndarray, int]:
    """
    ``D(Y)``, the odd squarefree ``d`` with ``Y <= d <= 2Y``, and its size.

    >>> enumerate_DY(10)[0].tolist()
    [11, 13, 15, 17, 19]
    """
    if Y < 1:
        raise ValueError(f"enumerate_DY needs Y >= 1; got {Y}")
    lo, hi = math.ceil(Y), math.floor(2 * Y)
    mu = mobius_table(lo, hi + 1)
    d = np.arange(lo, hi + 1, dtype=np.int64)
    keep = (d % 2 == 1) & (mu != 0)
    return d[keep], int(np.count_nonzero(keep))


# -- the Poisson identity ----------------------------------------------------


def _odd_window_range(X: float) -> np.ndarray:
    d = np.arange(math.floor(X) + 1, math.ceil(2 * X), dtype=np.int64)
    return d[d % 2 == 1]


def _poisson_lhs(k: int, X: float, z: float, window: SmoothWindow) -> float:
    d = _odd_window_range(X)
    if not d.size:
        return 0.0
    weights = M_z_range(int(d[0]), int(d[-1]) + 1, z)[d - d[0]]
    chi = jacobi_table(k)[d % k]
    return math.fsum((weights * chi * window.phi(d / X)).tolist())


def _poisson_rhs_parts(
    k: int, X: float, z: float, window: SmoothWindow, caps: Dict[int, int]
) -> Tuple[float, float]:
    """
    The Poisson side split into terms with ``m`` a positive perfect square and the rest.
    """
    G = G_table(k).real
    square_terms: List[float] = []
    other_terms: List[float] = []
    for alpha, M in caps.items():
        m = np.arange(-M, M + 1, dtype=np.int64)
        xi = m * (X / (2 * alpha**2 * k))
        signs = np.where(m % 2 == 0, 1.0, -1.0)
        terms = signs * G[m % k] * tilde_transform_many(window, xi) * (mobius(alpha) / alpha**2)
        roots = np.sqrt(np.maximum(m, 0)).astype(np.int64)
        is_square = (m > 0) & (roots * roots == m)
        square_terms.append(math.fsum(terms[is_square].tolist()))
        other_terms.append(math.fsum(terms[~is_square].tolist()))
    scale = X / (2 * k) * jacobi(2, k)
    return scale * math.fsum(square_terms), scale * math.fsum(other_terms)


def poisson_identity_check(
    k: int,
    X: float,
    z: float,
    window: SmoothWindow,
    m_cap: Optional[int] = None,
) -> PoissonCheck:
    """
    Evaluate both sides of

        Σ_{d odd} M_z(d)·(d/k)·Φ(d/X)
            = (X/2k)·(2/k)·Σ_{α<=z, (α,2k)=1} μ(α)/α² Σ_m (-1)^m G_m(k)·Φ̃(mX/(2α²k))

    independently. Without ``m_cap`` the truncation comes from
    :func:`choose_m_cap`; an explicit ``m_cap`` applies to every ``α`` and
    must be at least that large.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"poisson_identity_check needs an odd positive k; got {k}")
    lhs = _poisson_lhs(k, X, z, window)
    caps = choose_m_cap(window, k, X, z, POISSON_TAIL_TOL * max(1.0, abs(lhs)))
    required = max(caps.values(), default=0)
    if m_cap is not None:
        if m_cap < required:
            raise ValueError(f"m_cap={m_cap} is below the certified truncation point {required}")
        caps = {alpha: m_cap for alpha in caps}
    square, other = _poisson_rhs_parts(k, X, z, window, caps)
    rhs = square + other
    rel_err = abs(lhs - rhs) / max(1.0, abs(lhs))
    logger.debug("poisson k=%d X=%g z=%g U=%g: lhs=%.12g rhs=%.12g", k, X, z, window.U, lhs, rhs)
    return PoissonCheck(
        k=k,
        X=X,
        z=z,
        U=window.U,
        m_cap=max(caps.values(), default=0),
        lhs=lhs,
        rhs=rhs,
        rel_err=rel_err,
    )


# -- the smoothed mean value -------------------------------------------------


def default_U(x: float, Y: float) -> float:
    """
    ``x^{1/8}·Y^{1/4}``, raised to 4 when smaller.
    """
    U = x ** (1 / 8) * Y ** (1 / 4)
    if U < 4:
        warn(f"U = x^(1/8) Y^(1/4) = {U:.3f} is below 4; using U = 4")
        return 4.0
    return U


def optimal_z(x: float, Y: float, U: float) -> float:
    """
    ``Y^{1/2}/(U·x^{1/4})``, raised to 1 when smaller.
    """
    return max(1.0, math.sqrt(Y) / (U * x ** (1 / 4)))


def _legendre_of(values: np.ndarray, p: int) -> np.ndarray:
    if p <= 4 * values.size:
        return legendre_table(p)[values % p].astype(np.int64)
    lifted = powmod_array(values, (p - 1) // 2, p).astype(np.int64)
    return np.where(lifted == p - 1, -1, lifted)


def smoothed_mean(
    x: float,
    Y: float,
    z: Optional[float] = None,
    U: Optional[float] = None,
    poisson: bool = False,
    cross_check: bool = True,
) -> SmoothedMeanResult:
    """
    ``S = (1/#D(Y))·Σ_{a odd} μ²(a)·P_{(8a,2)}(x)·Φ_Y(a/Y)`` and its decomposition.

    With ``χ₀`` principal and ``(8a/p)`` the Legendre symbol::

        S   = S1 + S2
        S1  = (1/2#D(Y)) Σ_{2<p<=x} Σ_a μ²(a)·χ₀(8a)·Φ(a/Y)
        S2  = (1/2#D(Y)) Σ_{2<p<=x} Σ_a μ²(a)·(8a/p)·Φ(a/Y)  = S21 + S22

    where ``S21`` and ``S22`` replace ``μ²`` by ``M_z`` and ``R_z``.

    Args:
        z: Square-part cutoff; defaults to :func:`optimal_z`.
        U: Window edge parameter; defaults to :func:`default_U`.
        poisson: Also evaluate ``S21`` through the Poisson identity for each
            prime, split into ``S_sq`` (``m`` a perfect square) and ``S_nonsq``.
        cross_check: Also evaluate ``S`` from per-prime power-residue tests and compare.
    """
    if Y < 16:
        raise ValueError(f"smoothed_mean needs Y >= 16; got {Y}")
    if x < 3:
        raise ValueError(f"smoothed_mean needs x >= 3; got {x}")
    U = default_U(x, Y) if U is None else U
    window = make_window(U)
    z = optimal_z(x, Y, U) if z is None else max(1.0, z)
    _, D_count = enumerate_DY(Y)

    a = _odd_window_range(Y)
    lo, hi = int(a[0]), int(a[-1]) + 1
    offsets = a - lo
    weights = window.phi(a / Y)
    mu2 = (mobius_table(lo, hi) != 0).astype(np.int64)[offsets]
    Mz = M_z_range(lo, hi, z)[offsets]
    Rz = R_z_range(lo, hi, z)[offsets]
    if not np.array_equal(Mz + Rz, mu2):
        raise InvariantViolation("M_z + R_z differs from μ² on the window range")
    eight_a = 8 * a
    sf = mu2 == 1

    s1_parts: List[float] = []
    s2_parts: List[float] = []
    s21_parts: List[float] = []
    s22_parts: List[float] = []
    direct_parts: List[float] = []
    square_parts: List[float] = []
    other_parts: List[float] = []
    for segment in iter_prime_segments(PrimeRange(lo=3, hi=math.floor(x) + 1)):
        for p in segment.tolist():
            chi0 = (a % p != 0).astype(np.int64)
            leg = _legendre_of(eight_a, p)
            s1_parts.append(float(np.dot(mu2 * chi0, weights)))
            s2_parts.append(float(np.dot(mu2 * leg, weights)))
            s21 = float(np.dot(Mz * leg, weights))
            s21_parts.append(s21)
            s22_parts.append(float(np.dot(Rz * leg, weights)))
            if cross_check:
                residues = powmod_array(eight_a[sf], (p - 1) // 2, p) == 1
                direct_parts.append(float(weights[sf][residues].sum()))
            if poisson:
                # Σ M_z(a)(a/p)Φ(a/Y) = (2/p)·s21, and the Poisson side carries (2/p) again
                target = abs(s21)
                caps = choose_m_cap(window, p, Y, z, POISSON_TAIL_TOL * max(1.0, target))
                square, other = _poisson_rhs_parts(p, Y, z, window, caps)
                sign = jacobi(2, p)
                square_parts.append(sign * square)
                other_parts.append(sign * other)

    norm = 2 * D_count
    S1 = math.fsum(s1_parts) / norm
    S2 = math.fsum(s2_parts) / norm
    S21 = math.fsum(s21_parts) / norm
    S22 = math.fsum(s22_parts) / norm
    S = S1 + S2
    if rel_diff(S2, S21 + S22) > SMOOTH_REL_TOL:
        raise InvariantViolation(f"S2 = {S2!r} but S21 + S22 = {S21 + S22!r}")

    S_direct = None
    if cross_check:
        S_direct = math.fsum(direct_parts) / D_count
        if rel_diff(S, S_direct) > SMOOTH_REL_TOL:
            raise InvariantViolation(f"split S = {S!r} but direct S = {S_direct!r}")
    S_sq = S_nonsq = None
    if poisson:
        S_sq = math.fsum(square_parts) / norm
        S_nonsq = math.fsum(other_parts) / norm
        if rel_diff(S21, S_sq + S_nonsq) > POISSON_REL_TOL:
            raise InvariantViolation(f"S21 = {S21!r} but the Poisson side gives {S_sq + S_nonsq!r}")

    pi_x = pi(x)
    main = pi_x / 2
    logger.info("smoothed_mean x=%g Y=%g U=%.3f z=%.3f: S=%.6g main=%.6g", x, Y, U, z, S, main)
    return SmoothedMeanResult(
        x=x,
        Y=Y,
        U=U,
        z=z,
        D_count=D_count,
        S=S,
        S1=S1,
        S2=S2,
        S21=S21,
        S22=S22,
        S_direct=S_direct,
        S_sq=S_sq,
        S_nonsq=S_nonsq,
        main=main,
        abs_error=abs(S - main),
        pi_x=pi_x,
        s1_error_scale=Y / D_count * math.log(math.log(x)) + pi_x / U,
    )
