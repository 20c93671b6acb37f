import math

import numpy as np
import pytest

from ntlab import gauss_poisson as gp
from ntlab.arith import jacobi, mobius
from ntlab.testing import brute_tau
from ntlab.utils import LabWarning

#: The constant in front of the log log x term of the smoothed S1 error.
SMOOTHED_S1_CONSTANT = 1


@pytest.mark.parametrize("k", [1, 3, 9, 15, 45, 49])
def test_jacobi_table(k):
    assert gp.jacobi_table(k).tolist() == [jacobi(a, k) for a in range(k)]


def test_jacobi_table__rejects_even_modulus():
    with pytest.raises(ValueError):
        gp.jacobi_table(12)


@pytest.mark.parametrize("k", [3, 5, 7, 9, 21, 25, 27])
def test_tau_m__matches_term_by_term_sum(k):
    for m in range(-k, 2 * k):
        assert abs(gp.tau_m(k, m) - brute_tau(k, m)) < 1e-9


@pytest.mark.parametrize("k", [1, 15, 21, 63])
def test_tau_table(k):
    table = gp.tau_table(k)
    for m in range(k):
        assert abs(table[m] - gp.tau_m(k, m)) < 1e-9


@pytest.mark.parametrize(
    "k,m,expected",
    [
        (3, 1, math.sqrt(3)),
        (5, 1, math.sqrt(5)),
        (5, 2, -math.sqrt(5)),
        (9, 0, 6),
        (9, 3, -3),
        (9, 1, 0),
        (27, 9, 9 * math.sqrt(3)),
        (15, 0, 0),
        (1, 7, 1),
    ],
)
def test_G_formula(k, m, expected):
    assert gp.G_formula(k, m) == pytest.approx(expected, abs=1e-12)
    assert gp.G_direct(k, m) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("k", [3, 7, 11, 33, 35])
def test_G_direct__is_real(k):
    for m in range(-5, 6):
        assert abs(gp.G_direct(k, m).imag) < 1e-9


def test_verify_gauss_sums():
    check = gp.verify_gauss_sums(45, 12, pairs=30, seed=1)
    assert check.failures == []
    assert check.multiplicativity_failures == []
    assert check.checked == 23 * 25
    assert check.max_rel_err < gp.GAUSS_REL_TOL


@pytest.mark.slow
def test_verify_gauss_sums__full_range():
    check = gp.verify_gauss_sums(3465, 60, pairs=200)
    assert check.failures == []
    assert check.multiplicativity_failures == []


def test_transition():
    u = np.array([-1.0, 0.0, 0.25, 0.5, 0.75, 1.0, 2.0])
    r = gp.transition(u)
    assert r[0] == r[1] == 0
    assert r[5] == r[6] == 1
    assert r[3] == 0.5
    assert r[2] + r[4] == pytest.approx(1)
    assert np.all(np.diff(r) >= 0)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_transition__derivatives_match_finite_differences(j):
    u = np.linspace(0.1, 0.9, 17)
    h = 1e-5
    numeric = (gp.transition(u + h, j - 1) - gp.transition(u - h, j - 1)) / (2 * h)
    assert np.allclose(gp.transition(u, j), numeric, rtol=1e-5, atol=1e-6)


def test_transition__rejects_high_order():
    with pytest.raises(ValueError):
        gp.transition(np.array([0.5]), gp.J_TAIL + 1)


def test_transition_constants():
    sup, l1 = gp.transition_constants()
    # r is monotone from 0 to 1, so its derivative integrates to 1
    assert l1[1] == pytest.approx(gp.CERTIFY_MARGIN, rel=1e-4)
    for j in range(1, gp.J_TAIL + 1):
        assert sup[j] > 0
        assert l1[j] <= sup[j]


def test_window(window8):
    assert window8.plateau == (1.125, 1.875)
    assert window8.phi(1.5) == 1.0
    assert window8.phi(1 + 1 / 16) == pytest.approx(0.5)
    assert window8.phi(2 - 1 / 16) == pytest.approx(0.5)
    assert window8.phi(1.0) == window8.phi(2.0) == window8.phi(0.5) == 0
    t = np.linspace(0.9, 2.1, 121)
    values = window8.phi(t)
    assert values.shape == t.shape
    assert np.all((values >= 0) & (values <= 1))
    assert np.allclose(values, window8.phi(3 - t))


def test_window__derivative_matches_finite_differences(window8):
    t = np.array([1.02, 1.05, 1.1, 1.5, 1.9, 1.95, 1.98])
    h = 1e-7
    numeric = (window8.phi(t + h) - window8.phi(t - h)) / (2 * h)
    assert np.allclose(window8.dphi(t), numeric, rtol=1e-5, atol=1e-5)
    assert window8.derivative(1.95, 1) < 0 < window8.derivative(1.05, 1)
    assert window8.derivative(1.5, 3) == 0


@pytest.mark.parametrize("U", [8, 32, 128])
def test_window__derivative_bounds(U):
    window = gp.make_window(U)
    t = np.linspace(1, 2, 200_001)
    for j in range(1, gp.J_MAX + 1):
        scaled = np.abs(window.derivative(t, j)).max() / U**j
        assert scaled <= window.derivative_bound_consts[j]


def test_make_window__rejects_small_U():
    with pytest.raises(ValueError):
        gp.make_window(3.5)


@pytest.mark.parametrize("U", [4, 8, 32])
def test_tilde_transform__at_zero(U):
    assert gp.tilde_transform(gp.make_window(U), 0) == pytest.approx(1 - 1 / U, abs=1e-12)


@pytest.mark.parametrize("xi", [0.3, -0.7, 1.7, 4.5, 12.5, -30.25])
def test_tilde_transform_many__matches_adaptive_quadrature(window8, xi):
    many = gp.tilde_transform_many(window8, np.array([xi]))[0]
    assert many == pytest.approx(gp.tilde_transform(window8, xi), abs=1e-10)


def test_tilde_transform_many__shape(window8):
    xis = np.linspace(-3, 3, 12).reshape(3, 4)
    assert gp.tilde_transform_many(window8, xis).shape == (3, 4)
    assert gp.tilde_transform_many(window8, np.array([])).shape == (0,)


def test_tilde_transform__decay(window32):
    C, C_prime = gp.tilde_decay_constants(window32)
    xis = np.linspace(0.05, 400, 4000)
    values = np.abs(gp.tilde_transform_many(window32, xis))
    assert np.all(values <= np.minimum(C, C_prime / xis))


def test_tilde_tail_bound(window8):
    c, M = 0.5, 20
    m = np.arange(M + 1, 2000)
    xis = np.concatenate([-m * c, m * c])
    tail = np.abs(gp.tilde_transform_many(window8, xis)).sum()
    assert tail <= gp.tilde_tail_bound(window8, c, M)
    assert gp.tilde_tail_bound(window8, c, 0) == math.inf


def test_poisson_alphas():
    assert gp.poisson_alphas(3, 10) == [1, 5, 7]
    assert gp.poisson_alphas(1, 6) == [1, 3, 5]
    assert gp.poisson_alphas(15, 1) == [1]


@pytest.mark.parametrize(
    "a,z,M,R",
    [
        (12, 1, 1, -1),
        (12, 2, 0, 0),
        (15, 1, 1, 0),
        (36, 1, 1, -1),
        (36, 3, -1, 1),
        (36, 6, 0, 0),
    ],
)
def test_M_z_R_z(a, z, M, R):
    assert gp.M_z(a, z) == M
    assert gp.R_z(a, z) == R


@pytest.mark.parametrize("z", [1, 2.5, 7, 40])
def test_M_z_range(z):
    lo, hi = 1, 2000
    M = gp.M_z_range(lo, hi, z)
    R = gp.R_z_range(lo, hi, z)
    assert M.tolist() == [gp.M_z(a, z) for a in range(lo, hi)]
    assert R.tolist() == [gp.R_z(a, z) for a in range(lo, hi)]
    assert (M + R).tolist() == [mobius(a) ** 2 for a in range(lo, hi)]


@pytest.mark.slow
@pytest.mark.parametrize("z", [1, 10, 100])
def test_M_z_plus_R_z_is_squarefree_indicator(z):
    from ntlab.arith import mobius_table

    hi = 10**5 + 1
    total = gp.M_z_range(1, hi, z) + gp.R_z_range(1, hi, z)
    assert np.array_equal(total, (mobius_table(1, hi) != 0).astype(np.int64))


def test_enumerate_DY():
    d, count = gp.enumerate_DY(10)
    assert d.tolist() == [11, 13, 15, 17, 19]
    assert count == 5
    assert gp.enumerate_DY(1)[0].tolist() == [1]
    with pytest.raises(ValueError):
        gp.enumerate_DY(0.5)


@pytest.mark.slow
def test_enumerate_DY__density():
    _, count = gp.enumerate_DY(10**6)
    assert count / 10**6 == pytest.approx(4 / math.pi**2, rel=0.01)


@pytest.mark.parametrize("k", [1, 3, 5, 15])
@pytest.mark.parametrize("z", [1, 3])
def test_poisson_identity_check(window8, k, z):
    check = gp.poisson_identity_check(k, 200, z, window8)
    assert check.rel_err <= gp.POISSON_REL_TOL
    assert check.m_cap >= 1


def test_poisson_identity_check__stable_under_larger_cap(window8):
    check = gp.poisson_identity_check(3, 500, 3, window8)
    wider = gp.poisson_identity_check(3, 500, 3, window8, m_cap=2 * check.m_cap)
    assert wider.m_cap == 2 * check.m_cap
    assert wider.rhs == pytest.approx(check.rhs, abs=1e-8 * max(1.0, abs(check.lhs)))
    assert wider.lhs == check.lhs


def test_poisson_identity_check__rejects(window8):
    with pytest.raises(ValueError):
        gp.poisson_identity_check(3, 500, 3, window8, m_cap=0)
    with pytest.raises(ValueError):
        gp.poisson_identity_check(4, 500, 3, window8)


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 3, 5, 15, 21])
@pytest.mark.parametrize("X", [10**3, 10**4])
@pytest.mark.parametrize("z", [1, 3, 10])
@pytest.mark.parametrize("U", [8, 32])
def test_poisson_identity_check__grid(k, X, z, U):
    check = gp.poisson_identity_check(k, X, z, gp.make_window(U))
    assert check.rel_err <= gp.POISSON_REL_TOL


def test_default_U_and_optimal_z():
    assert gp.default_U(10**8, 10**4) == pytest.approx(100)
    with pytest.warns(LabWarning):
        assert gp.default_U(3, 16) == 4
    assert gp.optimal_z(10**4, 10**6, 100) == pytest.approx(1)
    assert gp.optimal_z(10**4, 10**8, 10) == pytest.approx(100)
    assert gp.optimal_z(10**4, 100, 10) == 1


def test_smoothed_mean():
    result = gp.smoothed_mean(500, 64)
    assert result.S == pytest.approx(result.S1 + result.S2)
    assert result.S2 == pytest.approx(result.S21 + result.S22, rel=1e-9, abs=1e-12)
    assert result.S == pytest.approx(result.S_direct, rel=1e-9)
    assert result.main == result.pi_x / 2 == 47.5
    assert result.D_count == gp.enumerate_DY(64)[1]
    assert result.U == pytest.approx(500 ** (1 / 8) * 64 ** (1 / 4))
    assert result.S_sq is None and result.S_nonsq is None


def test_smoothed_mean__explicit_parameters():
    result = gp.smoothed_mean(300, 100, z=2, U=10, cross_check=False)
    assert result.z == 2
    assert result.U == 10
    assert result.S_direct is None
    assert result.s1_error_scale == pytest.approx(
        100 / result.D_count * math.log(math.log(300)) + result.pi_x / 10
    )


def test_smoothed_mean__s1_near_main_term():
    x, Y = 10**4, 10**3
    result = gp.smoothed_mean(x, Y)
    assert result.D_count == 407
    assert result.S1 == pytest.approx(577.1575, abs=1e-3)
    loglog = math.log(math.log(x))
    bound = Y / result.D_count * SMOOTHED_S1_CONSTANT * loglog + result.pi_x / result.U
    assert abs(result.S1 - result.main) <= bound
    assert bound == pytest.approx(result.s1_error_scale)


def test_smoothed_mean__poisson_split():
    result = gp.smoothed_mean(100, 64, poisson=True)
    assert result.S21 == pytest.approx(result.S_sq + result.S_nonsq, rel=1e-6, abs=1e-9)


def test_smoothed_mean__clamps_small_U():
    with pytest.warns(LabWarning):
        result = gp.smoothed_mean(50, 16)
    assert result.U == 4


@pytest.mark.parametrize("x,Y", [(100, 15), (2, 64)])
def test_smoothed_mean__rejects(x, Y):
    with pytest.raises(ValueError):
        gp.smoothed_mean(x, Y)


@pytest.mark.slow
@pytest.mark.parametrize("x,Y", [(500, 64), (5000, 256)])
def test_smoothed_mean__split_matches_direct(x, Y):
    result = gp.smoothed_mean(x, Y)
    assert result.S == pytest.approx(result.S_direct, rel=1e-9)


@pytest.mark.slow
def test_smoothed_mean__error_shrinks_with_Y():
    near = gp.smoothed_mean(10**4, 10**4, cross_check=False)
    far = gp.smoothed_mean(10**4, 10**6, cross_check=False)
    assert far.abs_error < near.abs_error
