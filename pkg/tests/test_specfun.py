import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sincspec.specfun import (HalfIntegerOrder, bessel_half_table, bessel_j, bessel_j_prime,
                              jacobi_p01, laguerre_fn, laguerre_poly, legendre_p,
                              legendre_p_prime, meixner_pollaczek, sinc_kernel, sph_bessel_j)


def series_J(nu, x, terms=40):
    """Power series of J_nu in mpmath arithmetic."""
    x = mp.mpf(x)
    return float(mp.fsum((-1) ** k * (x / 2) ** (2 * k + nu) / (mp.factorial(k) * mp.gamma(k + nu + 1))
                         for k in range(terms)))


# --- sinc ---

def test_sinc_examples():
    assert sinc_kernel(0.0) == pytest.approx(1 / math.pi, rel=1e-15)
    assert abs(sinc_kernel(math.pi)) < 1e-16
    assert sinc_kernel(math.pi / 2) == pytest.approx(2 / math.pi ** 2, rel=1e-15)


def test_sinc_continuous_at_zero():
    for h in (1e-3, 1e-6, 1e-9):
        assert abs(sinc_kernel(h) - 1 / math.pi) < h


# --- Bessel ---

def test_sph_bessel_examples():
    assert sph_bessel_j(0, math.pi / 2) == pytest.approx(2 / math.pi, rel=1e-14)
    assert sph_bessel_j(-1, math.pi) == pytest.approx(-math.sqrt(2) / math.pi, rel=1e-14)
    assert sph_bessel_j(5, 0.1) == pytest.approx(series_J(5.5, 0.1), rel=1e-12)


def test_sph_bessel_rejects_nonpositive():
    with pytest.raises(ValueError):
        sph_bessel_j(0, 0.0)
    with pytest.raises(ValueError):
        sph_bessel_j(1, -1.0)


def test_half_integer_order_validation():
    assert HalfIntegerOrder(2).nu == 2.5
    with pytest.raises(ValueError):
        HalfIntegerOrder(-2)


@pytest.mark.parametrize("l", range(0, 9))
@pytest.mark.parametrize("x", [0.05, 0.3, 1.0, 1.7, 2.0])
def test_sph_bessel_against_power_series(l, x):
    assert sph_bessel_j(l, x) == pytest.approx(series_J(l + 0.5, x), rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("x", [0.01, 0.5, 3.0, 12.0, 40.0, 150.0])
def test_bessel_table_against_mpmath(x):
    T = bessel_half_table(30, np.array([x]))[:, 0]
    for k, v in enumerate(T):
        nu = k - 0.5
        ref = float(mp.besselj(nu, x))
        assert v == pytest.approx(ref, rel=1e-11, abs=1e-14 * max(1.0, abs(ref)))


def test_bessel_j_general_order_and_derivative():
    for nu in (0.0, 1.0, 2.3, 4.5):
        for x in (0.4, 2.0, 9.0):
            assert bessel_j(nu, x) == pytest.approx(float(mp.besselj(nu, x)), rel=1e-12, abs=1e-15)
            assert bessel_j_prime(nu, x) == pytest.approx(float(mp.besselj(nu, x, derivative=1)),
                                                          rel=1e-10, abs=1e-14)
    assert bessel_j_prime(-0.5, 1.3) == pytest.approx(float(mp.besselj(-0.5, 1.3, derivative=1)),
                                                      rel=1e-12)


@pytest.mark.parametrize("nu", [0.5, 1.5, 2.5])
@pytest.mark.parametrize("z1,z2", [(1.0, 2.0), (0.5, 3.0)])
def test_bessel_product_identity(nu, z1, z2):
    lhs = 2 * nu * (z1 * bessel_j_prime(nu, z1) * bessel_j(nu, z2)
                    + z2 * bessel_j(nu, z1) * bessel_j_prime(nu, z2))
    rhs = z1 * z2 * (bessel_j(nu - 1, z1) * bessel_j(nu - 1, z2)
                     - bessel_j(nu + 1, z1) * bessel_j(nu + 1, z2))
    assert abs(lhs - rhs) <= 1e-10


# --- orthogonal polynomials ---

def test_legendre_examples():
    assert legendre_p(0, 0.37) == 1.0
    assert legendre_p(2, 0.5) == pytest.approx(-0.125, abs=1e-16)
    assert legendre_p(7, 1.0) == pytest.approx(1.0, abs=1e-15)


@given(st.integers(0, 40), st.floats(-1, 1))
@settings(max_examples=60, deadline=None)
def test_legendre_against_mpmath(l, x):
    assert legendre_p(l, x) == pytest.approx(float(mp.legendre(l, x)), abs=1e-12)
    assert legendre_p_prime(l, x) == pytest.approx(float(mp.diff(lambda t: mp.legendre(l, t), x)),
                                                   abs=1e-9 * max(1, l * l))


def test_jacobi_examples():
    assert jacobi_p01(0, -0.4) == 1.0
    assert jacobi_p01(1, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert jacobi_p01(1, 0.2) == pytest.approx(-0.2, abs=1e-15)


@pytest.mark.parametrize("n", range(0, 12))
def test_jacobi_against_mpmath(n):
    for x in np.linspace(-1, 1, 9):
        assert jacobi_p01(n, x) == pytest.approx(float(mp.jacobi(n, 0, 1, x)), abs=1e-12)


def test_legendre_through_jacobi():
    x = np.linspace(-1, 1, 101)
    for l in range(1, 11):
        res = (2 * l + 1) * legendre_p(l, x) - l * jacobi_p01(l - 1, x) - (l + 1) * jacobi_p01(l, x)
        assert np.max(np.abs(res)) <= 1e-12


def test_laguerre_examples():
    assert laguerre_fn(0, 0.0) == 1.0
    assert laguerre_fn(0, 2.0) == pytest.approx(math.exp(-1), rel=1e-15)
    assert laguerre_fn(1, 0.0) == 1.0
    with pytest.raises(ValueError):
        laguerre_fn(2, -0.1)


@pytest.mark.parametrize("q", [0.1, 0.3])
def test_laguerre_generating_function(q):
    x = np.array([0.5, 2.0, 5.0])
    series = sum(laguerre_fn(n, x) * q ** n for n in range(31))
    closed = np.exp(-x / 2) * np.exp(-x * q / (1 - q)) / (1 - q)
    assert np.max(np.abs(series - closed)) <= 1e-10


@given(st.integers(0, 30), st.floats(0, 60))
@settings(max_examples=60, deadline=None)
def test_laguerre_poly_against_mpmath(n, x):
    ref = float(mp.laguerre(n, 0, x))
    assert laguerre_poly(n, x) == pytest.approx(ref, rel=1e-10, abs=1e-10)


def test_laguerre_orthonormal():
    xg, wg = np.polynomial.laguerre.laggauss(80)
    # l_m l_n = e^{-x} L_m L_n, so Gauss-Laguerre on L_m L_n is exact
    G = np.array([[np.sum(wg * laguerre_poly(m, xg) * laguerre_poly(n, xg)) for n in range(10)]
                  for m in range(10)])
    assert np.allclose(G, np.eye(10), atol=1e-11)


def test_meixner_pollaczek_examples():
    assert meixner_pollaczek(0, 3.3, 1.0) == 1.0
    assert abs(meixner_pollaczek(1, 0.0, math.pi / 2)) < 1e-16
    assert meixner_pollaczek(1, 1.0, math.pi / 3) == pytest.approx(math.sqrt(3) + 0.5, rel=1e-15)
    for bad in (0.0, math.pi, -1.0):
        with pytest.raises(ValueError):
            meixner_pollaczek(2, 0.0, bad)


@pytest.mark.parametrize("beta", [0.4, math.pi / 2, 2.0 * math.atan(0.5), 2.8])
@pytest.mark.parametrize("q", [0.1, 0.3])
def test_meixner_pollaczek_generating_function(beta, q):
    x = np.array([-1.5, 0.0, 0.5, 2.0, 5.0])
    series = sum(meixner_pollaczek(n, x, beta) * q ** n for n in range(31))
    closed = ((1 - np.exp(1j * beta) * q) ** (-0.5 + 1j * x)
              * (1 - np.exp(-1j * beta) * q) ** (-0.5 - 1j * x))
    assert np.max(np.abs(closed.imag)) < 1e-14
    assert np.max(np.abs(series - closed.real)) <= 1e-10


def test_meixner_pollaczek_against_hypergeometric():
    # P_n^(lam)(x; phi) = (2 lam)_n / n! e^{i n phi} 2F1(-n, lam + i x; 2 lam; 1 - e^{-2 i phi})
    lam, beta = 0.5, 1.1
    for n in range(8):
        for x in (-1.0, 0.3, 2.0):
            ref = (mp.rf(2 * lam, n) / mp.factorial(n) * mp.exp(1j * n * beta)
                   * mp.hyp2f1(-n, lam + 1j * x, 2 * lam, 1 - mp.exp(-2j * beta)))
            assert meixner_pollaczek(n, x, beta) == pytest.approx(float(mp.re(ref)), abs=1e-12)
