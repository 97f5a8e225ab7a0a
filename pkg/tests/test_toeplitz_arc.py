import math

import mpmath as mp
import numpy as np
import pytest
from scipy import integrate as sint

from sincspec.toeplitz_arc import (ArcSpec, MoebiusMap, arc_fourier_coeff, arc_moments, h_basis,
                                   indicator_consistency, orthonormality_check, special_arc,
                                   spectral_rep_check, toeplitz_matrix, x_window)
from sincspec.wiener_hopf import gram_K_laguerre

ARCS = [ArcSpec(0.0, math.pi / 2), ArcSpec(math.pi / 4, math.pi / 3), special_arc()]


def phi_integral(k, arc):
    """(1/2pi) int over the arc of e^{-ik phi}, by QUADPACK."""
    a, b = arc.alpha + arc.beta, arc.alpha + 2 * math.pi - arc.beta
    re = sint.quad(lambda p: math.cos(k * p), a, b, limit=200)[0]
    im = -sint.quad(lambda p: math.sin(k * p), a, b, limit=200)[0]
    return (re + 1j * im) / (2 * math.pi)


def h_mp(n, s, arc, u=None):
    """h_n(s) in mpmath, with the polynomial from its 2F1 representation; u = 1 - s if given."""
    b = mp.mpf(arc.beta)
    if u is None:
        u = 1 - s
    if s <= 0 or u <= 0:
        return mp.mpc(0)  # tanh-sinh nodes that round onto an endpoint
    r = u / s  # 1/s - 1 without cancellation near s = 1
    x = mp.log(r) / (2 * mp.pi)
    P = mp.exp(1j * n * b) * mp.hyp2f1(-n, mp.mpf(0.5) + 1j * x, 1, 1 - mp.exp(-2j * b))
    return (mp.exp(1j * n * arc.alpha) * mp.sqrt(mp.sin(b) / mp.pi) * r ** (b / (2 * mp.pi))
            / mp.sqrt(u) * mp.re(P))


def s_moment(m, n, arc, power):
    """int_0^1 s^power conj(h_m) h_n ds directly in s, tanh-sinh in mpmath.

    The right half runs in u = 1 - s: near s = 1 the integrand behaves like
    u^(beta/pi - 1) and keeps visible mass far below u = 1e-20.
    """
    mp.mp.dps = 25
    # h_n oscillates in ln(s) and ln(1-s), so panels are split geometrically
    pts = [0] + [mp.mpf(10) ** -k for k in (60, 40, 20, 12, 8, 5, 3, 1)] + [0.5]

    def left(s):
        return s ** power * mp.conj(h_mp(m, s, arc)) * h_mp(n, s, arc)

    def right(u):
        s = 1 - u
        return s ** power * mp.conj(h_mp(m, s, arc, u)) * h_mp(n, s, arc, u)

    return complex(mp.quad(left, pts) + mp.quad(right, pts))


# --- arc and coefficients ---

def test_arc_validation():
    for a, b in [(-0.1, 1.0), (2 * math.pi, 1.0), (0.0, 0.0), (0.0, math.pi)]:
        with pytest.raises(ValueError):
            ArcSpec(a, b)
    assert ArcSpec(0.0, math.pi / 2).measure == 0.5
    assert special_arc().beta == pytest.approx(2 * math.atan(0.5))


def test_coeff_examples():
    arc = ArcSpec(0.0, math.pi / 2)
    assert arc_fourier_coeff(0, arc) == pytest.approx(0.5, abs=1e-15)
    assert arc_fourier_coeff(1, arc) == pytest.approx(-1 / math.pi, abs=1e-15)
    assert phi_integral(0, arc) == pytest.approx(0.5, abs=1e-12)
    assert phi_integral(1, arc) == pytest.approx(-1 / math.pi, abs=1e-12)


@pytest.mark.parametrize("arc", ARCS)
@pytest.mark.parametrize("k", [-3, -1, 0, 1, 2, 7])
def test_coeff_against_phi_integral(arc, k):
    assert arc_fourier_coeff(k, arc) == pytest.approx(phi_integral(k, arc), abs=1e-12)


def test_coeff_phase_rule():
    a0, a1 = ArcSpec(0.0, 1.1), ArcSpec(2.0, 1.1)
    for k in range(-4, 5):
        assert arc_fourier_coeff(k, a1) == pytest.approx(np.exp(-2j * k) * arc_fourier_coeff(k, a0), abs=1e-15)


# --- Toeplitz sections ---

def test_toeplitz_single_entry():
    arc = ArcSpec(0.3, 0.7)
    T = toeplitz_matrix(1, arc).entries
    assert T.shape == (1, 1) and T[0, 0] == pytest.approx(1 - 0.7 / math.pi)
    with pytest.raises(ValueError):
        toeplitz_matrix(0, arc)


def test_toeplitz_structure():
    T = toeplitz_matrix(12, ArcSpec(math.pi / 4, math.pi / 3)).entries
    for d in range(-11, 12):
        diag = np.diagonal(T, offset=d)
        assert np.all(diag == diag[0])
    assert np.allclose(T, T.conj().T, atol=0)


@pytest.mark.parametrize("arc", ARCS)
def test_toeplitz_containment(arc):
    ev = np.linalg.eigvalsh(toeplitz_matrix(60, arc).entries)
    assert ev.min() >= -1e-10 and ev.max() <= 1 + 1e-10


# --- h basis ---

def test_h_basis_examples():
    assert h_basis(0, 0.5, ArcSpec(0.0, math.pi / 2)) == pytest.approx(math.sqrt(2 / math.pi), abs=1e-15)
    assert h_basis(0, 0.5, special_arc()) == pytest.approx(math.sqrt(8 / (5 * math.pi)), abs=1e-15)
    for bad in (0.0, 1.0, -0.2, 1.3):
        with pytest.raises(ValueError):
            h_basis(0, bad, special_arc())
    with pytest.raises(ValueError):
        h_basis(-1, 0.5, special_arc())


def test_h_basis_against_hypergeometric():
    for arc in ARCS:
        for n in range(5):
            for s in (0.05, 0.4, 0.9):
                assert h_basis(n, s, arc) == pytest.approx(complex(h_mp(n, mp.mpf(s), arc)), abs=1e-12)


def test_h_basis_phase_rule():
    s = np.array([0.1, 0.5, 0.93])
    a0, a1 = ArcSpec(0.0, 0.9), ArcSpec(1.3, 0.9)
    for n in range(5):
        assert np.allclose(h_basis(n, s, a1), np.exp(1.3j * n) * h_basis(n, s, a0), atol=1e-14)


@pytest.mark.parametrize("arc", ARCS)
@pytest.mark.parametrize("m,n", [(0, 0), (0, 1), (1, 1)])
def test_moments_against_s_integral(arc, m, n):
    gram, moment, trunc = arc_moments(m, n, arc)
    assert trunc <= 1e-15
    assert gram == pytest.approx(s_moment(m, n, arc, 0), abs=1e-8)
    assert moment == pytest.approx(s_moment(m, n, arc, 1), abs=1e-8)


def test_moment_with_phases_against_s_integral():
    arc = ArcSpec(math.pi / 4, math.pi / 3)
    _, moment, _ = arc_moments(2, 0, arc)
    assert moment == pytest.approx(s_moment(2, 0, arc, 1), abs=1e-6)
    assert spectral_rep_check(2, 0, arc) <= 1e-6


def test_spectral_rep_examples():
    assert spectral_rep_check(0, 0, ArcSpec(0.0, math.pi / 2)) <= 1e-6
    _, moment, _ = arc_moments(0, 0, ArcSpec(0.0, math.pi / 2))
    assert moment == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("arc", ARCS)
def test_spectral_rep_all(arc):
    worst = max(spectral_rep_check(m, n, arc) for m in range(7) for n in range(7))
    assert worst <= 1e-6


@pytest.mark.parametrize("arc", ARCS)
def test_orthonormality(arc):
    worst = max(orthonormality_check(m, n, arc) for m in range(9) for n in range(9))
    assert worst <= 1e-8


def test_special_arc_matches_gram_K():
    arc = special_arc()
    for m in range(5):
        for n in range(5):
            _, moment, _ = arc_moments(m, n, arc)
            assert abs(gram_K_laguerre(m, n) - moment) <= 1e-6


def test_quad_order_guard():
    with pytest.raises(ValueError):
        arc_moments(0, 0, special_arc(), quad_order=8)


# --- Moebius map ---

@pytest.mark.parametrize("arc", ARCS)
def test_indicator_pullback(arc):
    assert indicator_consistency(arc) == 0


@pytest.mark.parametrize("arc", ARCS)
def test_moebius_map(arc):
    chi = MoebiusMap(arc)
    x = np.linspace(-50, 50, 1001)
    z = chi(x)
    assert np.max(np.abs(np.abs(z) - 1)) <= 1e-12
    assert np.max(np.abs(chi.inverse(z) - x)) <= 1e-10
    # the endpoints +-1 land on the arc boundary
    ends = np.mod(np.angle(chi(np.array([-1.0, 1.0]))) - arc.alpha, 2 * math.pi)
    assert sorted(ends) == pytest.approx([arc.beta, 2 * math.pi - arc.beta], abs=1e-12)


def test_x_window_widens_for_narrow_gap():
    lo, hi = x_window(0, 0, ArcSpec(0.0, 1.0))
    assert (lo, hi) == (-20.0, 20.0)
    lo, hi = x_window(0, 0, ArcSpec(0.0, 0.05))
    assert lo < -20.0 and hi == 20.0
    assert orthonormality_check(0, 0, ArcSpec(0.0, 0.05)) <= 1e-8
