"""Toeplitz operators with arc-indicator symbols and their Meixner-Pollaczek eigenbasis.

For the arc A = {e^{i phi}: alpha + beta <= phi <= alpha + 2 pi - beta} the
Toeplitz matrix of 1_A is diagonalised by h_n(s), n >= 0, an orthonormal
basis of L^2(0, 1) built from Meixner-Pollaczek polynomials of order 1/2:

    int_0^1 conj(h_m) h_n ds = delta_mn,   int_0^1 s conj(h_m) h_n ds = c(m - n).

Integrals over s are evaluated in x = ln(1/s - 1) / (2 pi), where the
integrand is a polynomial times e^{2 beta x} / (1 + e^{2 pi x}).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .quadrature import QuadratureRule, composite_legendre
from .specfun import meixner_pollaczek
from .wiener_hopf import DenseOperator

X_TRUNCATION = 20.0
TAIL_TARGET = 1e-16


@dataclass(frozen=True)
class ArcSpec:
    alpha: float
    beta: float

    def __post_init__(self):
        if not 0.0 <= self.alpha < 2.0 * np.pi:
            raise ValueError(f"alpha must lie in [0, 2 pi), got {self.alpha}")
        if not 0.0 < self.beta < np.pi:
            raise ValueError(f"beta must lie in (0, pi), got {self.beta}")

    @property
    def measure(self) -> float:
        """Normalised arc length 1 - beta/pi."""
        return 1.0 - self.beta / np.pi

    def contains(self, phi):
        """Indicator of the arc at angles phi (boundary points count as inside)."""
        rel = np.mod(np.asarray(phi, dtype=float) - self.alpha, 2.0 * np.pi)
        return (rel >= self.beta) & (rel <= 2.0 * np.pi - self.beta)


def special_arc() -> ArcSpec:
    """The arc with alpha = 0, tan(beta/2) = 1/2 that links the arc to K."""
    return ArcSpec(0.0, 2.0 * np.arctan(0.5))


@dataclass(frozen=True)
class MoebiusMap:
    """chi(x) = e^{i alpha} (x - i tau) / (x + i tau), tau = tan(beta/2)."""

    arc: ArcSpec

    @property
    def tau(self) -> float:
        return float(np.tan(0.5 * self.arc.beta))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(1j * self.arc.alpha) * (x - 1j * self.tau) / (x + 1j * self.tau)

    def inverse(self, z):
        w = np.asarray(z, dtype=complex) * np.exp(-1j * self.arc.alpha)
        x = 1j * self.tau * (1.0 + w) / (1.0 - w)
        return x.real


def arc_fourier_coeff(k: int, arc: ArcSpec) -> complex:
    """Fourier coefficient of the arc indicator, (1/2pi) int_A e^{-ik phi} d phi."""
    if k == 0:
        return complex(arc.measure)
    return complex(-np.exp(-1j * k * arc.alpha) * np.sin(k * arc.beta) / (np.pi * k))


def _index_rule(N: int) -> QuadratureRule:
    return QuadratureRule(np.arange(N, dtype=float), np.ones(N), "index",
                          (0.0, float(max(N - 1, 0))), 1)


def toeplitz_matrix(N: int, arc: ArcSpec) -> DenseOperator:
    """N x N section T_mn = c(m - n) of the Toeplitz operator of 1_A."""
    if N < 1:
        raise ValueError("N must be >= 1")
    c = {k: arc_fourier_coeff(k, arc) for k in range(-(N - 1), N)}
    T = np.array([[c[m - n] for n in range(N)] for m in range(N)])
    rule = _index_rule(N)
    return DenseOperator(rule, rule, T, hermitian=True)


def h_basis(n: int, s, arc: ArcSpec):
    """h_n(s) = e^{in alpha} sqrt(sin(beta)/pi) (1/s-1)^{beta/2pi} (1-s)^{-1/2} P_n(x; beta)."""
    if n < 0:
        raise ValueError("index must be >= 0")
    s = np.asarray(s, dtype=float)
    if np.any((s <= 0) | (s >= 1)):
        raise ValueError("s must lie in (0, 1)")
    x = np.log(1.0 / s - 1.0) / (2.0 * np.pi)
    b = arc.beta
    return (np.exp(1j * n * arc.alpha) * np.sqrt(np.sin(b) / np.pi)
            * (1.0 / s - 1.0) ** (b / (2.0 * np.pi)) / np.sqrt(1.0 - s)
            * meixner_pollaczek(n, x, b))


def _edge_tails(m: int, n: int, beta: float, lo: float, hi: float) -> np.ndarray:
    """Integrand magnitude at each cut divided by its exponential decay rate."""
    ends = np.array([lo, hi])
    se = expit(-2.0 * np.pi * ends)
    edge = np.abs(2.0 * np.sin(beta) * np.exp(2.0 * beta * ends) * se
                  * meixner_pollaczek(m, ends, beta) * meixner_pollaczek(n, ends, beta))
    return edge / np.array([2.0 * beta, 2.0 * (np.pi - beta)])


def x_window(m: int, n: int, arc: ArcSpec) -> tuple[float, float]:
    """Cut points, at least |x| = 20, widened in steps of 5 until each tail is below 1e-16.

    The left tail decays like e^{2 beta x}, so narrow arcs with small beta and
    high-degree polynomials need a longer left window.
    """
    lo, hi = -X_TRUNCATION, X_TRUNCATION
    for _ in range(200):
        tl, tr = _edge_tails(m, n, arc.beta, lo, hi)
        if tl <= TAIL_TARGET and tr <= TAIL_TARGET:
            break
        if tl > TAIL_TARGET:
            lo -= 5.0
        if tr > TAIL_TARGET:
            hi += 5.0
    return lo, hi


def arc_moments(m: int, n: int, arc: ArcSpec, quad_order: int = 1280) -> tuple[complex, complex, float]:
    """(int conj(h_m) h_n ds, int s conj(h_m) h_n ds, truncation estimate).

    Under s = 1/(1 + e^{2 pi x}) one has conj(h_m) h_n ds =
    2 sin(beta) e^{i(n-m) alpha} e^{2 beta x} s P_m P_n dx.  ``quad_order``
    is the number of nodes spent on [-20, 20]; longer windows keep the same
    panel density.
    """
    if quad_order < 16:
        raise ValueError("quad_order must be >= 16")
    lo, hi = x_window(m, n, arc)
    # poles of the weight sit at distance 1/2 from the real axis, so panels
    # must stay short (default 0.5) for geometric convergence
    width = 2.0 * X_TRUNCATION / max(1, quad_order // 16)
    rule = composite_legendre(np.linspace(lo, hi, int(np.ceil((hi - lo) / width)) + 1), 16, "line")
    x = rule.nodes
    b = arc.beta
    s = expit(-2.0 * np.pi * x)
    base = 2.0 * np.sin(b) * np.exp(2.0 * b * x) * s
    PP = meixner_pollaczek(m, x, b) * meixner_pollaczek(n, x, b)
    phase = np.exp(1j * (n - m) * arc.alpha)
    gram = phase * np.sum(rule.weights * base * PP)
    moment = phase * np.sum(rule.weights * base * s * PP)
    trunc = float(np.sum(_edge_tails(m, n, b, lo, hi)))
    return complex(gram), complex(moment), trunc


def spectral_rep_check(m: int, n: int, arc: ArcSpec, quad_order: int = 1280) -> float:
    """|c(m - n) - int_0^1 s conj(h_m) h_n ds|."""
    _, moment, _ = arc_moments(m, n, arc, quad_order)
    return float(abs(arc_fourier_coeff(m - n, arc) - moment))


def orthonormality_check(m: int, n: int, arc: ArcSpec, quad_order: int = 1280) -> float:
    """|delta_mn - int_0^1 conj(h_m) h_n ds|."""
    gram, _, _ = arc_moments(m, n, arc, quad_order)
    return float(abs((1.0 if m == n else 0.0) - gram))


def indicator_consistency(arc: ArcSpec, n_samples: int = 200, margin: float = 1e-9) -> int:
    """Number of sample angles where 1_A(e^{i phi}) != 1_[-1,1](chi^{-1}(e^{i phi})).

    Angles within ``margin`` of an arc endpoint, and the point chi(inf) =
    e^{i alpha}, are excluded.
    """
    chi = MoebiusMap(arc)
    phi = np.linspace(0.0, 2.0 * np.pi, n_samples, endpoint=False) + 0.5 * np.pi / n_samples
    rel = np.mod(phi - arc.alpha, 2.0 * np.pi)
    keep = ((np.abs(rel - arc.beta) > margin) & (np.abs(rel - (2 * np.pi - arc.beta)) > margin)
            & (rel > margin) & (rel < 2 * np.pi - margin))
    phi = phi[keep]
    lhs = arc.contains(phi)
    rhs = np.abs(chi.inverse(np.exp(1j * phi))) <= 1.0
    return int(np.sum(lhs != rhs))
