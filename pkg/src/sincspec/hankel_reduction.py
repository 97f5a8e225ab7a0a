"""Radial reductions of the band-limiting operator.

In three dimensions the localisation operator splits into radial blocks
K_{l+1/2} with kernels

    k_{l+1/2}(r, t) = (1/2) sqrt(rt) / (r - t) (J_{l+3/2}(r) J_{l+1/2}(t) - J_{l+1/2}(r) J_{l+3/2}(t)),

each a finite-rank perturbation of K.  This module evaluates those kernels,
the Lommel kernels of H_nu 1_[0,1] H_nu, the rank-one Bessel projections and
the series identities that relate them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import QuadratureRule, gauss_legendre
from .specfun import bessel_half_table, bessel_j, bessel_j_prime, sinc_kernel

STENCIL_H = 1e-3
# relative |r - t| below which kernels switch to the integral representation
NEAR_DIAGONAL = 1e-3


@dataclass(frozen=True)
class BesselProjectionIndex:
    """Rank-one projection P(2n + i + 1/2) onto s -> sqrt(4n+2i+1) s^(-1/2) J_{2n+i+1/2}(s)."""

    n: int
    i: int

    def __post_init__(self):
        if self.n < 0 or self.i not in (0, 1):
            raise ValueError("need n >= 0 and i in {0, 1}")

    @property
    def order(self) -> float:
        return 2 * self.n + self.i + 0.5

    def function(self, s):
        s = np.asarray(s, dtype=float)
        mu = self.order
        return np.sqrt(2.0 * mu) * bessel_j(mu, s) / np.sqrt(s)

    def kernel(self, r, t):
        return self.function(r) * self.function(t)


def _check_positive(*args):
    for a in args:
        if np.any(np.asarray(a) <= 0):
            raise ValueError("radial arguments must be positive")


def k_kernel(l: int, r, t):
    """Kernel of K_{l+1/2}; the diagonal r = t uses the analytic limit.

    At r = t: (r/2) (J_nu^2 + J_{nu+1}^2 - ((2 nu + 1)/r) J_nu J_{nu+1}), nu = l + 1/2.
    Close to the diagonal the difference quotient cancels, and the kernel is
    taken as the mean of the Lommel kernels of orders nu and nu + 1.
    """
    if l < -1:
        raise ValueError("l must be >= -1")
    _check_positive(r, t)
    r, t = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(t, dtype=float))
    Jr = bessel_half_table(l + 1, r)
    Jt = bessel_half_table(l + 1, t)
    a_r, b_r = Jr[l + 1], Jr[l + 2]
    a_t, b_t = Jt[l + 1], Jt[l + 2]
    same = r == t
    d = np.where(same, 1.0, r - t)
    off = 0.5 * np.sqrt(r * t) / d * (b_r * a_t - a_r * b_t)
    nu = l + 0.5
    diag = 0.5 * r * (a_r ** 2 + b_r ** 2 - (2.0 * nu + 1.0) / r * a_r * b_r)
    out = np.where(same, diag, off)
    near = _near_diagonal(r, t) & ~same
    if np.any(near):
        out = np.array(out, dtype=float)
        out[near] = 0.5 * (_lommel_quad(nu, r[near], t[near]) + _lommel_quad(nu + 1.0, r[near], t[near]))
    return float(out) if out.ndim == 0 else out


def _near_diagonal(r, t):
    return np.abs(r - t) < NEAR_DIAGONAL * np.maximum(1.0, np.maximum(r, t))


def _lommel_quad(nu: float, r, t):
    """sqrt(rt) int_0^1 s J_nu(rs) J_nu(ts) ds by Gauss-Legendre; the integrand is smooth."""
    n = 40 + int(np.ceil(np.max(np.maximum(r, t))))
    rule = gauss_legendre(n, 0.0, 1.0)
    s, w = rule.nodes, rule.weights
    Jr = bessel_j(nu, np.outer(r, s))
    Jt = bessel_j(nu, np.outer(t, s))
    return np.sqrt(r * t) * ((Jr * Jt) @ (s * w))


def lommel_kernel(nu: float, r, t):
    """Kernel of H_nu 1_[0,1] H_nu, sqrt(rt) int_0^1 s J_nu(rs) J_nu(ts) ds, in closed form."""
    _check_positive(r, t)
    r, t = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(t, dtype=float))
    Jn_r, Jn_t = bessel_j(nu, r), bessel_j(nu, t)
    J1_r, J1_t = bessel_j(nu + 1, r), bessel_j(nu + 1, t)
    same = r == t
    d = np.where(same, 1.0, r * r - t * t)
    off = np.sqrt(r * t) * (r * J1_r * Jn_t - t * Jn_r * J1_t) / d
    dJ = bessel_j_prime(nu, r)
    diag = 0.5 * r * (dJ ** 2 + (1.0 - nu ** 2 / r ** 2) * Jn_r ** 2)
    out = np.where(same, diag, off)
    near = _near_diagonal(r, t) & ~same
    if np.any(near):
        out = np.array(out, dtype=float)
        out[near] = _lommel_quad(nu, r[near], t[near])
    return float(out) if out.ndim == 0 else out


def fdpok_residual(l: int, r, t):
    """|k_{l+1/2} - sinc/pi + (1/2) sum_{k<=l} (2k+1) (rt)^(-1/2) J_{k+1/2}(r) J_{k+1/2}(t)|."""
    if l < 0:
        raise ValueError("l must be >= 0")
    _check_positive(r, t)
    r, t = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(t, dtype=float))
    Jr = bessel_half_table(l, r)
    Jt = bessel_half_table(l, t)
    k = np.arange(l + 1).reshape((-1,) + (1,) * r.ndim)
    corr = 0.5 * np.sum((2 * k + 1) * Jr[1:] * Jt[1:], axis=0) / np.sqrt(r * t)
    res = np.abs(k_kernel(l, r, t) - sinc_kernel(r - t) + corr)
    return float(res) if res.ndim == 0 else res


def _F_terms(Lmax: int, x, xp):
    """F_l(x, x') = (x x')^(-1/2) J_{l+1/2}(x) J_{l+1/2}(x'), l = 0..Lmax."""
    _check_positive(x, xp)
    Jx = bessel_half_table(Lmax, x)[1:]
    Jy = bessel_half_table(Lmax, xp)[1:]
    return Jx * Jy / np.sqrt(x * xp)


def gegenbauer_partial_sum(L: int, x: float, xp: float) -> float:
    """sum_{l=0}^{L} (2l+1) F_l(x, x'); tends to (2/pi) sinc(x - x')."""
    if L < 0:
        raise ValueError("L must be >= 0")
    F = _F_terms(L, x, xp)
    return float(np.sum((2 * np.arange(L + 1) + 1) * F))


def fagko_parity_check(L: int, x: float, xp: float) -> tuple[float, float]:
    """Residuals of the even and odd parity expansions

    (1/pi)(sinc(x-x') + sinc(x+x')) = sum_{l<=L} (4l+1) F_{2l},
    (1/pi)(sinc(x-x') - sinc(x+x')) = sum_{l<=L} (4l+3) F_{2l+1}.
    """
    if L < 0:
        raise ValueError("L must be >= 0")
    F = _F_terms(2 * L + 1, x, xp)
    l = np.arange(L + 1)
    even = np.sum((4 * l + 1) * F[0::2])
    odd = np.sum((4 * l + 3) * F[1::2])
    s_minus, s_plus = sinc_kernel(x - xp), sinc_kernel(x + xp)
    return float(abs(s_minus + s_plus - even)), float(abs(s_minus - s_plus - odd))


def fagko_iii_residual(idx: BesselProjectionIndex, r, t):
    """|H_mu M H_mu - (H_{mu-2} M H_{mu-2} - P(mu-1))| as kernels, mu = 2n+i+1/2, n >= 1.

    For n = 1, i = 0 this is H_{5/2} M H_{5/2} = H_{1/2} M H_{1/2} - P(3/2).
    """
    if idx.n < 1:
        raise ValueError("the reduction step needs n >= 1")
    mu = idx.order
    # the projection one order below: 2(n-1)+1+1/2 when i = 0, 2n+1/2 when i = 1
    lower = BesselProjectionIndex(idx.n - 1, 1) if idx.i == 0 else BesselProjectionIndex(idx.n, 0)
    res = np.abs(lommel_kernel(mu, r, t) - lommel_kernel(mu - 2, r, t) + lower.kernel(r, t))
    return float(res) if np.ndim(res) == 0 else res


def alpha_identity_check(nu: float, a: float, b: float, n: int, nprime: int, z: float,
                         h: float = STENCIL_H) -> float:
    """Residual of d/dz sum_{k=n}^{n'} 2(nu+2k)(ab)^-1 J_{nu+2k}(az) J_{nu+2k}(bz)
    = z (J_{nu+2n-1}(az) J_{nu+2n-1}(bz) - J_{nu+2n'+1}(az) J_{nu+2n'+1}(bz)),
    with the derivative taken by a five-point stencil of step h.
    """
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")
    if n > nprime:
        raise ValueError("need n <= n'")
    if z <= 0 or z - 2 * h <= 0:
        raise ValueError("z must be positive and larger than the stencil width")

    def S(zz):
        return sum(2.0 * (nu + 2 * k) / (a * b) * bessel_j(nu + 2 * k, a * zz) * bessel_j(nu + 2 * k, b * zz)
                   for k in range(n, nprime + 1))

    deriv = (-S(z + 2 * h) + 8 * S(z + h) - 8 * S(z - h) + S(z - 2 * h)) / (12.0 * h)
    rhs = z * (bessel_j(nu + 2 * n - 1, a * z) * bessel_j(nu + 2 * n - 1, b * z)
               - bessel_j(nu + 2 * nprime + 1, a * z) * bessel_j(nu + 2 * nprime + 1, b * z))
    return float(abs(deriv - rhs))


def hankel_transform(l: int, values, rule: QuadratureRule, r=None):
    """(H_nu g)(r) = int_0^S sqrt(rs) J_nu(rs) g(s) ds, nu = l + 1/2, by quadrature on ``rule``."""
    s = rule.nodes
    r = s if r is None else np.asarray(r, dtype=float)
    _check_positive(s, r)
    rs = np.outer(r, s)
    J = bessel_half_table(l, rs)[l + 1]
    return (np.sqrt(rs) * J) @ (rule.weights * np.asarray(values))


def hankel_selfreciprocal_check(l: int, rule: QuadratureRule, zero: bool = False) -> float:
    """max |H_nu g - g| on the nodes for g(s) = s^(nu+1/2) exp(-s^2/2) (or g = 0)."""
    S = rule.interval[1]
    if S < 12:
        raise ValueError("the truncation S must be >= 12")
    nu = l + 0.5
    s = rule.nodes
    g = np.zeros_like(s) if zero else s ** (nu + 0.5) * np.exp(-0.5 * s * s)
    return float(np.max(np.abs(hankel_transform(l, g, rule) - g)))
