"""Special functions used by the operator kernels.

Everything here is evaluated by closed forms or three-term recurrences so
that the kernels do not depend on a black-box special-function library.
Functions accept scalars or numpy arrays and broadcast over the argument.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Upward recurrence in the order is only used while l <= x; above that the
# normalised downward (Miller) recurrence takes over.
_RESCALE = 1e150


@dataclass(frozen=True)
class HalfIntegerOrder:
    """Bessel order nu = l + 1/2 with l >= -1."""

    l: int

    def __post_init__(self):
        if int(self.l) != self.l or self.l < -1:
            raise ValueError(f"half-integer order needs integer l >= -1, got {self.l!r}")

    @property
    def nu(self) -> float:
        return self.l + 0.5


def _as_l(order) -> int:
    if isinstance(order, HalfIntegerOrder):
        return order.l
    return int(HalfIntegerOrder(order).l)


def sinc_kernel(x):
    """(1/pi) sin(x)/x, continuously extended by 1/pi at the origin."""
    return np.sinc(np.asarray(x, dtype=float) / np.pi) / np.pi


def _upward_table(lmax: int, x: np.ndarray) -> np.ndarray:
    out = np.empty((lmax + 2,) + x.shape)
    pref = np.sqrt(2.0 / (np.pi * x))
    out[0] = pref * np.cos(x)
    if lmax >= 0:
        out[1] = pref * np.sin(x)
    for k in range(1, lmax + 1):
        nu = k - 0.5
        out[k + 1] = (2.0 * nu / x) * out[k] - out[k - 1]
    return out


def _downward_table(lmax: int, x: np.ndarray) -> np.ndarray:
    """Miller recurrence from above, normalised against J_{1/2} or J_{-1/2}."""
    start = lmax + 40 + int(np.sqrt(40.0 * (lmax + 1))) + int(np.ceil(np.max(x, initial=0.0)))
    out = np.zeros((lmax + 2,) + x.shape)
    j_hi = np.zeros_like(x)
    j = np.full_like(x, 1e-300)
    for k in range(start, -1, -1):
        # j holds the unnormalised J_{k+1/2}; j_hi holds J_{k+3/2}
        if k <= lmax:
            out[k + 1] = j
        nu = k + 0.5
        j_lo = (2.0 * nu / x) * j - j_hi
        j_hi, j = j, j_lo
        big = np.abs(j) > _RESCALE
        if np.any(big):
            scale = np.where(big, 1.0 / _RESCALE, 1.0)
            j *= scale
            j_hi *= scale
            out[k + 1 :] *= scale
    out[0] = j
    pref = np.sqrt(2.0 / (np.pi * x))
    exact_half = pref * np.sin(x)
    exact_mhalf = pref * np.cos(x)
    use_half = np.abs(exact_half) >= np.abs(exact_mhalf)
    norm = np.where(use_half, exact_half / out[1], exact_mhalf / out[0])
    return out * norm


def bessel_half_table(lmax: int, x) -> np.ndarray:
    """J_{l+1/2}(x) for l = -1..lmax, stacked along the first axis.

    Row ``k`` holds the order ``k - 1/2``.
    """
    if lmax < -1:
        raise ValueError("lmax must be >= -1")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("half-integer Bessel functions are evaluated for x > 0 only")
    shape = x.shape
    xf = x.ravel()
    lmax_eff = max(lmax, 0)
    up = lmax_eff <= xf
    table = np.empty((lmax_eff + 2, xf.size))
    if np.any(up):
        table[:, up] = _upward_table(lmax_eff, xf[up])
    if not np.all(up):
        table[:, ~up] = _downward_table(lmax_eff, xf[~up])
    return table[: lmax + 2].reshape((lmax + 2,) + shape)


def sph_bessel_j(order, x):
    """J_{l+1/2}(x) for integer l >= -1 and x > 0."""
    l = _as_l(order)
    table = bessel_half_table(l, x)
    return table[l + 1]


def bessel_j(nu: float, x):
    """J_nu(x) for real order; half-integer orders use the recurrence table."""
    x = np.asarray(x, dtype=float)
    twice = 2.0 * nu
    if abs(twice - round(twice)) < 1e-12 and round(twice) % 2 != 0 and nu >= -0.5:
        return sph_bessel_j(int(round(nu - 0.5)), x)
    from scipy.special import jv

    return jv(nu, x)


def bessel_j_prime(nu: float, x):
    """Derivative via J'_nu = (J_{nu-1} - J_{nu+1}) / 2."""
    if nu - 1 < -0.5 and abs(2 * nu - round(2 * nu)) < 1e-12:
        # J_{-3/2} is outside the table; use J'_nu = -J_{nu+1} + (nu/x) J_nu
        x = np.asarray(x, dtype=float)
        return -bessel_j(nu + 1, x) + (nu / x) * bessel_j(nu, x)
    return 0.5 * (bessel_j(nu - 1, x) - bessel_j(nu + 1, x))


def legendre_p(l: int, x):
    """Legendre polynomial P_l by the Bonnet recurrence."""
    if l < 0:
        raise ValueError("degree must be >= 0")
    x = np.asarray(x, dtype=float)
    p_prev, p = np.ones_like(x), x.copy()
    if l == 0:
        return p_prev
    for k in range(1, l):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p


def legendre_p_prime(l: int, x):
    """P_l' from the derivative recurrence P'_{k+1} = P'_{k-1} + (2k+1) P_k."""
    x = np.asarray(x, dtype=float)
    if l == 0:
        return np.zeros_like(x)
    d_prev, d = np.zeros_like(x), np.ones_like(x)
    p = x.copy()
    p_prev = np.ones_like(x)
    for k in range(1, l):
        d_prev, d = d, d_prev + (2 * k + 1) * p
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return d


def jacobi_p01(n: int, x):
    """Jacobi polynomial P_n^{(0,1)}."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    p = (3.0 * x - 1.0) / 2.0
    for k in range(2, n + 1):
        # general (a,b) recurrence with a=0, b=1
        c0 = 2 * k * (k + 1) * (2 * k - 1)
        c1 = (2 * k) * ((2 * k + 1) * (2 * k - 1) * x - 1.0)
        c2 = 2 * (k - 1) * k * (2 * k + 1)
        p_prev, p = p, (c1 * p - c2 * p_prev) / c0
    return p


def laguerre_fn(n: int, x):
    """Orthonormal Laguerre function l_n(x) = exp(-x/2) L_n(x) on the half-line."""
    if n < 0:
        raise ValueError("index must be >= 0")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("Laguerre functions are defined for x >= 0")
    L_prev, L = np.ones_like(x), 1.0 - x
    if n == 0:
        L = L_prev
    else:
        for k in range(1, n):
            L_prev, L = L, ((2 * k + 1 - x) * L - k * L_prev) / (k + 1)
    return np.exp(-0.5 * x) * L


def laguerre_poly(n: int, x):
    """Laguerre polynomial L_n (no exponential factor)."""
    x = np.asarray(x)
    L_prev = np.ones_like(x)
    if n == 0:
        return L_prev
    L = 1.0 - x
    for k in range(1, n):
        L_prev, L = L, ((2 * k + 1 - x) * L - k * L_prev) / (k + 1)
    return L


def meixner_pollaczek(n: int, x, beta: float):
    """Meixner-Pollaczek polynomial P_n^{(1/2)}(x; beta), 0 < beta < pi."""
    if not 0.0 < beta < np.pi:
        raise ValueError(f"beta must lie in (0, pi), got {beta}")
    if n < 0:
        raise ValueError("degree must be >= 0")
    x = np.asarray(x, dtype=float)
    sb, cb = np.sin(beta), np.cos(beta)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    p = 2.0 * x * sb + cb
    for k in range(1, n):
        # (k+1) P_{k+1} = 2 (x sin b + (k + 1/2) cos b) P_k - k P_{k-1}
        p_prev, p = p, (2.0 * (x * sb + (k + 0.5) * cb) * p - k * p_prev) / (k + 1)
    return p
