"""Spectral functions q+(s, x) of K and the diagonalising transform V.

q+(s, x) = c(s) * int_{-1}^{1} cos(x u - a t(u)) (1-u^2)^(-1/2) du,
    t(u) = ln((1-u)/(1+u)),  a = ln(1/s - 1) / (2 pi),
    c(s) = pi^(-3/2) / (2 s sqrt(1-s)).

The default route substitutes v = t(u), u = -tanh(v/2), which turns the
endpoint log-oscillations into an integrand with a sech(v/2) envelope.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaincc, gammaln, sici

from .quadrature import (GridFunction, QuadratureRule, composite_legendre, graded_edges,
                         half_line_rule)
from .specfun import laguerre_fn

V_HALFWIDTH = 80.0
PANELS_PER_PERIOD = 8
S_WINDOW = (0.01, 0.99)
_CHUNK = 256


@dataclass(frozen=True)
class SpectralParameter:
    s: float
    a: float = field(init=False)
    prefactor: float = field(init=False)

    def __post_init__(self):
        s = float(self.s)
        if not 0.0 < s < 1.0:
            raise ValueError(f"spectral parameter must lie in (0, 1), got {s}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "a", np.log(1.0 / s - 1.0) / (2.0 * np.pi))
        object.__setattr__(self, "prefactor", 0.5 * np.pi ** -1.5 / (s * np.sqrt(1.0 - s)))


def _param(p) -> SpectralParameter:
    return p if isinstance(p, SpectralParameter) else SpectralParameter(p)


def _v_rule(xmax: float, amax: float) -> QuadratureRule:
    # instantaneous frequency of x*tanh(v/2) + a*v is (x/2) sech^2(v/2) + a
    def freq(v):
        return 0.5 * xmax / np.cosh(0.5 * v) ** 2 + amax

    return composite_legendre(graded_edges(V_HALFWIDTH, freq, PANELS_PER_PERIOD), domain="line")


def q_plus_matrix(ps, x) -> np.ndarray:
    """q+(s_i, x_j) for several spectral parameters at once, shape (len(ps), len(x))."""
    params = [_param(p) for p in np.atleast_1d(np.asarray(ps, dtype=object))]
    x = np.atleast_1d(np.asarray(x, dtype=float))
    a = np.array([p.a for p in params])
    pref = np.array([p.prefactor for p in params])
    rule = _v_rule(float(np.max(np.abs(x), initial=0.0)), float(np.max(np.abs(a))))
    v = rule.nodes
    env = 0.5 / np.cosh(0.5 * v) * rule.weights
    B = env[:, None] * np.exp(1j * v[:, None] * a[None, :]) * pref[None, :]
    th = np.tanh(0.5 * v)
    out = np.empty((len(params), x.size))
    for i in range(0, x.size, _CHUNK):
        blk = slice(i, i + _CHUNK)
        out[:, blk] = (np.exp(1j * x[blk, None] * th[None, :]) @ B).real.T
    return out


def q_plus(p, x):
    """q+(s, x) via the v-line substitution; scalar in, scalar out."""
    p = _param(p)
    xa = np.asarray(x, dtype=float)
    out = q_plus_matrix([p], xa.ravel())[0]
    return float(out[0]) if xa.ndim == 0 else out.reshape(xa.shape)


def q_minus(p, x):
    """q-(s, x) = q+(1 - s, -x)."""
    p = _param(p)
    return q_plus(SpectralParameter(1.0 - p.s), -np.asarray(x, dtype=float))


def q_plus_imag(p, x):
    """The sine component that the real part discards; zero by oddness in v."""
    p = _param(p)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    rule = _v_rule(float(np.max(np.abs(xa))), abs(p.a))
    v = rule.nodes
    env = 0.5 / np.cosh(0.5 * v) * rule.weights
    return p.prefactor * (np.sin(xa[:, None] * np.tanh(0.5 * v) + p.a * v) @ env)


def q_plus_direct(p, x, theta_min: float = 1e-13):
    """Second route: the u-integral with u = cos(theta), panels graded towards theta = 0.

    q+ = 2 c(s) int_0^(pi/2) cos(x cos(theta) - 2 a ln tan(theta/2)) d theta,
    using that the u-integrand is even.  The phase oscillates without bound
    as theta -> 0, but the integrand stays bounded, so cutting [0, theta_min]
    costs at most 2 c(s) theta_min.
    """
    p = _param(p)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    xm = float(np.max(np.abs(xa), initial=0.0))
    geo = [0.5]
    while geo[-1] > theta_min:
        geo.append(geo[-1] / 2.0)
    geo = np.array(geo[::-1])
    # refine each geometric panel so x * width stays below one radian
    left = [geo[0]]
    for lo, hi in zip(geo[:-1], geo[1:]):
        k = int(np.ceil(xm * (hi - lo))) + 1
        left.extend(np.linspace(lo, hi, k + 1)[1:])
    mid = np.linspace(0.5, 0.5 * np.pi, int(np.ceil((0.5 * np.pi - 0.5) * max(1.0, xm))) + 2)
    edges = np.concatenate([left, mid[1:]])
    rule = composite_legendre(edges, domain="finite")
    th = rule.nodes
    phase = xa[:, None] * np.cos(th)[None, :] - 2.0 * p.a * np.log(np.tan(0.5 * th))[None, :]
    out = 2.0 * p.prefactor * (np.cos(phase) @ rule.weights)
    return float(out[0]) if np.ndim(x) == 0 else out


def q_plus_uniform_bound(p) -> float:
    """(1/(pi sqrt(2s))) sqrt(pi/2) (s(1-s))^(-1/2)."""
    p = _param(p)
    return float(np.sqrt(np.pi / 2.0) / (np.pi * np.sqrt(2.0 * p.s)) / np.sqrt(p.s * (1.0 - p.s)))


def _exp_integral_tail(omega, R):
    """int_R^inf exp(i omega r) / r dr for omega > 0."""
    si, ci = sici(omega * R)
    return -ci + 1j * (0.5 * np.pi - si)


def q_plus_sinc_tail(p, x, X: float):
    """The part of (K q+)(x) coming from y > X, computed exactly.

    int_X^inf (1/pi) sinc(x - y) q+(s, y) dy.  The y-integral is done in
    closed form with sine and cosine integrals; the remaining u-integral
    runs on the v-line like q+ itself.  The tail decays only like
    X^(-1/2), so bounds of the form sup|q|/(X - x) do not hold for q+.
    """
    p = _param(p)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xa >= X):
        raise ValueError("x must lie below the truncation point X")
    out = np.empty(xa.size)
    for i, xi in enumerate(xa):
        R = X - xi
        rule = _v_rule(R + abs(xi), abs(p.a))
        v = rule.nodes
        u = -np.tanh(0.5 * v)
        one_plus_u = 2.0 / (1.0 + np.exp(v))
        one_minus_u = 2.0 / (1.0 + np.exp(-v))
        env = 0.5 / np.cosh(0.5 * v) * rule.weights
        # sin(r) exp(i r u) = (exp(i r (1+u)) - exp(-i r (1-u))) / (2i)
        inner = (_exp_integral_tail(one_plus_u, R) - np.conj(_exp_integral_tail(one_minus_u, R)))
        G = np.exp(1j * xi * u) / (2j * np.pi) * inner
        out[i] = p.prefactor * np.real(np.sum(env * np.exp(-1j * p.a * v) * G))
    return float(out[0]) if np.ndim(x) == 0 else out


def _check_window(rule: QuadratureRule) -> float:
    lo, hi = rule.interval
    if lo < S_WINDOW[0] - 1e-14 or hi > S_WINDOW[1] + 1e-14:
        raise ValueError(f"s-window [{lo}, {hi}] reaches beyond [{S_WINDOW[0]}, {S_WINDOW[1]}]")
    return min(lo, 1.0 - hi)


def apply_V(h: GridFunction, xs) -> np.ndarray:
    """(V h)(x) = int q+(s, x) h(s) ds with h sampled on an s-rule inside [0.01, 0.99]."""
    _check_window(h.rule)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs < 0):
        raise ValueError("V h is evaluated on the half-line x >= 0")
    if not np.any(h.values):
        return np.zeros(xs.size)
    Q = q_plus_matrix(h.rule.nodes, xs)
    out = (h.rule.weights * h.values) @ Q
    if np.max(np.abs(out.imag), initial=0.0) == 0.0:
        return out.real
    return out


def hann_window_function(n: int = 200) -> GridFunction:
    """Smooth test function on the full s-window, built in the variable a(s).

    h(s) = cos^2(pi a / 2A) / sqrt(|ds/da|) with A = a(0.01).  Its image under
    V decays quickly enough in x that a window [0, 400] captures its norm.
    """
    from .quadrature import _leggauss

    A = np.log(1.0 / S_WINDOW[0] - 1.0) / (2.0 * np.pi)
    ga, gw = _leggauss(n)
    a = ga[::-1] * A
    wa = gw[::-1] * A
    s = 1.0 / (1.0 + np.exp(2.0 * np.pi * a))
    dsda = 2.0 * np.pi * s * (1.0 - s)
    rule = QuadratureRule(s, wa * dsda, "finite", S_WINDOW, n)
    return GridFunction(rule, np.cos(0.5 * np.pi * a / A) ** 2 / np.sqrt(dsda))


def isometry_ratio(h: GridFunction, X: float = 400.0) -> float:
    """||V h||^2 on [0, X] divided by ||h||^2."""
    rule = half_line_rule(X)
    Vh = apply_V(h, rule.nodes)
    return float(np.sum(rule.weights * np.abs(Vh) ** 2) / h.norm() ** 2)


def _laguerre_abs_tail(n: int, X: float) -> float:
    """Upper bound for int_X^inf |l_n(x)| dx using |L_n(x)| <= sum C(n,k) x^k / k!."""
    total = 0.0
    for k in range(n + 1):
        logc = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1) - gammaln(k + 1)
        # int_X^inf x^k e^{-x/2} dx = 2^{k+1} Gamma(k+1, X/2)
        total += np.exp(logc + (k + 1) * np.log(2.0) + gammaln(k + 1)) * gammaincc(k + 1, X / 2.0)
    return float(total)


def apply_V_inverse_on_laguerre(n: int, s_values, X: float = 400.0,
                                panel_width: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """int_0^X q+(s, x) l_n(x) dx for each s, with the truncation bound.

    Since V is unitary with real kernel, V^-1 l_n is this integral; the tail
    beyond X is bounded by sup|q+| * int_X^inf |l_n|.
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    if X < 200:
        raise ValueError("X must be >= 200")
    params = [_param(p) for p in np.atleast_1d(np.asarray(s_values, dtype=object))]
    for p in params:
        if not S_WINDOW[0] <= p.s <= S_WINDOW[1]:
            raise ValueError(f"s = {p.s} lies outside the window {S_WINDOW}")
    rule = half_line_rule(X, panel_width)
    Q = q_plus_matrix(params, rule.nodes)
    vals = Q @ (rule.weights * laguerre_fn(n, rule.nodes))
    tail = np.array([p.prefactor * np.pi for p in params]) * _laguerre_abs_tail(n, X)
    return vals, tail
