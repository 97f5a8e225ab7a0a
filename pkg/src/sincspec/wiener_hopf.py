"""Wiener-Hopf operators on the half-line.

The central object is the band-limiting operator K with kernel
(1/pi) sinc(x - y) on [0, inf), i.e. the Wiener-Hopf operator whose symbol
is the indicator of [-1, 1].  Its Laguerre matrix elements are computed on
the Fourier side, where the symbol restricts the integral to [-1, 1] and no
truncation of the half-line is needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .quadrature import GridFunction, QuadratureRule, gauss_legendre, sinc_tail_bound
from .specfun import sinc_kernel

INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


@dataclass(frozen=True)
class SymbolSpec:
    """A bounded symbol on the real line.

    ``kind`` is one of

    * ``"interval"``: value ``inside`` on [lo, hi] and ``outside`` elsewhere.
      When ``lo > hi`` the set is the wrap-around interval through infinity,
      i.e. (-inf, hi] U [lo, inf).  Indicators, sigma = 2*1_[-1,1] - 1, the
      sign function and step symbols are all of this form.
    * ``"tanh"``: ``sign * tanh(x)``.
    * ``"moebius"``: ``base(A^-1 . x)`` for an SL(2,R) element ``A``.
    """

    kind: str
    lo: float = -1.0
    hi: float = 1.0
    inside: float = 1.0
    outside: float = 0.0
    sign: float = 1.0
    base: Any = None
    element: Any = None

    def __post_init__(self):
        if self.kind not in ("interval", "tanh", "moebius"):
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.kind == "interval":
            for v in (self.inside, self.outside):
                if not np.isfinite(v):
                    raise ValueError("symbol values must be finite")
            if np.isnan(self.lo) or np.isnan(self.hi) or self.lo == self.hi:
                raise ValueError("interval endpoints must be distinct numbers")
        if self.kind == "moebius" and (self.base is None or self.element is None):
            raise ValueError("moebius symbol needs a base symbol and an element")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "interval":
            if self.lo < self.hi:
                mask = (x >= self.lo) & (x <= self.hi)
            else:
                mask = (x >= self.lo) | (x <= self.hi)
            return np.where(mask, self.inside, self.outside)
        if self.kind == "tanh":
            return self.sign * np.tanh(x)
        return self.base(self.element.inverse().act(x))

    @property
    def bounds(self) -> tuple[float, float]:
        if self.kind == "interval":
            return (min(self.inside, self.outside), max(self.inside, self.outside))
        if self.kind == "tanh":
            return (-1.0, 1.0)
        return self.base.bounds

    def same_as(self, other: "SymbolSpec", tol: float = 1e-12) -> bool:
        """Structural equality of interval symbols up to ``tol`` in the endpoints."""
        if self.kind != "interval" or other.kind != "interval":
            return self == other

        def close(u, v):
            if np.isinf(u) or np.isinf(v):
                return u == v
            return abs(u - v) <= tol * max(1.0, abs(u), abs(v))

        return (close(self.lo, other.lo) and close(self.hi, other.hi)
                and abs(self.inside - other.inside) <= tol
                and abs(self.outside - other.outside) <= tol)


def indicator() -> SymbolSpec:
    """1_[-1,1], the symbol of K."""
    return SymbolSpec("interval", -1.0, 1.0, 1.0, 0.0)


def sigma() -> SymbolSpec:
    """2*1_[-1,1] - 1, the symbol of 2K - I."""
    return SymbolSpec("interval", -1.0, 1.0, 1.0, -1.0)


def sgn(sign: float = 1.0) -> SymbolSpec:
    """``sign * sgn(x)``; the value at 0 is immaterial."""
    return SymbolSpec("interval", 0.0, np.inf, sign, -sign)


def step(gamma: float, a: float, b: float) -> SymbolSpec:
    """a on (-inf, gamma), b on [gamma, inf)."""
    return SymbolSpec("interval", gamma, np.inf, b, a)


def tanh_symbol(sign: float = -1.0) -> SymbolSpec:
    return SymbolSpec("tanh", sign=sign)


def moebius(base: SymbolSpec, element) -> SymbolSpec:
    return SymbolSpec("moebius", base=base, element=element)


@dataclass(frozen=True)
class DenseOperator:
    """Nystrom matrix M_jk = k(x_j, x_k) w_k acting on samples at the nodes."""

    row_rule: QuadratureRule
    col_rule: QuadratureRule
    entries: np.ndarray = field(repr=False)
    hermitian: bool = False
    pv: bool = False

    def __post_init__(self):
        M = np.asarray(self.entries, dtype=complex)
        if M.shape != (len(self.row_rule), len(self.col_rule)):
            raise ValueError(f"entries {M.shape} do not match rules "
                             f"({len(self.row_rule)}, {len(self.col_rule)})")
        M.flags.writeable = False
        object.__setattr__(self, "entries", M)
        if self.hermitian:
            S = self.symmetrized()
            err = np.max(np.abs(S - S.conj().T), initial=0.0)
            if err > 1e-12:
                raise ValueError(f"matrix flagged hermitian but asymmetry is {err:.2e}")

    def symmetrized(self) -> np.ndarray:
        """sqrt(W) M sqrt(W)^-1, which is hermitian when the kernel is."""
        if self.row_rule is not self.col_rule and len(self.row_rule) != len(self.col_rule):
            raise ValueError("symmetrization needs a square operator on one rule")
        sw_r = np.sqrt(self.row_rule.weights)
        sw_c = np.sqrt(self.col_rule.weights)
        return sw_r[:, None] * self.entries / sw_c[None, :]

    def eigvals(self) -> np.ndarray:
        S = self.symmetrized()
        if self.hermitian:
            return np.linalg.eigvalsh(0.5 * (S + S.conj().T))
        return np.linalg.eigvals(S)

    def __matmul__(self, g: GridFunction) -> GridFunction:
        return GridFunction(self.row_rule, self.entries @ g.values)


def apply_K(g: GridFunction, x: float) -> tuple[complex, float]:
    """(Kg)(x) from samples of g on a rule over [0, X].

    Returns the quadrature value together with the truncation bound
    sup|g| / (pi (X - x)).  That bound assumes g is negligible beyond X;
    for slowly decaying oscillatory g the caller must supply its own tail
    (see ``spectral_transform.q_plus_sinc_tail``).
    """
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    rule = g.rule
    X = rule.truncation
    if rule.interval[0] != 0.0:
        raise ValueError("apply_K expects a rule on [0, X]")
    if x >= X:
        raise ValueError(f"x = {x} is not inside the truncation window [0, {X})")
    y = rule.nodes
    value = np.sum(rule.weights * sinc_kernel(x - y) * g.values)
    sup = float(np.max(np.abs(g.values)))
    return complex(value), float(sinc_tail_bound(sup, X, x))


def laguerre_fourier(n: int, x):
    """Inverse Fourier transform of the n-th Laguerre function extended by zero.

    (2 pi)^(-1/2) int_0^inf e^{ixu} l_n(u) du = (2 pi)^(-1/2) i / (x + i/2) * ((x - i/2) / (x + i/2))^n.
    This is (F l_n)(-x); Gram integrals against even symbols such as
    1_[-1,1] do not see the reflection.
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    x = np.asarray(x, dtype=float)
    zp = x + 0.5j
    return INV_SQRT_2PI * 1j / zp * ((x - 0.5j) / zp) ** n


def gram_K_laguerre(m: int, n: int, quad_order: int = 200) -> complex:
    """<l_m, K l_n> as an integral over the symbol's support [-1, 1]."""
    if quad_order < 50:
        raise ValueError("quad_order must be >= 50")
    rule = gauss_legendre(quad_order, -1.0, 1.0)
    u = rule.nodes
    return complex(np.sum(rule.weights * np.conj(laguerre_fourier(m, u)) * laguerre_fourier(n, u)))


def gram_K_laguerre_matrix(N: int, quad_order: int = 200) -> np.ndarray:
    if quad_order < 50:
        raise ValueError("quad_order must be >= 50")
    rule = gauss_legendre(quad_order, -1.0, 1.0)
    F = np.array([laguerre_fourier(k, rule.nodes) for k in range(N)])
    return (np.conj(F) * rule.weights) @ F.T


def _interval_kernel_parts(symbol: SymbolSpec):
    """(sinc coefficient, identity coefficient) when the symbol is p on [-1,1], q outside."""
    if symbol.kind == "interval" and symbol.lo == -1.0 and symbol.hi == 1.0:
        return symbol.inside - symbol.outside, symbol.outside
    return None


def discretize_W(symbol: SymbolSpec, rule: QuadratureRule, pv: bool = False) -> DenseOperator:
    """Nystrom discretization of W_symbol on the nodes of ``rule``.

    Symbols of the form p*1_[-1,1] + q*(1 - 1_[-1,1]) give (p - q) K + q I.
    The symbol -tanh has the kernel 1/(2i sinh(pi (x-y)/2)), which is
    singular on the diagonal; it is only built with ``pv=True``, in which case
    the diagonal is zeroed and symmetric node pairs cancel the odd singular
    part.
    """
    if len(rule) == 0:
        raise ValueError("empty rule")
    x = rule.nodes
    D = x[:, None] - x[None, :]
    parts = _interval_kernel_parts(symbol)
    if parts is not None:
        c_sinc, c_id = parts
        M = c_sinc * sinc_kernel(D) * rule.weights[None, :] + c_id * np.eye(len(x))
        return DenseOperator(rule, rule, M, hermitian=True)
    if symbol.kind == "tanh" and symbol.sign == -1.0:
        if not pv:
            raise ValueError("the -tanh kernel is singular on the diagonal; pass pv=True")
        S = np.sinh(0.5 * np.pi * D)
        np.fill_diagonal(S, 1.0)
        M = 1.0 / (2j * S) * rule.weights[None, :]
        np.fill_diagonal(M, 0.0)
        return DenseOperator(rule, rule, M, hermitian=True, pv=True)
    if symbol.kind == "interval" and symbol.lo == 0.0 and np.isinf(symbol.hi):
        raise ValueError("sign-type symbols have no pointwise kernel; use "
                         "sincspec.finite_hilbert (principal value) instead")
    raise ValueError(f"no pointwise kernel available for symbol {symbol!r}")
