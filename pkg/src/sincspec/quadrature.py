"""Quadrature rules shared by every operator discretisation.

A :class:`QuadratureRule` is an immutable set of nodes and positive weights
together with a description of the domain it integrates over.  Composite
rules on long intervals are built from Gauss-Legendre panels; oscillatory
integrands get panels graded by their local frequency.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

PANEL_ORDER = 16


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    domain: str
    interval: tuple[float, float]
    order: int

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if nodes.size == 0:
            raise ValueError("a quadrature rule needs at least one node")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        lo, hi = self.interval
        if nodes[0] < lo or nodes[-1] > hi:
            raise ValueError("nodes fall outside the rule's interval")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return self.nodes.size

    @property
    def truncation(self) -> float:
        """Right end of the rule, i.e. the truncation point X for half-line rules."""
        return self.interval[1]


@dataclass(frozen=True)
class GridFunction:
    """Complex samples of a function on the nodes of a rule."""

    rule: QuadratureRule
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.rule.nodes.shape:
            raise ValueError(
                f"{values.size} values for a rule with {len(self.rule)} nodes"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(cls, rule: QuadratureRule, f: Callable) -> "GridFunction":
        return cls(rule, f(rule.nodes))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.rule.weights * np.abs(self.values) ** 2)))


@lru_cache(maxsize=64)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def gauss_legendre(n: int, a: float, b: float) -> QuadratureRule:
    """n-point Gauss-Legendre rule on [a, b]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    x, w = _leggauss(n)
    half = 0.5 * (b - a)
    return QuadratureRule(half * x + 0.5 * (a + b), half * w, "finite", (a, b), n)


def gauss_chebyshev(n: int) -> QuadratureRule:
    """Gauss-Chebyshev rule for the weight (1-u^2)^(-1/2) on [-1, 1].

    Nodes are stored in increasing order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(n, 0, -1)
    nodes = np.cos(np.pi * (2 * k - 1) / (2 * n))
    # cos of symmetric angles is not bit-exactly odd; enforce it
    nodes = 0.5 * (nodes - nodes[::-1])
    return QuadratureRule(nodes, np.full(n, np.pi / n), "chebyshev", (-1.0, 1.0), n)


def composite_legendre(edges: Sequence[float], order: int = PANEL_ORDER,
                       domain: str = "finite") -> QuadratureRule:
    """Gauss-Legendre panels between consecutive ``edges``."""
    e = np.asarray(edges, dtype=float)
    if e.size < 2 or np.any(np.diff(e) <= 0):
        raise ValueError("panel edges must be increasing with at least one panel")
    x, w = _leggauss(order)
    mid = 0.5 * (e[:-1] + e[1:])[:, None]
    half = 0.5 * np.diff(e)[:, None]
    return QuadratureRule((mid + half * x).ravel(), (half * w).ravel(), domain,
                          (float(e[0]), float(e[-1])), order)


def half_line_rule(X: float, panel_width: float = 1.0, order: int = PANEL_ORDER) -> QuadratureRule:
    """Composite rule on the truncated half-line [0, X]."""
    if X <= 0:
        raise ValueError("truncation X must be positive")
    m = max(1, int(np.ceil(X / panel_width)))
    return composite_legendre(np.linspace(0.0, X, m + 1), order, "half-line")


def line_rule(X: float, panel_width: float = 1.0, order: int = PANEL_ORDER) -> QuadratureRule:
    """Composite rule on the truncated line [-X, X]."""
    if X <= 0:
        raise ValueError("truncation X must be positive")
    m = max(1, int(np.ceil(2 * X / panel_width)))
    return composite_legendre(np.linspace(-X, X, m + 1), order, "line")


def graded_edges(halfwidth: float, local_freq: Callable[[float], float],
                 panels_per_period: int, order: int = PANEL_ORDER) -> np.ndarray:
    """Symmetric panel edges on [-V, V] whose width tracks the local frequency.

    Each panel spans at most ``(2 pi / max(1, f(v))) / panels_per_period``
    scaled by ``order / 8`` (a 16-point panel resolves two of the nominal
    8-point sub-panels).
    """
    if panels_per_period < 4:
        raise ValueError("panels_per_period must be >= 4")
    stretch = order / 8.0
    edges = [0.0]
    v = 0.0
    while v < halfwidth:
        f = max(1.0, abs(local_freq(v)))
        v = min(halfwidth, v + stretch * 2.0 * np.pi / f / panels_per_period)
        edges.append(v)
    e = np.asarray(edges)
    return np.concatenate([-e[:0:-1], e])


def integrate(rule: QuadratureRule, f) -> complex:
    """Sum of weights times values; ``f`` is a GridFunction, array or callable."""
    if isinstance(f, GridFunction):
        if f.rule is not rule and f.values.shape != rule.nodes.shape:
            raise ValueError("grid function lives on a different rule")
        values = f.values
    elif callable(f):
        values = np.asarray(f(rule.nodes))
    else:
        values = np.asarray(f)
    if values.shape[-1:] != rule.nodes.shape:
        raise ValueError(f"{values.shape[-1]} values for {len(rule)} nodes")
    return values @ rule.weights


def principal_value_cheb(f: Callable, x0, n: int):
    """PV integral of f(y)/(y - x0) over (-1, 1) by singularity subtraction.

    Writes ``f = g (1-y^2)^(-1/2)`` and integrates ``(g(y)-g(x0))/(y-x0)``
    against the Chebyshev weight; the subtracted term vanishes because
    PV int (1-y^2)^(-1/2)/(y-x0) dy = 0.  ``x0`` may be an array.

    Convergence is spectral when f carries the (1-y^2)^(-1/2) end behaviour
    and second order in n when f is bounded at +-1.
    """
    x0 = np.asarray(x0, dtype=float)
    if np.any(np.abs(x0) >= 1):
        raise ValueError("x0 must lie strictly inside (-1, 1)")
    rule = gauss_chebyshev(n)
    y = rule.nodes
    flat = np.atleast_1d(x0).ravel()
    gap = np.min(np.abs(y[None, :] - flat[:, None]), axis=1)
    if np.any(gap < 1e-13):
        raise ValueError("x0 coincides with a Chebyshev node; change n")
    gy = f(y) * np.sqrt(1.0 - y * y)
    g0 = f(flat) * np.sqrt(1.0 - flat * flat)
    out = np.empty(flat.size, dtype=complex)
    for i in range(0, flat.size, 256):
        blk = slice(i, i + 256)
        diff = (gy[None, :] - g0[blk, None]) / (y[None, :] - flat[blk, None])
        out[blk] = diff @ rule.weights
    if x0.ndim == 0:
        return out[0]
    return out.reshape(x0.shape)


def oscillatory_line(f_envelope: Callable, freq: float, halfwidth: float,
                     panels_per_period: int = 8, local_freq: Callable | None = None,
                     order: int = PANEL_ORDER):
    """Integral of ``f_envelope(v) * cos(freq * v)`` over [-V, V].

    Any oscillating phase other than ``freq`` is carried inside the envelope;
    pass ``local_freq`` to grade the panels by that phase's instantaneous
    frequency.  The envelope must have decayed below 1e-16 of its peak at
    both ends, otherwise the truncation would be silent.
    """
    if local_freq is None:
        local_freq = lambda v: freq  # noqa: E731
    else:
        base = local_freq
        local_freq = lambda v: abs(base(v)) + abs(freq)  # noqa: E731
    rule = composite_legendre(graded_edges(halfwidth, local_freq, panels_per_period, order),
                              order, "line")
    env = np.asarray(f_envelope(rule.nodes))
    peak = np.max(np.abs(env), initial=0.0)
    if peak == 0.0:
        return 0.0
    ends = np.abs(np.asarray(f_envelope(np.array([-halfwidth, halfwidth]))))
    if np.max(ends) > 1e-16 * peak:
        raise ValueError(
            f"envelope not decayed at |v|={halfwidth}: {np.max(ends):.3e} vs peak {peak:.3e}"
        )
    return integrate(rule, env * np.cos(freq * rule.nodes))


def sinc_tail_bound(sup_g: float, X: float, x) -> np.ndarray:
    """Naive truncation bound sup|g| / (pi (X - x)) for the sinc kernel.

    Only valid when g itself is small beyond X; slowly decaying oscillatory
    g need an explicit tail computation instead.
    """
    x = np.asarray(x, dtype=float)
    return sup_g / (np.pi * (X - x))
