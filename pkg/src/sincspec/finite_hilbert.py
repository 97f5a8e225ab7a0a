"""The finite Hilbert transform on [-1, 1] and its diagonalisation.

    (H g)(x) = (1/(i pi)) PV int_{-1}^{1} g(y) / (y - x) dy

is self-adjoint with spectrum [-1, 1].  For each t in (-1, 1) the kernel
Q'(t, u) is a generalised eigenfunction with eigenvalue t, and
U: phi -> int Q'(t, .) phi(t) dt is unitary.  The intertwiner A with
A A* = K satisfies A* A = (I + H)/2, which is checked here through Legendre
matrix elements.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import composite_legendre, gauss_legendre, half_line_rule, principal_value_cheb
from .specfun import legendre_p, legendre_p_prime, sph_bessel_j

T_WINDOW = 0.99


@dataclass(frozen=True)
class HilbertKernelPoint:
    t: float
    u: float

    def __post_init__(self):
        if not (abs(self.t) < 1 and abs(self.u) < 1):
            raise ValueError("t and u must lie strictly inside (-1, 1)")

    @property
    def value(self) -> complex:
        return complex(q_prime(self.t, self.u))


def _log_ratio(z):
    return np.log((1.0 - z) / (1.0 + z))


def q_prime(t, u):
    """(1/pi) (1-t^2)^(-1/2) (1-u^2)^(-1/2) exp((i/2pi) ln((1-t)/(1+t)) ln((1-u)/(1+u)))."""
    t = np.asarray(t, dtype=float)
    u = np.asarray(u, dtype=float)
    if np.any(np.abs(t) >= 1) or np.any(np.abs(u) >= 1):
        raise ValueError("q_prime needs |t| < 1 and |u| < 1")
    phase = _log_ratio(t) * _log_ratio(u) / (2.0 * np.pi)
    return np.exp(1j * phase) / (np.pi * np.sqrt(1.0 - t * t) * np.sqrt(1.0 - u * u))


def finite_hilbert_pv(g, x, n: int = 2048):
    """(H g)(x) for g with at worst (1-y^2)^(-1/2) behaviour at the ends."""
    return principal_value_cheb(g, x, n) / (1j * np.pi)


def hilbert_eigen_residual(t: float, x_samples, n: int = 2048) -> float:
    """max_x |H Q'(t, .)(x) - t Q'(t, x)| / |Q'(t, x)|.

    |t| <= 0.99 is enforced: the phase of Q'(t, .) oscillates with frequency
    |ln((1-t)/(1+t))| / 2pi in the log variable, and the node budget is
    sized for that window.
    """
    if abs(t) > T_WINDOW:
        raise ValueError(f"|t| must be <= {T_WINDOW}, got {t}")
    x = np.asarray(x_samples, dtype=float)
    Hq = finite_hilbert_pv(lambda y: q_prime(t, y), x, n)
    ref = q_prime(t, x)
    return float(np.max(np.abs(Hq - t * ref) / np.abs(ref)))


def legendre_hilbert_element(p: int, q: int, n: int | None = None) -> complex:
    """<P_p, H P_q> on [-1, 1].

    Antisymmetrising the kernel gives
    (1/(2 i pi)) int int (P_p(x) P_q(y) - P_p(y) P_q(x)) / (y - x) dx dy,
    whose integrand is a polynomial, so a tensor Gauss-Legendre rule is exact.
    """
    if n is None:
        n = max(p, q) + 2
    rule = gauss_legendre(n, -1.0, 1.0)
    x, w = rule.nodes, rule.weights
    X, Y = np.meshgrid(x, x, indexing="ij")
    D = Y - X
    np.fill_diagonal(D, 1.0)
    Pp, Pq = legendre_p(p, x), legendre_p(q, x)
    N = Pp[:, None] * Pq[None, :] - Pp[None, :] * Pq[:, None]
    M = N / D
    # diagonal limit of the difference quotient: P_p P_q' - P_p' P_q
    np.fill_diagonal(M, Pp * legendre_p_prime(q, x) - legendre_p_prime(p, x) * Pq)
    return complex(np.sum(w[:, None] * w[None, :] * M) / (2j * np.pi))


def legendre_fourier(n: int, x):
    """(2 pi)^(-1/2) int_{-1}^{1} e^{-ixu} P_n(u) du = (2 pi)^(-1/2) 2 (-i)^n j_n(x), x > 0."""
    x = np.asarray(x, dtype=float)
    jn = np.sqrt(0.5 * np.pi / x) * sph_bessel_j(n, x)
    return 2.0 * (-1j) ** n * jn / np.sqrt(2.0 * np.pi)


@dataclass(frozen=True)
class AGram:
    """Both sides of <A P_p, A P_q> = <P_p, (I + H)/2 P_q>."""

    lhs: complex
    rhs: complex
    tail_estimate: float
    tail_bound: float
    X: float

    @property
    def error(self) -> float:
        return float(abs(self.lhs - self.rhs))

    @property
    def corrected_error(self) -> float:
        """|lhs + leading tail - rhs|."""
        return float(abs(self.lhs + self.tail_estimate - self.rhs))


def a_op_gram(p: int, q: int, X: float = 2000.0) -> AGram:
    """Legendre matrix elements of A*A on the Fourier side and of (I + H)/2.

    lhs = int_0^X conj(P_p^) P_q^ dx.  Two integrations by parts give
    P^(x) = a(x)/x + b(x) with |a| <= 2/sqrt(2pi) and |b| <= c_n / x^2, so the
    tail beyond X is (1 + (-1)^(p+q)) / (2 pi X) plus a remainder of order
    1/X^2; ``tail_bound`` bounds the whole tail.
    """
    if p < 0 or q < 0:
        raise ValueError("indices must be >= 0")
    rule = half_line_rule(X)
    x = rule.nodes
    lhs = np.sum(rule.weights * np.conj(legendre_fourier(p, x)) * legendre_fourier(q, x))
    norm_pq = 2.0 / (2 * p + 1) if p == q else 0.0
    rhs = 0.5 * (norm_pq + legendre_hilbert_element(p, q))

    c1 = 2.0 / np.sqrt(2.0 * np.pi)

    def c2(n):
        ends = np.array([1.0, -1.0])
        d1 = np.abs(legendre_p_prime(n, ends)).sum()
        # max |P_n''| on [-1, 1] is attained at 1: n(n+1)(n-1)(n+2)/8
        d2 = (n - 1) * n * (n + 1) * (n + 2) / 8.0
        return (d1 + 2.0 * d2) / np.sqrt(2.0 * np.pi)

    lead = (1.0 + (-1.0) ** (p + q)) / (2.0 * np.pi * X)
    rem = (c1 * (c2(p) + c2(q)) / (2.0 * X ** 2) + c2(p) * c2(q) / (3.0 * X ** 3)
           + 2.0 / (2.0 * np.pi * X ** 2))
    return AGram(complex(lhs), complex(rhs), float(lead), float(lead + rem), float(X))


def packet_gram(centres=(-3.0, -1.0, 1.0, 3.0), width: float = 0.5,
                tau_max: float = 160.0) -> tuple[np.ndarray, np.ndarray]:
    """Gram matrices of spectral packets and of their profiles.

    phi_j(t) = exp(-(sigma(t) - c_j)^2 / (2 w^2)) with sigma(t) = ln((1-t)/(1+t)),
    psi_j(u) = int Q'(t, u) phi_j(t) dt.  Unitarity of U means
    <psi_j, psi_k> = <phi_j, phi_k>; returns (G_psi, G_phi).  The u-integral
    runs in tau = ln((1-u)/(1+u)) on [-tau_max, tau_max], where the packets
    have decayed like a Gaussian.
    """
    centres = np.asarray(centres, dtype=float)
    lo = centres.min() - 10.0 * width
    hi = centres.max() + 10.0 * width
    srule = composite_legendre(np.linspace(lo, hi, int(np.ceil((hi - lo) / 0.25)) + 1))
    sig = srule.nodes
    dt = 0.5 / np.cosh(0.5 * sig) ** 2 * srule.weights
    Phi = np.exp(-((sig[None, :] - centres[:, None]) ** 2) / (2.0 * width ** 2))
    G_phi = (Phi * dt) @ Phi.T

    trule = composite_legendre(np.linspace(-tau_max, tau_max, int(2 * tau_max / 0.5) + 1))
    tau = trule.nodes
    du = 0.5 / np.cosh(0.5 * tau) ** 2 * trule.weights
    # Q'(t, u) in log coordinates; u = -tanh(tau/2) rounds to +-1 long before
    # tau_max, so the kernel is not evaluated through q_prime(t, u) here
    Qm = (np.exp(1j * np.outer(sig, tau) / (2.0 * np.pi))
          * (np.cosh(0.5 * sig)[:, None] * np.cosh(0.5 * tau)[None, :]) / np.pi)
    Psi = (Phi * dt) @ Qm
    G_psi = (np.conj(Psi) * du) @ Psi.T
    return G_psi, G_phi
