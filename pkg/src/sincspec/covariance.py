"""SL(2, R) covariance of Wiener-Hopf operators.

A real fractional linear map A acts on symbols by (A . kappa)(x) = kappa(A^-1 . x)
and on functions by the unitary (F_A f)(x) = f(A^-1 . x) / (-c x + a).
Conjugating F_A by the Fourier transform carries W_kappa to W_{A . kappa}.
With B = (1/sqrt 2)[[1, -1], [1, 1]] this maps 2K - I (symbol sigma) to
W_{-sgn}, the Hilbert transform of the half-line.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.stats import ks_2samp

from .finite_hilbert import finite_hilbert_pv
from .quadrature import GridFunction, composite_legendre, gauss_legendre
from .specfun import laguerre_poly, legendre_p, legendre_p_prime
from .wiener_hopf import (SymbolSpec, discretize_W, gram_K_laguerre_matrix, laguerre_fourier,
                          moebius, sigma)

DET_TOL = 1e-12


@dataclass(frozen=True)
class Sl2Element:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > DET_TOL:
            raise ValueError(f"determinant must be 1, got {det!r}")

    @classmethod
    def identity(cls) -> "Sl2Element":
        return cls(1.0, 0.0, 0.0, 1.0)

    def __matmul__(self, other: "Sl2Element") -> "Sl2Element":
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Sl2Element(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "Sl2Element":
        return Sl2Element(self.d, -self.b, -self.c, self.a)

    def normalized(self) -> "Sl2Element":
        """Representative of {A, -A} with a > 0, or a = 0 and b > 0."""
        if self.a < 0 or (self.a == 0 and self.b < 0):
            return Sl2Element(-self.a, -self.b, -self.c, -self.d)
        return self

    @property
    def pole(self) -> float:
        """The point -d/c sent to infinity (inf when c = 0)."""
        return -self.d / self.c if self.c != 0 else np.inf

    def act(self, x):
        """(a x + b) / (c x + d) on the projective line; +-inf both mean infinity.

        At the pole the result is +inf.
        """
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            den = self.c * x + self.d
            out = np.where(den == 0, np.inf, (self.a * x + self.b) / np.where(den == 0, 1.0, den))
            at_inf = self.a / self.c if self.c != 0 else np.inf
            out = np.where(np.isinf(x), at_inf, out)
        return float(out) if out.ndim == 0 else out


def B_element() -> Sl2Element:
    s = 1.0 / np.sqrt(2.0)
    return Sl2Element(s, -s, s, s)


def A_gamma(gamma: float) -> Sl2Element:
    """(1/sqrt 2)[[1 - gamma, 1 + gamma], [-1, 1]], sending 1_[-1,1] to 1_[gamma, inf)."""
    s = 1.0 / np.sqrt(2.0)
    return Sl2Element(s * (1.0 - gamma), s * (1.0 + gamma), -s, s)


def sl2_action(A: Sl2Element, x):
    """(a x + b) / (c x + d); raises at the pole."""
    x = np.asarray(x, dtype=float)
    if np.any(A.c * x + A.d == 0):
        raise ValueError(f"x hits the pole {A.pole} of the fractional linear map")
    return A.act(x)


def _image_endpoint(A: Sl2Element, e: float, is_start: bool) -> float:
    v = A.act(e)
    if np.isinf(v):
        # infinity starts an arc at -inf and ends one at +inf
        return -np.inf if is_start else np.inf
    return float(v)


def transform_symbol(A: Sl2Element, sym: SymbolSpec) -> SymbolSpec:
    """The symbol x -> sym(A^-1 . x).

    An interval symbol is an arc of the projective line from ``lo`` upwards
    to ``hi``.  With det A = 1 the map preserves that orientation, so the
    image is the arc from A(lo) to A(hi); it wraps through infinity exactly
    when the pole of A lies inside the original arc.
    """
    if sym.kind == "interval":
        lo = _image_endpoint(A, sym.lo, True)
        hi = _image_endpoint(A, sym.hi, False)
        return SymbolSpec("interval", lo, hi, sym.inside, sym.outside)
    if sym.kind == "moebius":
        return moebius(sym.base, A @ sym.element)
    return moebius(sym, A)


def symbol_samples(*symbols: SymbolSpec, n: int = 2001, span: float = 50.0,
                   margin: float = 1e-9) -> np.ndarray:
    """Sample points on [-span, span] kept away from every interval endpoint."""
    x = np.linspace(-span, span, n) + np.pi * 1e-4
    for s in symbols:
        if s.kind == "interval":
            for e in (s.lo, s.hi):
                if np.isfinite(e):
                    x = x[np.abs(x - e) > margin]
    return x


def symbol_distance(s1: SymbolSpec, s2: SymbolSpec, x=None) -> float:
    """max |s1 - s2| on sample points away from the jumps."""
    if x is None:
        x = symbol_samples(s1, s2)
    return float(np.max(np.abs(np.asarray(s1(x), dtype=float) - np.asarray(s2(x), dtype=float))))


def f_a_apply(A: Sl2Element, f: GridFunction, return_loss: bool = False):
    """(F_A f)(x) = f(A^-1 . x) / (-c x + a) on the nodes of f's rule.

    f is interpolated by cubic splines (real and imaginary parts).  Nodes
    whose pre-image falls outside f's grid get the value 0; with
    ``return_loss`` the squared norm of f on the part of its grid that is
    not reached is returned as well.
    """
    x = f.rule.nodes
    Ainv = A.inverse()
    den = -A.c * x + A.a
    if np.any(np.abs(den) < 1e-14):
        raise ValueError("grid contains the pole of A^-1 . x")
    y = Ainv.act(x)
    lo, hi = x[0], x[-1]
    inside = np.isfinite(y) & (y >= lo) & (y <= hi)
    sr = CubicSpline(x, f.values.real)
    si = CubicSpline(x, f.values.imag)
    vals = np.zeros(x.size, dtype=complex)
    yi = y[inside]
    vals[inside] = (sr(yi) + 1j * si(yi)) / den[inside]
    out = GridFunction(f.rule, vals)
    if not return_loss:
        return out
    # source points whose image under A leaves the grid
    img = A.act(x)
    lost = ~(np.isfinite(img) & (img >= lo) & (img <= hi))
    loss = float(np.sum(f.rule.weights[lost] * np.abs(f.values[lost]) ** 2))
    return out, loss


# --- H_[0,1] and W_{-tanh}: weak forms of the tanh conjugation -------------

def _e01(n, x):
    return np.sqrt(2 * n + 1) * legendre_p(n, 2.0 * x - 1.0)


def _e01_prime(n, x):
    return np.sqrt(2 * n + 1) * 2.0 * legendre_p_prime(n, 2.0 * x - 1.0)


def _gamma_inv(n, xi):
    """(Gamma^-1 e_n)(xi) = sqrt(pi) e^{-pi xi / 2} e_n(e^{-pi xi}) and its derivative."""
    x = np.exp(-np.pi * xi)
    env = np.sqrt(np.pi) * np.exp(-0.5 * np.pi * xi)
    f = env * _e01(n, x)
    df = env * (-0.5 * np.pi * _e01(n, x) - np.pi * x * _e01_prime(n, x))
    return f, df


def hilbert01_element(m: int, n: int) -> complex:
    """<e_m, H_[0,1] e_n>, H_[0,1] g(x) = (1/(i pi)) PV int_0^1 g(y)/(y-x) dy.

    The antisymmetrised integrand is a polynomial; the tensor rule is exact.
    """
    rule = gauss_legendre(max(m, n) + 2, 0.0, 1.0)
    x, w = rule.nodes, rule.weights
    em, en = _e01(m, x), _e01(n, x)
    D = x[None, :] - x[:, None]
    np.fill_diagonal(D, 1.0)
    M = (em[:, None] * en[None, :] - em[None, :] * en[:, None]) / D
    np.fill_diagonal(M, em * _e01_prime(n, x) - _e01_prime(m, x) * en)
    return complex(np.sum(w[:, None] * w[None, :] * M) / (2j * np.pi))


def wtanh_element(m: int, n: int, Xi: float = 30.0, panel: float = 0.5) -> complex:
    """<Gamma^-1 e_m, W_{-tanh} Gamma^-1 e_n> with kernel 1/(2i sinh(pi (x-y)/2)).

    The kernel is odd in x - y, so pairing (x, y) with (y, x) cancels the
    singular part; the paired integrand is smooth and its diagonal value is
    the analytic limit -(f_m f_n' - f_m' f_n) / (i pi).
    """
    rule = composite_legendre(np.linspace(0.0, Xi, int(round(Xi / panel)) + 1))
    x, w = rule.nodes, rule.weights
    fm, dfm = _gamma_inv(m, x)
    fn, dfn = _gamma_inv(n, x)
    S = np.sinh(0.5 * np.pi * (x[:, None] - x[None, :]))
    np.fill_diagonal(S, 1.0)
    M = (fm[:, None] * fn[None, :] - fm[None, :] * fn[:, None]) / (2j * S)
    np.fill_diagonal(M, -(fm * dfn - dfm * fn) / (1j * np.pi))
    return complex(0.5 * np.sum(w[:, None] * w[None, :] * M))


def tanh_conjugation_check(m: int, n: int) -> float:
    """|<e_m, H_[0,1] e_n> - <Gamma^-1 e_m, W_{-tanh} Gamma^-1 e_n>|."""
    if not (0 <= m <= 8 and 0 <= n <= 8):
        raise ValueError("indices must lie in 0..8")
    return float(abs(hilbert01_element(m, n) - wtanh_element(m, n)))


# --- weak covariance for A = B, kappa = sigma -------------------------------

_D = (1.0 + 0.5j) / (1.0 - 0.5j)  # = 0.6 + 0.8i


def mapped_laguerre(n: int, xi):
    """F'_B l_n in closed form: sqrt(2)/(1 - i/2) d^n e^{i d xi} L_n(1.6 xi) on xi >= 0, d = 0.6 + 0.8i.

    F'_B is F_B conjugated by the Fourier transform.  Its Fourier image is
    F_B applied to the Fourier image of l_n, which is again a shifted and
    scaled Laguerre transform.
    """
    xi = np.asarray(xi, dtype=float)
    return (np.sqrt(2.0) / (1.0 - 0.5j) * _D ** n * np.exp(1j * _D * xi)
            * laguerre_poly(n, 2.0 * _D.imag * xi))


def _gamma_map(n: int, t):
    """(Gamma phi)(t) = sqrt(2)/(1-t) phi((1+t)/(1-t)), unitary L^2(0, inf) -> L^2(-1, 1)."""
    t = np.asarray(t, dtype=float)
    return np.sqrt(2.0) / (1.0 - t) * mapped_laguerre(n, (1.0 + t) / (1.0 - t))


@dataclass(frozen=True)
class CovarianceResult:
    hilbert_side: np.ndarray
    symbol_side: np.ndarray
    reference: np.ndarray

    @property
    def hilbert_error(self) -> float:
        return float(np.max(np.abs(self.hilbert_side - self.reference)))

    @property
    def symbol_error(self) -> float:
        return float(np.max(np.abs(self.symbol_side - self.reference)))


def weak_covariance(N: int = 3, n_outer: int = 800, n_pv: int = 1001,
                    x_span: float = 200.0, n_grid: int = 40001) -> CovarianceResult:
    """Matrix elements of W_{-sgn} on F'_B l_n against those of 2K - I on l_n.

    Route 1 maps W_{-sgn} = H_[0,inf) to H_[-1,1] with Gamma and uses the
    principal-value quadrature.  Route 2 stays on the Fourier side: F_B is
    applied to samples of the Fourier image of l_n by spline interpolation
    and the result is integrated against the symbol -sgn = B . sigma.
    """
    ref = 2.0 * gram_K_laguerre_matrix(N) - np.eye(N)

    # route 1: outer Gauss-Legendre in theta, t = cos(theta)
    orule = gauss_legendre(n_outer, 0.0, np.pi)
    t = np.cos(orule.nodes)
    wt = np.sin(orule.nodes) * orule.weights
    G = np.array([_gamma_map(k, t) for k in range(N)])
    HG = np.array([finite_hilbert_pv(lambda y, k=k: _gamma_map(k, y), t, n_pv) for k in range(N)])
    hil = (np.conj(G) * wt) @ HG.T

    # route 2: Fourier side
    grid = composite_legendre(np.linspace(-x_span, x_span, n_grid // 16 + 1))
    B = B_element()
    sym = transform_symbol(B, sigma())
    imgs = [f_a_apply(B, GridFunction(grid, laguerre_fourier(k, grid.nodes))).values
            for k in range(N)]
    kap = sym(grid.nodes)
    F = np.array(imgs)
    sym_side = (np.conj(F) * (grid.weights * kap)) @ F.T
    return CovarianceResult(hil, sym_side, ref)


# --- spectral band sanity ---------------------------------------------------

@dataclass(frozen=True)
class BandResult:
    hilbert_eigs: np.ndarray
    sigma_eigs: np.ndarray
    ks_distance: float

    @property
    def containment_error(self) -> float:
        """How far either spectrum pokes out of [-1, 1]."""
        lo = min(self.hilbert_eigs.min(), self.sigma_eigs.min())
        hi = max(self.hilbert_eigs.max(), self.sigma_eigs.max())
        return float(max(0.0, -1.0 - lo, hi - 1.0))


def htwhrk_band(n: int = 200, X: float = 40.0) -> BandResult:
    """Spectra of H_[-1,1] (Nystrom, zero diagonal) and of 2K - I on [0, X].

    Both are compared by the two-sample Kolmogorov distance of their
    eigenvalue sets.  Only H's discretisation is close to its continuous
    spectral distribution: K restricted to [0, X] is a time-and-band
    limiting operator, so most of its eigenvalues cluster at 0 and 1.
    """
    rule = gauss_legendre(n, -1.0, 1.0)
    x, w = rule.nodes, rule.weights
    D = x[None, :] - x[:, None]
    np.fill_diagonal(D, 1.0)
    Hm = np.sqrt(w[:, None] * w[None, :]) / (1j * np.pi * D)
    np.fill_diagonal(Hm, 0.0)
    eh = np.linalg.eigvalsh(Hm)
    K = discretize_W(sigma(), gauss_legendre(n, 0.0, X))
    es = K.eigvals().real
    ks = ks_2samp(eh, es).statistic
    return BandResult(eh, es, float(ks))

