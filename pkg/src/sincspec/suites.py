"""The verification suites behind ``sincspec verify``.

Each runner takes its merged parameter table and returns a list of
``Check`` objects.  Check ids are ``<family>`` or ``<family>[<case>]``; every
family is registered once in ``REGISTRY`` with its description and anchor.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import j0

from . import covariance as cov
from . import finite_hilbert as fh
from . import hankel_reduction as hk
from . import specfun as sf
from . import spectral_transform as st
from . import toeplitz_arc as ta
from . import wiener_hopf as wh
from .quadrature import GridFunction, gauss_legendre, half_line_rule
from .report import Check

REGISTRY: dict[str, tuple[str, str]] = {}


def _family(fid: str, description: str, anchor: str) -> str:
    if fid in REGISTRY:
        raise RuntimeError(f"check family {fid} registered twice")
    REGISTRY[fid] = (description, anchor)
    return fid


def _check(fid: str, case: str | None, max_error, tolerance, tail_bound=None) -> Check:
    desc, anchor = REGISTRY[fid]
    cid = fid if case is None else f"{fid}[{case}]"
    return Check(cid, desc, anchor, float(max_error), float(tolerance), tail_bound)


def _arc_label(arc) -> str:
    return f"alpha={arc.alpha:.6g},beta={arc.beta:.6g}"


# --- eigen-K ----------------------------------------------------------------

EK_RES = _family("eigen-K.residual",
                 "truncated K q+ minus s q+, against 5e-3 sup|q+| plus the exact tail beyond X",
                 "eigen-equation of K for the spectral function q+")
EK_COR = _family("eigen-K.corrected",
                 "truncated K q+ plus the exact tail minus s q+, relative to sup|q+|",
                 "eigen-equation of K for the spectral function q+")
EK_SPEC = _family("eigen-K.spectrum",
                  "symmetrised sinc Nystrom eigenvalues stay inside [0, 1]",
                  "spectrum of K is [0, 1]")
EK_BOUND = _family("eigen-K.bounded",
                   "|Kg(x)| <= pi^(-1/2) ||g|| for Laguerre and Gaussian test functions",
                   "K is bounded from L2 to L-infinity")
EK_GRAM = _family("eigen-K.gram",
                  "Laguerre Gram matrix of K is real symmetric with eigenvalues in [0, 1]",
                  "K as a Wiener-Hopf operator with indicator symbol")


def run_eigen_k(p: dict) -> list[Check]:
    X = float(p["X"])
    xs = np.asarray(p["x_values"], dtype=float)
    svals = [float(s) for s in p["s_values"]]
    rule = half_line_rule(X)
    Q = st.q_plus_matrix(svals, rule.nodes)
    checks = []
    for s, q in zip(svals, Q):
        sup = float(np.max(np.abs(q)))
        g = GridFunction(rule, q)
        qx = st.q_plus(s, xs)
        tails = st.q_plus_sinc_tail(s, xs, X)
        for x, qxi, tail in zip(xs, np.atleast_1d(qx), np.atleast_1d(tails)):
            val, _ = wh.apply_K(g, float(x))
            err = abs(val - s * qxi)
            case = f"s={s:g},x={x:g}"
            checks.append(_check(EK_RES, case, err, float(p["rel_tol"]) * sup,
                                 abs(tail) + float(p["tail_allowance"])))
            checks.append(_check(EK_COR, case, abs(val + tail - s * qxi) / sup,
                                 float(p["corrected_rel_tol"])))

    K = wh.discretize_W(wh.indicator(), gauss_legendre(int(p["spectrum_n"]), 0.0, float(p["spectrum_X"])))
    ev = K.eigvals().real
    checks.append(_check(EK_SPEC, None, max(0.0, -ev.min(), ev.max() - 1.0), p["spectrum_tol"]))

    brule = half_line_rule(60.0)
    y = brule.nodes
    tests = [sf.laguerre_fn(n, y) for n in range(4)] + [np.exp(-0.5 * (y - 5.0) ** 2)]
    excess = 0.0
    for gv in tests:
        g = GridFunction(brule, gv)
        bound = g.norm() / math.sqrt(math.pi)
        for x in (0.5, 1.0, 2.0, 5.0, 10.0):
            val, _ = wh.apply_K(g, x)
            excess = max(excess, abs(val) - bound)
    checks.append(_check(EK_BOUND, None, excess, p["bound_tol"]))

    G = wh.gram_K_laguerre_matrix(int(p["gram_N"]))
    ge = np.linalg.eigvalsh(0.5 * (G + G.conj().T))
    err = max(float(np.max(np.abs(G - G.T))), float(np.max(np.abs(G.imag))),
              max(0.0, -ge.min(), ge.max() - 1.0))
    checks.append(_check(EK_GRAM, None, err, p["gram_tol"]))
    return checks


# --- diag-V -----------------------------------------------------------------

DV_ANCHOR = _family("diag-V.anchor", "q+(1/2, x) against sqrt(2/pi) J0(x)",
                    "closed form of the spectral function at s = 1/2")
DV_BASIS = _family("diag-V.basis-map",
                   "int_0^X q+(s, x) l_n(x) dx against h_n(s) on the special arc",
                   "inverse diagonalising transform maps l_n to h_n")
DV_REAL = _family("diag-V.realness", "imaginary part of the q+ integral", "q+ is real")
DV_ROUTES = _family("diag-V.two-routes",
                    "v-line quadrature of q+ against the direct theta integral",
                    "explicit kernel of the spectral function")
DV_UNIF = _family("diag-V.uniform-bound", "|q+(s, x)| minus its uniform bound",
                  "explicit kernel of the spectral function")
DV_SYM = _family("diag-V.parameter-symmetry", "a(s) + a(1 - s)",
                 "symmetry q-(s, x) = q+(1 - s, -x)")
DV_ISO = _family("diag-V.isometry", "||V h||^2 / ||h||^2 - 1 for a smooth window function",
                 "V is a Hilbert space isomorphism")


def run_diag_v(p: dict) -> list[Check]:
    checks = []
    xa = np.asarray(p["anchor_x"], dtype=float)
    err = np.max(np.abs(st.q_plus(0.5, xa) - math.sqrt(2.0 / math.pi) * j0(xa)))
    checks.append(_check(DV_ANCHOR, None, err, p["anchor_tol"]))

    arc = ta.special_arc()
    svals = np.asarray(p["s_values"], dtype=float)
    for n in range(int(p["n_max"]) + 1):
        vals, tail = st.apply_V_inverse_on_laguerre(n, svals, float(p["X"]))
        h = ta.h_basis(n, svals, arc)
        d = np.abs(vals - h)
        i = int(np.argmax(d - tail))
        checks.append(_check(DV_BASIS, f"n={n}", d[i], p["basis_tol"], tail[i]))

    xs = np.linspace(0.0, 20.0, 41)
    im = max(float(np.max(np.abs(st.q_plus_imag(s, xs)))) for s in (0.2, 0.5, 0.8))
    checks.append(_check(DV_REAL, None, im, p["realness_tol"]))

    xr = np.array([0.0, 1.0, 5.0])
    err = max(float(np.max(np.abs(st.q_plus(s, xr) - st.q_plus_direct(s, xr)))) for s in (0.3, 0.7))
    checks.append(_check(DV_ROUTES, None, err, p["route_tol"]))

    excess = max(float(np.max(np.abs(st.q_plus(s, xs)))) - st.q_plus_uniform_bound(s)
                 for s in (0.05, 0.2, 0.5, 0.8, 0.95))
    checks.append(_check(DV_UNIF, None, max(excess, 0.0), p["bound_tol"]))

    sym = max(abs(st.SpectralParameter(s).a + st.SpectralParameter(1.0 - s).a)
              for s in (0.01, 0.2, 0.37, 0.5, 0.9))
    checks.append(_check(DV_SYM, None, sym, p["symmetry_tol"]))

    ratio = st.isometry_ratio(st.hann_window_function(), float(p["isometry_X"]))
    checks.append(_check(DV_ISO, None, abs(ratio - 1.0), p["isometry_tol"]))
    return checks


# --- laguerre-mp ------------------------------------------------------------

LM_CROSS = _family("laguerre-mp.cross-check",
                   "<l_m, K l_n> against the arc-side integral of s conj(h_m) h_n",
                   "Laguerre functions map to the Meixner-Pollaczek basis")
LM_LAG = _family("laguerre-mp.laguerre-genfun",
                 "sum_n l_n(x) q^n against its closed form", "Laguerre generating function")
LM_MP = _family("laguerre-mp.mp-genfun",
                "sum_n P_n(x; beta) q^n against its closed form",
                "Meixner-Pollaczek generating function")
LM_MOD = _family("laguerre-mp.fourier-modulus",
                 "|Fourier image of l_n| against (2 pi)^(-1/2) (x^2 + 1/4)^(-1/2)",
                 "Laguerre functions on the Fourier side")
LM_H0 = _family("laguerre-mp.h0-anchor", "h_0(1/2) on the special arc against sqrt(8 / 5 pi)",
                "Meixner-Pollaczek basis on (0, 1)")


def run_laguerre_mp(p: dict) -> list[Check]:
    N = int(p["N"])
    arc = ta.special_arc()
    G = wh.gram_K_laguerre_matrix(N, int(p["quad_order"]))
    err = max(abs(G[m, n] - ta.arc_moments(m, n, arc)[1]) for m in range(N) for n in range(N))
    checks = [_check(LM_CROSS, None, err, p["cross_tol"])]

    xs = np.array([0.5, 2.0, 5.0])
    err = 0.0
    for q in (0.1, 0.3):
        series = sum(sf.laguerre_fn(n, xs) * q ** n for n in range(31))
        closed = np.exp(-0.5 * xs) * np.exp(-xs * q / (1.0 - q)) / (1.0 - q)
        err = max(err, float(np.max(np.abs(series - closed))))
    checks.append(_check(LM_LAG, None, err, p["genfun_tol"]))

    err = 0.0
    for beta in (arc.beta, 1.0, 2.5):
        for q in (0.1, 0.3):
            series = sum(sf.meixner_pollaczek(n, xs, beta) * q ** n for n in range(31))
            closed = ((1.0 - np.exp(1j * beta) * q) ** (-0.5 + 1j * xs)
                      * (1.0 - np.exp(-1j * beta) * q) ** (-0.5 - 1j * xs))
            err = max(err, float(np.max(np.abs(series - closed))))
    checks.append(_check(LM_MP, None, err, p["genfun_tol"]))

    u = np.linspace(-5.0, 5.0, 101)
    ref = 1.0 / math.sqrt(2.0 * math.pi) / np.sqrt(u * u + 0.25)
    err = max(float(np.max(np.abs(np.abs(wh.laguerre_fourier(n, u)) - ref))) for n in range(N))
    checks.append(_check(LM_MOD, None, err, p["modulus_tol"]))

    h0 = complex(ta.h_basis(0, 0.5, arc))
    checks.append(_check(LM_H0, None, abs(h0 - math.sqrt(8.0 / (5.0 * math.pi))), p["anchor_tol"]))
    return checks


# --- toeplitz-arc -----------------------------------------------------------

TA_REP = _family("toeplitz-arc.spectral-rep",
                 "max |c(m - n) - int_0^1 s conj(h_m) h_n ds| over m, n",
                 "Toeplitz operator of an arc is multiplication by s")
TA_ORTH = _family("toeplitz-arc.orthonormality",
                  "max |delta_mn - int_0^1 conj(h_m) h_n ds| over m, n",
                  "h_n form an orthonormal basis")
TA_SECT = _family("toeplitz-arc.section-spectrum",
                  "finite Toeplitz section eigenvalues outside [0, 1]",
                  "spectrum of a Toeplitz operator with indicator symbol")
TA_IND = _family("toeplitz-arc.indicator-pullback",
                 "sample angles where the arc indicator and the pulled back [-1, 1] indicator differ",
                 "Moebius map from the line to the circle")
TA_MOEB = _family("toeplitz-arc.moebius",
                  "|chi(x)| - 1 and chi^-1(chi(x)) - x",
                  "Moebius map from the line to the circle")


def run_toeplitz_arc(p: dict) -> list[Check]:
    checks = []
    order = int(p["quad_order"])
    for a, b in p["arcs"]:
        arc = ta.ArcSpec(float(a), float(b))
        lab = _arc_label(arc)
        M = int(max(p["rep_max"], p["orth_max"])) + 1
        rep = orth = 0.0
        for m in range(M):
            for n in range(M):
                gram, mom, _ = ta.arc_moments(m, n, arc, order)
                if m <= p["rep_max"] and n <= p["rep_max"]:
                    rep = max(rep, abs(ta.arc_fourier_coeff(m - n, arc) - mom))
                if m <= p["orth_max"] and n <= p["orth_max"]:
                    orth = max(orth, abs((1.0 if m == n else 0.0) - gram))
        checks.append(_check(TA_REP, lab, rep, p["rep_tol"]))
        checks.append(_check(TA_ORTH, lab, orth, p["orth_tol"]))
        ev = ta.toeplitz_matrix(int(p["section_N"]), arc).eigvals().real
        checks.append(_check(TA_SECT, lab, max(0.0, -ev.min(), ev.max() - 1.0), p["section_tol"]))
        checks.append(_check(TA_IND, lab, ta.indicator_consistency(arc), 0.0))
        chi = ta.MoebiusMap(arc)
        x = np.linspace(-50.0, 50.0, 201)
        z = chi(x)
        err = max(float(np.max(np.abs(np.abs(z) - 1.0))),
                  float(np.max(np.abs(chi.inverse(z) - x) / (1.0 + np.abs(x)))))
        checks.append(_check(TA_MOEB, lab, err, p["moebius_tol"]))
    return checks


# --- hilbert-finite ---------------------------------------------------------

HF_EIG = _family("hilbert-finite.eigen",
                 "relative residual of H Q'(t, .) - t Q'(t, .) at sample points",
                 "generalised eigenfunctions of the finite Hilbert transform")
HF_PV = _family("hilbert-finite.pv-zero",
                "H applied to (1 - y^2)^(-1/2) vanishes inside (-1, 1)",
                "finite Hilbert transform as a principal value")
HF_PACK = _family("hilbert-finite.packet-unitarity",
                  "Gram matrix of transformed spectral packets against that of the packets",
                  "unitarity of the diagonalising transform of H")


def run_hilbert_finite(p: dict) -> list[Check]:
    checks = []
    n = int(p["n"])
    for t in p["t_values"]:
        r = fh.hilbert_eigen_residual(float(t), p["x_values"], n)
        checks.append(_check(HF_EIG, f"t={float(t):g}", r, p["eigen_tol"]))
    x = np.array([-0.9, -0.3, 0.2, 0.75])
    pv = fh.finite_hilbert_pv(lambda y: 1.0 / np.sqrt(1.0 - y * y), x, n)
    checks.append(_check(HF_PV, None, np.max(np.abs(pv)), p["pv_tol"]))
    Gpsi, Gphi = fh.packet_gram()
    checks.append(_check(HF_PACK, None, np.max(np.abs(Gpsi - Gphi)), p["packet_tol"]))
    return checks


# --- intertwiner-A ----------------------------------------------------------

IA_B = _family("intertwiner-A.relation",
               "int_0^X conj(P_p^) P_q^ against <P_p, (I + H)/2 P_q>",
               "A*A = (I + H)/2 on [-1, 1]")
IA_COR = _family("intertwiner-A.corrected",
                 "the same with the leading 1/X tail added back, max over p, q",
                 "A*A = (I + H)/2 on [-1, 1]")


def run_intertwiner_a(p: dict) -> list[Check]:
    checks = []
    worst = 0.0
    P = int(p["p_max"])
    for i in range(P + 1):
        for j in range(P + 1):
            g = fh.a_op_gram(i, j, float(p["X"]))
            checks.append(_check(IA_B, f"p={i},q={j}", g.error, p["tol"], g.tail_bound))
            worst = max(worst, g.corrected_error)
    checks.append(_check(IA_COR, None, worst, p["corrected_tol"]))
    return checks


# --- hankel-identities ------------------------------------------------------

HI_FDPOK = _family("hankel-identities.finite-rank",
                   "k_{l+1/2} - sinc/pi + finite Bessel sum on an (r, t) grid",
                   "radial kernels are finite-rank perturbations of K")
HI_PAR = _family("hankel-identities.parity",
                 "even and odd Bessel expansions of sinc(x - x') +- sinc(x + x')",
                 "Gegenbauer expansion split by parity")
HI_GEG = _family("hankel-identities.gegenbauer",
                 "sum_l (2l+1) F_l(x, x') against (2/pi) sinc(x - x')",
                 "Gegenbauer addition formula")
HI_ALPHA = _family("hankel-identities.alpha",
                   "telescoping derivative of Bessel product sums (stencil-limited)",
                   "Bessel product telescoping identity")
HI_III = _family("hankel-identities.reduction",
                 "H_mu M H_mu against H_{mu-2} M H_{mu-2} minus a rank-one projection",
                 "reduction of the Hankel-compressed multiplication operators")
HI_KSINC = _family("hankel-identities.k-minus-half",
                   "k_{-1/2}(r, t) against sinc(r - t)/pi", "radial kernels of K")
HI_SELF = _family("hankel-identities.self-reciprocal",
                  "||H_nu g - g|| for g = s^(nu+1/2) exp(-s^2/2) on [0, S]",
                  "Hankel transforms are unitary involutions")
HI_POLY = _family("hankel-identities.legendre-jacobi",
                  "(2l+1) P_l - l P^(0,1)_{l-1} - (l+1) P^(0,1)_l on [-1, 1]",
                  "Legendre polynomials through Jacobi P^(0,1)")
HI_BESSEL = _family("hankel-identities.bessel-product",
                    "Bessel product recurrence with derivatives from J' = (J_{nu-1} - J_{nu+1})/2",
                    "Bessel product identity behind the telescoping sums")


def run_hankel(p: dict) -> list[Check]:
    checks = []
    grid = np.asarray(p["fdpok_grid"], dtype=float)
    R, T = np.meshgrid(grid, grid, indexing="ij")
    for l in p["fdpok_l"]:
        checks.append(_check(HI_FDPOK, f"l={int(l)}", np.max(hk.fdpok_residual(int(l), R, T)),
                             p["fdpok_tol"]))

    err = 0.0
    for x, xp in [(1.0, 2.0), (0.5, 3.0), (2.0, 2.0), (4.0, 1.5)]:
        err = max(err, *hk.fagko_parity_check(int(p["parity_L"]), x, xp))
    checks.append(_check(HI_PAR, None, err, p["parity_tol"]))

    L = int(p["gegenbauer_L"])
    err = max(abs(hk.gegenbauer_partial_sum(L, x, xp) - 2.0 * sf.sinc_kernel(x - xp))
              for x, xp in [(1.0, 1.0), (1.0, 2.0), (0.5, 3.0)])
    checks.append(_check(HI_GEG, None, err, p["gegenbauer_tol"]))

    cases = [(0.5, 1.0, 2.0, 1, 3, 1.5), (1.5, 0.5, 1.0, 0, 2, 2.0), (2.5, 1.0, 1.5, 1, 4, 0.8)]
    err = max(hk.alpha_identity_check(*c) for c in cases)
    checks.append(_check(HI_ALPHA, None, err, p["alpha_tol"]))

    R, T = np.meshgrid([0.4, 1.3, 3.0, 6.5], [0.7, 2.2, 5.0], indexing="ij")
    err = max(float(np.max(hk.fagko_iii_residual(hk.BesselProjectionIndex(n, i), R, T)))
              for n in (1, 2, 3) for i in (0, 1))
    checks.append(_check(HI_III, None, err, p["fagko_iii_tol"]))

    r = np.linspace(0.1, 20.0, 200)
    err = np.max(np.abs(hk.k_kernel(-1, r, 1.0) - sf.sinc_kernel(r - 1.0)))
    checks.append(_check(HI_KSINC, None, err, p["kernel_tol"]))

    rule = gauss_legendre(int(p["hankel_nodes"]), 0.0, float(p["hankel_S"]))
    for l in p["hankel_l"]:
        checks.append(_check(HI_SELF, f"nu={int(l) + 0.5:g}",
                             hk.hankel_selfreciprocal_check(int(l), rule), p["hankel_tol"]))

    x = np.linspace(-1.0, 1.0, 41)
    err = max(float(np.max(np.abs((2 * l + 1) * sf.legendre_p(l, x) - l * sf.jacobi_p01(l - 1, x)
                                  - (l + 1) * sf.jacobi_p01(l, x)))) for l in range(1, 11))
    checks.append(_check(HI_POLY, None, err, p["poly_tol"]))

    err = 0.0
    for nu in (0.5, 1.5, 2.5):
        for z1, z2 in [(1.0, 2.0), (0.5, 3.0)]:
            lhs = 2 * nu * (z1 * sf.bessel_j_prime(nu, z1) * sf.bessel_j(nu, z2)
                            + z2 * sf.bessel_j(nu, z1) * sf.bessel_j_prime(nu, z2))
            rhs = z1 * z2 * (sf.bessel_j(nu - 1, z1) * sf.bessel_j(nu - 1, z2)
                             - sf.bessel_j(nu + 1, z1) * sf.bessel_j(nu + 1, z2))
            err = max(err, abs(float(lhs) - float(rhs)))
    checks.append(_check(HI_BESSEL, None, err, p["bessel_tol"]))
    return checks


# --- covariance -------------------------------------------------------------

CV_BSIG = _family("covariance.symbol-B-sigma", "B . sigma against -sgn on samples",
                  "Moebius covariance of Wiener-Hopf symbols")
CV_AGAM = _family("covariance.symbol-A-gamma", "A_gamma . 1_[-1,1] against 1_[gamma, inf)",
                  "Moebius covariance of Wiener-Hopf symbols")
CV_COMP = _family("covariance.symbol-composition", "(A1 A2) . kappa against A1 . (A2 . kappa)",
                  "Moebius covariance of Wiener-Hopf symbols")
CV_GROUP = _family("covariance.group-law", "action of a product against the composed actions",
                   "SL(2, R) acting by fractional linear maps")
CV_TANH = _family("covariance.tanh-conjugation",
                  "Legendre elements of H_[0,1] against those of W_-tanh after the change of variable",
                  "finite Hilbert transform on [0, 1] as W_-tanh")
CV_WEAKH = _family("covariance.weak-hilbert",
                   "elements of H_[-1,1] on mapped Laguerre functions against 2K - I",
                   "half-line Hilbert transform is isomorphic to 2K - I")
CV_WEAKS = _family("covariance.weak-symbol",
                   "elements of the -sgn symbol on F_B l_n against 2K - I",
                   "half-line Hilbert transform is isomorphic to 2K - I")
CV_ISO = _family("covariance.fa-isometry", "norm change of F_A on a Gaussian",
                 "F_A is unitary on L2 of the line")
CV_INV = _family("covariance.fa-inverse", "F_{A^-1} F_A f - f on a Gaussian",
                 "F_A is a representation")
CV_BAND = _family("covariance.band-containment",
                  "discretised spectra of H_[-1,1] and 2K - I outside [-1, 1]",
                  "half-line Hilbert transform is isomorphic to 2K - I")
CV_KS = _family("covariance.band-ks",
                "Kolmogorov distance between the two discretised spectral distributions",
                "half-line Hilbert transform is isomorphic to 2K - I")


def run_covariance(p: dict) -> list[Check]:
    checks = []
    tol = p["symbol_tol"]
    img = cov.transform_symbol(cov.B_element(), wh.sigma())
    checks.append(_check(CV_BSIG, None, cov.symbol_distance(img, wh.sgn(-1.0)), tol))

    err = 0.0
    for g in (-2.0, 0.0, 0.3, 1.7):
        img = cov.transform_symbol(cov.A_gamma(g), wh.indicator())
        ref = wh.step(g, 0.0, 1.0)
        err = max(err, _interval_gap(img, ref), cov.symbol_distance(img, ref))
    checks.append(_check(CV_AGAM, None, err, tol))

    rng = np.random.default_rng(7)
    err = 0.0
    for _ in range(20):
        A1 = _random_sl2(rng)
        A2 = _random_sl2(rng)
        for base in (wh.indicator(), wh.sigma(), wh.step(0.4, -1.0, 2.0)):
            direct = cov.transform_symbol(A1 @ A2, base)
            nested = cov.transform_symbol(A1, cov.transform_symbol(A2, base))
            err = max(err, cov.symbol_distance(direct, nested))
    checks.append(_check(CV_COMP, None, err, tol))

    err = 0.0
    x = np.linspace(-3.0, 3.0, 61) + 1e-3
    for _ in range(20):
        A1, A2 = _random_sl2(rng), _random_sl2(rng)
        y = A2.act(x)
        ok = np.isfinite(y) & np.isfinite(A1.act(y)) & (np.abs(A1.act(y)) < 1e6)
        err = max(err, float(np.max(np.abs((A1 @ A2).act(x)[ok] - A1.act(y[ok])) /
                                    (1.0 + np.abs(A1.act(y[ok]))))))
    checks.append(_check(CV_GROUP, None, err, p["group_tol"]))

    M = int(p["tanh_max"])
    err = max(cov.tanh_conjugation_check(m, n) for m in range(M + 1) for n in range(M + 1))
    checks.append(_check(CV_TANH, None, err, p["tanh_tol"]))

    res = cov.weak_covariance(int(p["weak_N"]))
    checks.append(_check(CV_WEAKH, None, res.hilbert_error, p["weak_tol"]))
    checks.append(_check(CV_WEAKS, None, res.symbol_error, p["weak_tol"]))

    # the Gaussian sits 8 widths from the pole x = 1 of A, so F_A f stays on the grid
    grid = GridFunction.sample(_gauss_grid(), lambda t: np.exp(-2.0 * (t + 3.0) ** 2))
    A = cov.A_gamma(0.3)
    fa, loss = cov.f_a_apply(A, grid, return_loss=True)
    checks.append(_check(CV_ISO, None, abs(fa.norm() ** 2 + loss - grid.norm() ** 2) / grid.norm() ** 2,
                         p["isometry_tol"]))
    back = cov.f_a_apply(A.inverse(), fa)
    checks.append(_check(CV_INV, None, np.max(np.abs(back.values - grid.values)), p["inverse_tol"]))

    band = cov.htwhrk_band(int(p["band_n"]), float(p["band_X"]))
    checks.append(_check(CV_BAND, None, band.containment_error, p["band_tol"]))
    checks.append(_check(CV_KS, None, band.ks_distance, p["ks_tol"]))
    return checks


def _interval_gap(s1, s2) -> float:
    """Largest difference in endpoints and values of two interval symbols."""
    def gap(u, v):
        if np.isinf(u) or np.isinf(v):
            return 0.0 if u == v else np.inf
        return abs(u - v)
    return max(gap(s1.lo, s2.lo), gap(s1.hi, s2.hi),
               abs(s1.inside - s2.inside), abs(s1.outside - s2.outside))


def _gauss_grid():
    from .quadrature import composite_legendre
    return composite_legendre(np.linspace(-60.0, 60.0, 961), 16, "line")


def _random_sl2(rng) -> cov.Sl2Element:
    a, b, c = rng.normal(size=3)
    a = a if abs(a) > 0.2 else 0.2 + abs(a)
    return cov.Sl2Element(a, b, c, (1.0 + b * c) / a)


RUNNERS = {
    "eigen-K": run_eigen_k,
    "diag-V": run_diag_v,
    "laguerre-mp": run_laguerre_mp,
    "toeplitz-arc": run_toeplitz_arc,
    "hilbert-finite": run_hilbert_finite,
    "intertwiner-A": run_intertwiner_a,
    "hankel-identities": run_hankel,
    "covariance": run_covariance,
}
