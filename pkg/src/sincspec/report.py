"""Verification reports, the defaults table and curve export."""
from __future__ import annotations

import copy
import csv
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

DEFAULTS_VERSION = "1"

# Every default used by a suite lives here; reports echo the merged table.
DEFAULTS: dict[str, dict[str, Any]] = {
    "eigen-K": {
        "X": 400.0,
        "s_values": [0.2, 0.5, 0.8],
        "x_values": [0.5, 1.0, 2.0, 5.0, 10.0],
        "rel_tol": 5e-3,
        "corrected_rel_tol": 1e-8,
        "tail_allowance": 1e-10,
        "spectrum_X": 40.0,
        "spectrum_n": 200,
        "spectrum_tol": 0.01,
        "gram_N": 7,
        "gram_tol": 1e-8,
        "bound_tol": 1e-12,
    },
    "diag-V": {
        "X": 400.0,
        "n_max": 5,
        "s_values": [0.2, 0.5, 0.8],
        "basis_tol": 1e-4,
        "anchor_x": [0.0, 1.0, 5.0, 10.0],
        "anchor_tol": 1e-8,
        "route_tol": 1e-8,
        "realness_tol": 1e-12,
        "isometry_X": 400.0,
        "isometry_tol": 0.02,
        "bound_tol": 1e-12,
        "symmetry_tol": 1e-14,
    },
    "laguerre-mp": {
        "N": 7,
        "quad_order": 200,
        "cross_tol": 1e-6,
        "genfun_tol": 1e-10,
        "modulus_tol": 1e-13,
        "anchor_tol": 1e-14,
    },
    "toeplitz-arc": {
        "arcs": [[0.0, math.pi / 2], [math.pi / 4, math.pi / 3], [0.0, 2 * math.atan(0.5)]],
        "rep_max": 6,
        "orth_max": 8,
        "quad_order": 1280,
        "rep_tol": 1e-6,
        "orth_tol": 1e-8,
        "section_N": 60,
        "section_tol": 1e-10,
        "moebius_tol": 1e-10,
    },
    "hilbert-finite": {
        "n": 2048,
        "t_values": [-0.5, 0.0, 0.5],
        "x_values": [-0.7, 0.1, 0.6],
        "eigen_tol": 5e-3,
        "pv_tol": 1e-12,
        "packet_tol": 1e-8,
    },
    "intertwiner-A": {
        "X": 2000.0,
        "p_max": 6,
        "tol": 1e-4,
        "corrected_tol": 1e-5,
    },
    "hankel-identities": {
        "fdpok_grid": [0.3, 1.0, 2.5, 4.0, 7.5],
        "fdpok_l": [0, 1, 2],
        "fdpok_tol": 1e-12,
        "parity_L": 40,
        "parity_tol": 1e-10,
        "gegenbauer_L": 60,
        "gegenbauer_tol": 1e-10,
        "alpha_tol": 1e-8,
        "fagko_iii_tol": 1e-10,
        "kernel_tol": 1e-12,
        "hankel_S": 12.0,
        "hankel_nodes": 400,
        "hankel_l": [0, 1, 2, 3],
        "hankel_tol": 1e-6,
        "poly_tol": 1e-12,
        "bessel_tol": 1e-10,
    },
    "covariance": {
        "symbol_tol": 1e-12,
        "group_tol": 1e-10,
        "tanh_max": 2,
        "tanh_tol": 1e-3,
        "weak_N": 3,
        "weak_tol": 1e-2,
        "isometry_tol": 0.01,
        "inverse_tol": 1e-4,
        "band_n": 200,
        "band_X": 40.0,
        "band_tol": 0.02,
        "ks_tol": 0.1,
    },
}

SUITES = tuple(DEFAULTS) + ("all",)

# Tolerances below this are not meaningful in double precision.
MACHINE_FLOOR = 1e-15


@dataclass
class Check:
    id: str
    description: str
    anchor: str
    max_error: float
    tolerance: float
    tail_bound: float | None = None
    passed: bool = field(init=False)

    def __post_init__(self):
        self.max_error = float(self.max_error)
        self.tolerance = float(self.tolerance)
        if self.tail_bound is not None:
            self.tail_bound = float(self.tail_bound)
        allowed = self.tolerance + (self.tail_bound or 0.0)
        self.passed = bool(np.isfinite(self.max_error) and self.max_error <= allowed)

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "anchor": self.anchor,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "tail_bound": self.tail_bound,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check]
    parameters: dict
    wall_time: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.as_dict() for c in self.checks],
            "parameters": self.parameters,
            "wall_time": self.wall_time,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    def summary_lines(self) -> list[str]:
        out = []
        for c in self.checks:
            tb = "" if c.tail_bound is None else f" + tail {c.tail_bound:.2e}"
            out.append(f"{'PASS' if c.passed else 'FAIL'}  {c.id:<48} "
                       f"err {c.max_error:.3e} <= {c.tolerance:.1e}{tb}")
        n_fail = sum(not c.passed for c in self.checks)
        out.append(f"{self.suite}: {len(self.checks) - n_fail}/{len(self.checks)} checks passed "
                   f"in {self.wall_time:.1f} s")
        return out


def _validate_overrides(name: str, overrides: dict) -> dict[str, dict]:
    """Merge overrides into the defaults of each targeted suite."""
    targets = list(DEFAULTS) if name == "all" else [name]
    merged = {s: copy.deepcopy(DEFAULTS[s]) for s in targets}
    for key, value in overrides.items():
        hit = [s for s in targets if key in merged[s]]
        if not hit:
            raise KeyError(f"invalid override key {key!r} for suite {name!r}")
        if key.endswith("tol") and isinstance(value, (int, float)) and value < MACHINE_FLOOR:
            raise ValueError(
                f"tolerance {key}={value!r} is below {MACHINE_FLOOR:g}; double precision "
                "rounding alone exceeds it, so no check could pass meaningfully")
        for s in hit:
            merged[s][key] = value
    return merged


def run_suite(name: str, overrides: dict | None = None) -> VerificationReport:
    """Run one suite (or all of them) with defaults merged with ``overrides``."""
    from . import suites

    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    params = _validate_overrides(name, overrides or {})
    t0 = time.perf_counter()
    checks: list[Check] = []
    for suite_name, p in params.items():
        checks.extend(suites.RUNNERS[suite_name](p))
    checks.sort(key=lambda c: c.id)
    parameters = {"defaults_version": DEFAULTS_VERSION}
    parameters.update(params if name == "all" else params[name])
    return VerificationReport(name, checks, parameters, time.perf_counter() - t0)


# --- curves ----------------------------------------------------------------

CURVE_KINDS = {
    "q_plus": (("s",), {"x_min": 0.0, "x_max": 20.0, "step": 0.1}),
    "h_basis": (("n",), {"alpha": 0.0, "beta": 2 * math.atan(0.5),
                         "s_min": 0.01, "s_max": 0.99, "step": 0.01}),
    "q_prime_modulus": (("t",), {"u_min": -0.99, "u_max": 0.99, "step": 0.01}),
    "k_kernel": (("l", "t"), {"r_min": 0.1, "r_max": 20.0, "step": 0.1}),
    "toeplitz_spectrum": (("N",), {"alpha": 0.0, "beta": math.pi / 2}),
}


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0:
        raise ValueError("step must be positive")
    if hi < lo:
        return np.empty(0)
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def emit_curve(kind: str, params: dict, sink) -> int:
    """Write a curve as CSV to ``sink`` and return the number of data rows."""
    from . import finite_hilbert, hankel_reduction, spectral_transform, toeplitz_arc

    if kind not in CURVE_KINDS:
        raise KeyError(f"unknown curve kind {kind!r}; choose from {', '.join(CURVE_KINDS)}")
    required, optional = CURVE_KINDS[kind]
    missing = [k for k in required if k not in params]
    if missing:
        raise ValueError(f"curve {kind!r} needs parameter(s) {', '.join(missing)}")
    unknown = set(params) - set(required) - set(optional)
    if unknown:
        raise ValueError(f"unknown parameter(s) for {kind!r}: {', '.join(sorted(unknown))}")
    p = dict(optional)
    p.update(params)

    if kind == "q_plus":
        x = _grid(float(p["x_min"]), float(p["x_max"]), float(p["step"]))
        cols = ["x", "q_plus"]
        rows = np.column_stack([x, spectral_transform.q_plus(float(p["s"]), x)]) if x.size else []
    elif kind == "h_basis":
        s = _grid(float(p["s_min"]), float(p["s_max"]), float(p["step"]))
        arc = toeplitz_arc.ArcSpec(float(p["alpha"]), float(p["beta"]))
        cols = ["s", "re", "im"]
        if s.size:
            h = toeplitz_arc.h_basis(int(p["n"]), s, arc)
            rows = np.column_stack([s, h.real, h.imag])
        else:
            rows = []
    elif kind == "q_prime_modulus":
        u = _grid(float(p["u_min"]), float(p["u_max"]), float(p["step"]))
        cols = ["u", "modulus"]
        rows = (np.column_stack([u, np.abs(finite_hilbert.q_prime(float(p["t"]), u))])
                if u.size else [])
    elif kind == "k_kernel":
        r = _grid(float(p["r_min"]), float(p["r_max"]), float(p["step"]))
        cols = ["r", "k"]
        rows = (np.column_stack([r, hankel_reduction.k_kernel(int(p["l"]), r, float(p["t"]))])
                if r.size else [])
    else:
        arc = toeplitz_arc.ArcSpec(float(p["alpha"]), float(p["beta"]))
        N = int(p["N"])
        ev = np.sort(toeplitz_arc.toeplitz_matrix(N, arc).eigvals().real)
        cols = ["index", "eigenvalue"]
        rows = np.column_stack([np.arange(N), ev])

    header = "# " + ",".join(cols) + "; kind=" + kind + " " + " ".join(
        f"{k}={p[k]!r}" for k in sorted(p))
    path = Path(sink)
    try:
        fh = path.open("w", encoding="utf-8", newline="")
    except OSError as exc:
        raise OSError(f"cannot write curve to {path}: {exc}") from exc
    with fh:
        fh.write(header + "\n")
        w = csv.writer(fh, lineterminator="\n")
        for row in rows:
            w.writerow([f"{v:.17g}" for v in row])
    return len(rows)


def list_entries() -> list[tuple[str, str, str]]:
    """(check family id, description, anchor) for every registered check."""
    from . import suites

    return [(cid, desc, anchor) for cid, (desc, anchor) in sorted(suites.REGISTRY.items())]

