import csv
import json
import math

import numpy as np
import pytest
from scipy.special import j0

from sincspec import cli, report, suites
from sincspec.report import (DEFAULTS, MACHINE_FLOOR, SUITES, Check, VerificationReport, emit_curve,
                             list_entries, run_suite)
from sincspec.specfun import sinc_kernel
from sincspec.spectral_transform import q_plus


def read_curve(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    rows = [[float(v) for v in r] for r in csv.reader(lines[1:])]
    return lines[0], np.array(rows)


# --- checks and reports ---

def test_check_pass_rule():
    assert Check("a", "d", "x", 1e-3, 1e-3).passed
    assert not Check("a", "d", "x", 2e-3, 1e-3).passed
    assert Check("a", "d", "x", 2e-3, 1e-3, tail_bound=1.5e-3).passed
    assert not Check("a", "d", "x", float("nan"), 1.0).passed
    assert Check("a", "d", "x", 0.0, 0.0).as_dict()["pass"] is True


def test_hankel_suite_passes():
    rep = run_suite("hankel-identities", {})
    assert rep.passed and rep.checks
    assert all(c.id.startswith("hankel-identities.") for c in rep.checks)
    assert [c.id for c in rep.checks] == sorted(c.id for c in rep.checks)


def test_suite_errors():
    with pytest.raises(KeyError, match="unknown suite"):
        run_suite("nope", {})
    with pytest.raises(KeyError, match="invalid override"):
        run_suite("hankel-identities", {"X": 3})
    with pytest.raises(ValueError, match="below"):
        run_suite("hankel-identities", {"fdpok_tol": MACHINE_FLOOR / 10})


def test_overrides_are_echoed():
    rep = run_suite("hankel-identities", {"fdpok_tol": 1e-11})
    assert rep.parameters["fdpok_tol"] == 1e-11
    assert rep.parameters["defaults_version"] == report.DEFAULTS_VERSION


def test_report_json_shape_and_reproducibility():
    a = run_suite("hankel-identities", {})
    b = run_suite("hankel-identities", {})
    da, db = json.loads(a.to_json()), json.loads(b.to_json())
    assert set(da) == {"suite", "checks", "parameters", "wall_time"}
    assert set(da["checks"][0]) == {"id", "description", "anchor", "max_error", "tolerance",
                                    "tail_bound", "pass"}
    # wall-clock data lives outside the checks section
    assert json.dumps(da["checks"]) == json.dumps(db["checks"])
    assert json.dumps(da["parameters"]) == json.dumps(db["parameters"])


def test_eigen_K_short_window_is_tail_dominated():
    rep = run_suite("eigen-K", {"X": 100.0})
    res = {c.id: c for c in rep.checks if c.id.startswith("eigen-K.residual")}
    assert res
    # the exact tail of q+ beyond X = 100 exceeds the 5e-3 relative budget at x = 10
    worst = max((c for c in res.values() if "x=10" in c.id), key=lambda c: c.tail_bound)
    assert worst.tail_bound > worst.tolerance
    assert all(c.passed for c in res.values())


def test_summary_lines():
    rep = VerificationReport("demo", [Check("z", "d", "x", 1.0, 0.5), Check("a", "d", "x", 0.0, 1.0)],
                             {}, 0.25)
    lines = rep.summary_lines()
    assert lines[0].startswith("FAIL") and lines[1].startswith("PASS")
    assert lines[-1] == "demo: 1/2 checks passed in 0.2 s"
    assert not rep.passed


# --- registry ---

def test_registry_has_no_orphans():
    names = set(DEFAULTS)
    for fid, (desc, anchor) in suites.REGISTRY.items():
        assert fid.split(".", 1)[0] in names
        assert desc and anchor
    assert set(suites.RUNNERS) == names
    assert SUITES[-1] == "all"


def test_every_emitted_check_is_registered():
    rep = run_suite("hankel-identities", {})
    for c in rep.checks:
        assert c.id.split("[", 1)[0] in suites.REGISTRY


def test_list_entries_sorted():
    ids = [e[0] for e in list_entries()]
    assert ids == sorted(ids) and len(ids) == len(suites.REGISTRY)


# --- curves ---

def test_curve_q_plus(tmp_path):
    out = tmp_path / "q.csv"
    assert emit_curve("q_plus", {"s": 0.5}, out) == 201
    header, rows = read_curve(out)
    assert header.startswith("# x,q_plus; kind=q_plus") and "s=0.5" in header
    assert np.all(np.diff(rows[:, 0]) > 0)
    assert np.max(np.abs(rows[:, 1] - math.sqrt(2 / math.pi) * j0(rows[:, 0]))) <= 1e-8


def test_curve_k_kernel(tmp_path):
    out = tmp_path / "k.csv"
    emit_curve("k_kernel", {"l": -1, "t": 1.0}, out)
    _, rows = read_curve(out)
    assert np.max(np.abs(rows[:, 1] - sinc_kernel(rows[:, 0] - 1.0))) <= 1e-14


def test_curve_seventeen_digits(tmp_path):
    out = tmp_path / "k.csv"
    emit_curve("q_plus", {"s": 0.3, "x_max": 0.0}, out)
    _, rows = read_curve(out)
    assert rows[0, 1] == q_plus(0.3, 0.0)  # round trip is exact


def test_curve_other_kinds(tmp_path):
    assert emit_curve("h_basis", {"n": 2}, tmp_path / "h.csv") == 99
    assert emit_curve("q_prime_modulus", {"t": 0.3}, tmp_path / "m.csv") == 199
    assert emit_curve("toeplitz_spectrum", {"N": 30}, tmp_path / "t.csv") == 30
    _, rows = read_curve(tmp_path / "t.csv")
    assert rows[:, 1].min() >= -1e-10 and rows[:, 1].max() <= 1 + 1e-10


def test_curve_empty_range(tmp_path):
    out = tmp_path / "e.csv"
    assert emit_curve("q_plus", {"s": 0.5, "x_min": 5.0, "x_max": 1.0}, out) == 0
    assert len(out.read_text().splitlines()) == 1


def test_curve_errors(tmp_path):
    with pytest.raises(ValueError, match="needs parameter"):
        emit_curve("q_plus", {}, tmp_path / "x.csv")
    with pytest.raises(ValueError, match="unknown parameter"):
        emit_curve("q_plus", {"s": 0.5, "bogus": 1}, tmp_path / "x.csv")
    with pytest.raises(KeyError):
        emit_curve("nope", {}, tmp_path / "x.csv")
    with pytest.raises(OSError):
        emit_curve("q_plus", {"s": 0.5}, tmp_path / "missing-dir" / "x.csv")


# --- command line ---

def test_cli_verify_exit_codes(tmp_path, capsys):
    js = tmp_path / "r.json"
    assert cli.main(["verify", "hankel-identities", "--json", str(js), "--quiet"]) == 0
    assert json.loads(js.read_text())["suite"] == "hankel-identities"
    assert "checks passed" in capsys.readouterr().out
    # a tolerance the suite cannot meet turns the exit code to 1
    assert cli.main(["verify", "hankel-identities", "--hankel_tol", "1e-15", "--quiet"]) == 1
    assert cli.main(["verify", "nope"]) == 2
    assert cli.main(["verify", "hankel-identities", "--nope=1"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_curve_and_list(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert cli.main(["curve", "q_plus", "--out", str(out), "--s", "0.5", "--step=0.5"]) == 0
    assert len(out.read_text().splitlines()) == 42
    assert cli.main(["curve", "q_plus", "--out", str(out)]) == 2
    assert cli.main(["list"]) == 0
    text = capsys.readouterr().out
    assert "hankel-identities.finite-rank" in text and "curves: q_plus" in text


def test_cli_param_parsing():
    assert cli._parse_params(["--X", "100", "--s_values=[0.2, 0.5]", "--name", "abc"]) == {
        "X": 100, "s_values": [0.2, 0.5], "name": "abc"}
    with pytest.raises(SystemExit):
        cli._parse_params(["X", "1"])
    with pytest.raises(SystemExit):
        cli._parse_params(["--X"])
