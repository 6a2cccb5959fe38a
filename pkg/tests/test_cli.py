import filecmp
import json
import re

import numpy as np
import pytest

from pitchlqr.cli import main
from pitchlqr.files import bundled_path, read_trajectory_csv

SCENARIO = str(bundled_path("navion_microburst.scenario"))
ZERO_AIRCRAFT = """
[derivatives]
X_u = 0
X_alpha = 0
X_q = 0
X_de = 0
Z_u = 0
Z_alpha = 0
Z_q = 0
Z_de = 0
M_u = 0
M_alpha = 0
M_q = 0
M_de = 0
[flight_condition]
u0 = 1
g = 0
"""


def test_model_prints_reference_matrix(capsys):
    assert main(["model", "navion.aircraft"]) == 0
    out = capsys.readouterr().out
    assert "-8.9246" in out
    assert "-0.1611" in out
    assert "-9.8066" in out


def test_model_all_zero_aircraft(tmp_path, capsys):
    path = tmp_path / "zero.aircraft"
    path.write_text(ZERO_AIRCRAFT)
    assert main(["model", str(path)]) == 0
    out = capsys.readouterr().out
    a_block = out.split("A =")[1].split("B =")[0]
    values = [float(v) for v in a_block.split()]
    assert sorted(v for v in values if v) == [-1.0, 1.0, 1.0, 1.0]


def test_model_missing_field(tmp_path, capsys):
    path = tmp_path / "bad.aircraft"
    path.write_text(ZERO_AIRCRAFT.replace("M_de = 0\n", ""))
    assert main(["model", str(path)]) == 1
    assert "M_de" in capsys.readouterr().err


def test_analyze_navion(tmp_path, capsys):
    report = tmp_path / "analysis.json"
    assert main(["analyze", "navion.aircraft", "--json", str(report)]) == 0
    out = capsys.readouterr().out
    assert "controllability rank 5" in out
    assert "observability rank 5" in out
    assert "short period: 0.584 Hz" in out
    assert re.search(r"phugoid: 0\.03\d Hz", out)
    doc = json.loads(report.read_text())
    assert doc["controllability"]["rank"] == 5
    assert {m["label"] for m in doc["modes"]} == {"short_period", "phugoid", "altitude"}


def test_analyze_zero_B_is_uncontrollable(tmp_path, capsys):
    path = tmp_path / "zero.aircraft"
    path.write_text(ZERO_AIRCRAFT)
    assert main(["analyze", str(path)]) != 0
    assert "uncontrollable" in capsys.readouterr().err


def test_synth(tmp_path, capsys):
    assert main(["synth", SCENARIO, "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "K = [-0.0219 0.8901 -0.9837 -8.7459 0.0183]" in out
    doc = json.loads((tmp_path / "synthesis.json").read_text())
    assert doc["relative_residual"] <= 1e-8
    np.testing.assert_allclose(doc["K"], [[-0.0219, 0.8901, -0.9837, -8.7459, 0.0183]],
                               atol=1e-3)


def test_synth_weight_homogeneity(tmp_path):
    scaled = tmp_path / "scaled.scenario"
    scaled.write_text(
        "[scenario]\naircraft = navion.aircraft\n"
        "[weights]\nq_diag = 0, 1500, 0, 20000, 0.1\nr = 300\n"
    )
    assert main(["synth", SCENARIO, "--out-dir", str(tmp_path / "a")]) == 0
    assert main(["synth", str(scaled), "--out-dir", str(tmp_path / "b")]) == 0
    ka = json.loads((tmp_path / "a" / "synthesis.json").read_text())["K"]
    kb = json.loads((tmp_path / "b" / "synthesis.json").read_text())["K"]
    np.testing.assert_allclose(kb, ka, rtol=1e-9, atol=0)


def _compare(out_dir, *extra):
    return main(["compare", SCENARIO, "--out-dir", str(out_dir), "--dt", "0.01", *extra])


def test_compare_outputs(tmp_path):
    assert _compare(tmp_path) == 0
    for name in ("uncontrolled.csv", "controlled.csv", "gusts.csv", "metrics.txt",
                 "metrics.json", "synthesis.json", "gusts.svg", "theta.svg", "altitude.svg",
                 "elevator.svg"):
        assert (tmp_path / name).is_file(), name
    metrics = json.loads((tmp_path / "metrics.json").read_text())
    assert metrics["interpretation"] == "hertz"
    csv = read_trajectory_csv(tmp_path / "controlled.csv")
    assert metrics["controlled"]["theta_min"] == pytest.approx(csv["theta"].min(), abs=1e-8)
    assert metrics["uncontrolled"]["altitude_min"] == pytest.approx(
        read_trajectory_csv(tmp_path / "uncontrolled.csv")["h"].min(), abs=1e-7
    )
    assert metrics["uncontrolled"]["cost_J"] > metrics["controlled"]["cost_J"]
    assert (tmp_path / "theta.svg").read_text().lstrip().startswith("<?xml")


def test_compare_is_idempotent(tmp_path):
    assert _compare(tmp_path / "a") == 0
    assert _compare(tmp_path / "b") == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    match, mismatch, errors = filecmp.cmpfiles(tmp_path / "a", tmp_path / "b", names,
                                               shallow=False)
    assert not mismatch and not errors


def test_compare_zero_microburst(tmp_path):
    assert _compare(tmp_path, "--amplitude-u", "0", "--amplitude-w", "0", "--no-plots") == 0
    metrics = json.loads((tmp_path / "metrics.json").read_text())
    for run in ("uncontrolled", "controlled"):
        for key in ("theta_max", "theta_min", "altitude_min", "elevator_min", "elevator_max",
                    "cost_J", "settling_time_theta"):
            assert metrics[run][key] == 0, (run, key)
    assert not list(tmp_path.glob("*.svg"))


def test_compare_flag_overrides_interpretation(tmp_path):
    assert _compare(tmp_path, "--interpretation", "rad", "--no-plots", "--t-final", "30") == 0
    metrics = json.loads((tmp_path / "metrics.json").read_text())
    assert metrics["interpretation"] == "radians_per_second"
    assert metrics["t_final"] == 30


def test_gusts_csv(tmp_path):
    out = tmp_path / "g.csv"
    assert main(["gusts", SCENARIO, "--dt", "0.5", "--out", str(out)]) == 0
    data = read_trajectory_csv(out)
    assert list(data) == ["t", "u_g", "w_g", "alpha_g"]
    i = int(np.argmin(np.abs(data["t"] - 10)))
    assert data["w_g"][i] == -5
    assert data["alpha_g"][i] == pytest.approx(np.degrees(-5 / 54))


def test_bad_scenario_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.scenario"
    path.write_text("[scenario]\naircraft = navion.aircraft\n[weights]\nr = -1\n")
    assert main(["synth", str(path), "--out-dir", str(tmp_path)]) == 1
    assert "R" in capsys.readouterr().err


def test_bundled_scenario_by_name_writes_to_cwd(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(["synth", "navion_microburst.scenario"]) == 0
    assert (tmp_path / "out" / "synthesis.json").is_file()
