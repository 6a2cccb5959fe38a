import json

import numpy as np
import pytest

from pitchlqr import NAVION, MicroburstProfile, SimConfig, simulate
from pitchlqr.files import (
    CSV_COLUMNS,
    FileFormatError,
    bundled_path,
    load_aircraft,
    load_scenario,
    read_trajectory_csv,
    synthesis_document,
    write_json,
    write_trajectory_csv,
)

NAVION_TEXT = bundled_path("navion.aircraft").read_text()


def write_aircraft(tmp_path, text, name="test.aircraft"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_bundled_navion_is_table_values():
    aircraft = load_aircraft(bundled_path("navion.aircraft"))
    assert aircraft.derivatives == NAVION
    assert (aircraft.condition.u0, aircraft.condition.g) == (54.0, 9.8066)
    assert aircraft.name == "Ryan Navion"


def test_missing_derivative_named(tmp_path):
    text = "\n".join(l for l in NAVION_TEXT.splitlines() if not l.startswith("Z_alpha"))
    with pytest.raises(FileFormatError, match="Z_alpha"):
        load_aircraft(write_aircraft(tmp_path, text))


@pytest.mark.parametrize("value", ["nan", "inf", "abc"])
def test_bad_value_named(tmp_path, value):
    text = NAVION_TEXT.replace("M_q     = -2.0968", f"M_q = {value}")
    with pytest.raises(FileFormatError, match="M_q"):
        load_aircraft(write_aircraft(tmp_path, text))


def test_nonpositive_airspeed(tmp_path):
    text = NAVION_TEXT.replace("u0 = 54", "u0 = 0")
    with pytest.raises(FileFormatError, match="u0"):
        load_aircraft(write_aircraft(tmp_path, text))


def test_unknown_derivative_rejected(tmp_path):
    text = NAVION_TEXT.replace("[flight_condition]", "X_w = 1\n\n[flight_condition]")
    with pytest.raises(FileFormatError, match="X_w"):
        load_aircraft(write_aircraft(tmp_path, text))


def test_bundled_scenario():
    sc = load_scenario(bundled_path("navion_microburst.scenario"))
    assert sc.aircraft_path.name == "navion.aircraft"
    assert sc.q_diag == (0, 150, 0, 2000, 0.01)
    assert sc.r == 30
    assert sc.profile == MicroburstProfile()
    assert (sc.dt, sc.t_final) == (0.001, 100)
    assert sc.initial_state == (0.0,) * 5


def test_scenario_initial_state_in_degrees(tmp_path):
    path = tmp_path / "s.scenario"
    path.write_text(
        "[scenario]\naircraft = navion.aircraft\n"
        "[simulation]\ninitial_state = 1, 2, 3, 4, 5\n"
        "[microburst]\ninterpretation = rad\n"
    )
    sc = load_scenario(path)
    np.testing.assert_allclose(sc.initial_state, [1, *np.radians([2, 3, 4]), 5])
    assert sc.profile.interpretation == "radians_per_second"
    assert sc.out_dir == tmp_path / "out"


def test_scenario_missing_aircraft(tmp_path):
    path = tmp_path / "s.scenario"
    path.write_text("[scenario]\naircraft = nowhere.aircraft\n")
    with pytest.raises(FileNotFoundError):
        load_scenario(path)


def test_trajectory_csv_round_trip(tmp_path, navion, synthesis):
    traj = simulate(navion, MicroburstProfile(), SimConfig(dt=0.05, t_final=30, gain=synthesis.K))
    path = tmp_path / "t.csv"
    write_trajectory_csv(traj, path)
    header = path.read_text().splitlines()[0]
    assert header == ",".join(CSV_COLUMNS)
    data = read_trajectory_csv(path)
    assert len(data["t"]) == len(traj.times)
    np.testing.assert_allclose(data["theta"], np.degrees(traj.states[:, 3]), rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(data["q"], np.degrees(traj.states[:, 2]), rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(data["h"], traj.states[:, 4], rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(data["delta_e"], np.degrees(traj.controls), rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(data["alpha_g"], np.degrees(traj.gusts[:, 2]), rtol=1e-9,
                               atol=1e-12)


def test_synthesis_document(tmp_path, synthesis):
    path = tmp_path / "s.json"
    write_json(synthesis_document(synthesis), path)
    doc = json.loads(path.read_text())
    assert set(doc) >= {"Q", "R", "S", "K", "residual_norm", "closed_loop_eigenvalues"}
    np.testing.assert_allclose(doc["K"], synthesis.K)
    assert len(doc["closed_loop_eigenvalues"]) == 5
    assert all(len(pair) == 2 for pair in doc["closed_loop_eigenvalues"])
