import pytest

from pitchlqr import (
    NAVION,
    LqrWeights,
    MicroburstProfile,
    SimConfig,
    assemble_model,
    extract_metrics,
    simulate,
    solve_care,
)

_ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def navion():
    return assemble_model(NAVION)


@pytest.fixture(scope="session")
def ref_weights():
    return LqrWeights.diagonal()


@pytest.fixture(scope="session")
def synthesis(navion, ref_weights):
    return solve_care(navion.A, navion.B, ref_weights)


@pytest.fixture(scope="session")
def ref_runs(navion, synthesis, ref_weights):
    """Uncontrolled and LQR runs of the bundled scenario, per interpretation, at dt = 0.001."""
    cache = {}

    def get(interpretation):
        if interpretation not in cache:
            profile = MicroburstProfile(interpretation=interpretation)
            runs = {}
            for name, gain in (("open", None), ("lqr", synthesis.K)):
                traj = simulate(navion, profile, SimConfig(gain=gain))
                runs[name] = (traj, extract_metrics(traj, navion, ref_weights))
            cache[interpretation] = runs
        return cache[interpretation]

    return get


@pytest.fixture
def acceptance_report(request):
    """Record one PASS/FAIL line per acceptance criterion for the summary."""

    def record(criterion, passed, detail):
        status = "PASS" if passed else "FAIL"
        _ACCEPTANCE_LINES[criterion] = f"[{status}] criterion {criterion}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(_ACCEPTANCE_LINES[key])

